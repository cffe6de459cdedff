// Benchmark driver: generate instances, run experiments, brute-force toy
// instances and print pyramid layouts.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <pga/harness/experiment.hpp>
#include <pga/harness/generate.hpp>
#include <pga/harness/results.hpp>
#include <pga/mall/io.hpp>
#include <pga/nurse/io.hpp>
#include <pga/topology.hpp>
#include <pga_oracle/mall_oracle.hpp>
#include <pga_oracle/nurse_oracle.hpp>

namespace fs = std::filesystem;
using namespace pga;
using namespace pga::harness;

namespace {

struct Options {
    std::string problem = "nurse";
    std::vector<std::string> strategies;
    std::size_t runs = 20;
    std::uint64_t seed = 1;
    std::string hillclimber = "off";
    std::size_t jobs = 1;
    bool pivot = false;
    std::string format = "csv";
    std::string out = "-";
    std::vector<std::string> instances;
    std::size_t count = 10;
    std::string tier;
    std::size_t nurses = 30;
    std::size_t patterns_per_class = 0;
    std::size_t max_generations = 2000;
    std::size_t stagnation = 50;
    double penalty_beta = 1.1;
    double penalty_w0_scale = 1.0;
    bool timing = false;
    double weight = 100.0;
};

std::ostream& open_out(const std::string& path, std::ofstream& file) {
    if (path == "-") {
        return std::cout;
    }
    file.open(path);
    if (!file) {
        throw std::runtime_error("cannot write '" + path + "'");
    }
    return file;
}

NurseGenParams nurse_params(const Options& o) {
    NurseGenParams p;
    p.nurses = o.nurses;
    p.patterns_per_class = o.patterns_per_class;
    if (!o.tier.empty()) {
        p.tier = parse_tier(o.tier);
    }
    return p;
}

MallGenParams mall_params(const Options& o) {
    MallGenParams p;
    if (!o.tier.empty()) {
        p.tier = parse_tier(o.tier);
    }
    return p;
}

/// Instances named on the command line, or a generated suite when none are.
void load_instances(const Options& o, ExperimentSpec& spec) {
    if (o.instances.empty()) {
        add_generated(spec, o.count, o.seed, nurse_params(o), mall_params(o));
        return;
    }
    for (const auto& path : o.instances) {
        if (spec.problem == ProblemKind::nurse) {
            spec.nurse_instances.push_back(nurse::load_instance(path));
        } else {
            spec.mall_instances.push_back(mall::load_instance(path));
        }
        spec.instance_ids.push_back(fs::path(path).stem().string());
    }
}

int cmd_gen(const Options& o) {
    const auto problem = parse_problem(o.problem);
    const fs::path dir = o.out == "-" ? fs::path(".") : fs::path(o.out);
    fs::create_directories(dir);
    for (std::size_t i = 0; i < o.count; ++i) {
        const auto seed = instance_seed(problem, o.seed, i);
        const auto path = (dir / (instance_id(problem, i) + ".txt")).string();
        if (problem == ProblemKind::nurse) {
            nurse::save_instance(path, generate_nurse_instance(nurse_params(o), seed));
        } else {
            mall::save_instance(path, generate_mall_instance(mall_params(o), seed));
        }
        std::cout << path << '\n';
    }
    return 0;
}

int cmd_run(const Options& o) {
    ExperimentSpec spec;
    spec.problem = parse_problem(o.problem);
    spec.base_seed = o.seed;
    spec.runs = o.runs;
    spec.jobs = o.jobs;
    spec.timing = o.timing;
    spec.engine.max_generations = o.max_generations;
    spec.engine.stagnation_window = o.stagnation;
    spec.engine.penalty.beta = o.penalty_beta;
    spec.engine.penalty.w0_scale = o.penalty_w0_scale;
    const bool climb = o.hillclimber == "on";
    if (o.strategies.empty()) {
        spec.configurations = table_configurations(climb);
    } else {
        for (const auto& s : o.strategies) {
            auto c = parse_configuration(s);
            c.hillclimb = c.hillclimb || climb;
            spec.configurations.push_back(c);
        }
    }
    load_instances(o, spec);

    const auto result = run_experiment(spec);
    for (const auto& r : result.runs) {
        if (!r.error.empty()) {
            std::cerr << spec.instance_ids[r.instance] << ' ' << spec.configurations[r.configuration].name()
                      << " run " << r.run << ": " << r.error << '\n';
        }
    }
    std::ofstream file;
    auto& out = open_out(o.out, file);
    if (o.pivot) {
        write_pivot(out, result.rows, spec.problem == ProblemKind::nurse ? "cost" : "rent");
    } else {
        write_rows(out, result.rows, parse_format(o.format));
    }
    return 0;
}

void print_genes(const std::vector<Gene>& x) {
    for (std::size_t i = 0; i < x.size(); ++i) {
        std::cout << (i ? " " : "") << x[i];
    }
    std::cout << '\n';
}

int cmd_oracle(const Options& o) {
    if (o.instances.size() != 1) {
        throw std::invalid_argument("oracle needs exactly one --instance");
    }
    if (parse_problem(o.problem) == ProblemKind::nurse) {
        const auto inst = nurse::load_instance(o.instances.front());
        const auto opt = pga_oracle::brute_force_nurse(inst, o.weight);
        std::cout << "evaluated " << opt.evaluated << '\n';
        std::cout << "best penalised " << opt.best_value << '\n';
        print_genes(opt.best);
        if (opt.best_feasible) {
            std::cout << "best feasible cost " << opt.best_feasible_cost << '\n';
        } else {
            std::cout << "no feasible assignment\n";
        }
    } else {
        const auto inst = mall::load_instance(o.instances.front());
        const auto opt = pga_oracle::brute_force_mall(inst);
        std::cout << "evaluated " << opt.evaluated << '\n';
        if (opt.best) {
            std::cout << "best rent " << opt.best_rent << '\n';
            print_genes(*opt.best);
        } else {
            std::cout << "no feasible layout\n";
        }
    }
    return 0;
}

int cmd_describe(const Options& o) {
    const auto problem = parse_problem(o.problem);
    const bool from_file = !o.instances.empty();
    if (problem == ProblemKind::nurse) {
        const auto inst = from_file ? nurse::load_instance(o.instances.front())
                                    : generate_nurse_instance(nurse_params(o), instance_seed(problem, o.seed, 0));
        std::cout << describe(build_nurse_topology(inst));
    } else {
        const auto inst = from_file ? mall::load_instance(o.instances.front())
                                    : generate_mall_instance(mall_params(o), instance_seed(problem, o.seed, 0));
        std::cout << describe(build_mall_topology(inst));
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pyramidal coevolutionary GA benchmark"};
    app.set_config("--config", "", "flat key=value file; command-line flags take precedence");
    app.require_subcommand(1);
    Options o;

    app.add_option("--problem", o.problem, "nurse or mall")->check(CLI::IsMember({"nurse", "mall"}));
    app.add_option("--strategy", o.strategies, "configurations to run, e.g. RR,B,SGA (default: all)")
        ->delimiter(',');
    app.add_option("--runs", o.runs, "seeded runs per instance")->check(CLI::PositiveNumber);
    app.add_option("--seed", o.seed, "base seed for instances and runs");
    app.add_option("--hillclimber", o.hillclimber, "on or off")->check(CLI::IsMember({"on", "off"}));
    app.add_option("--jobs", o.jobs, "concurrent runs")->check(CLI::PositiveNumber);
    app.add_flag("--pivot", o.pivot, "print the strategy summary table instead of rows");
    app.add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", o.out, "output file (run) or directory (gen); - is stdout");
    app.add_option("--instance", o.instances, "instance file; repeatable");
    app.add_option("--count", o.count, "instances to generate when none are given");
    app.add_option("--tier", o.tier, "generator tightness: loose, medium or tight");
    app.add_option("--nurses", o.nurses, "nurses per generated instance");
    app.add_option("--patterns-per-class", o.patterns_per_class,
                   "keep this many patterns per kind and shift count (0 keeps all); small values make toy instances");
    app.add_option("--max-generations", o.max_generations, "generation cap per run");
    app.add_option("--stagnation", o.stagnation, "generations without improvement before a run stops");
    app.add_option("--penalty-beta", o.penalty_beta, "penalty weight adaptation factor (>= 1)");
    app.add_option("--penalty-w0-scale", o.penalty_w0_scale, "initial penalty weight relative to the objective scale");
    app.add_flag("--timing", o.timing, "record wall time per run (breaks byte-identical output)");
    app.add_option("--weight", o.weight, "penalty weight for the nurse oracle");
    app.fallthrough();

    auto* gen = app.add_subcommand("gen", "write generated instances to --out");
    auto* run = app.add_subcommand("run", "run an experiment and emit result rows");
    auto* oracle = app.add_subcommand("oracle", "brute-force a toy instance");
    auto* desc = app.add_subcommand("describe", "print the pyramid for an instance");
    for (auto* sub : {gen, run, oracle, desc}) {
        sub->fallthrough();
    }

    CLI11_PARSE(app, argc, argv);
    try {
        if (gen->parsed()) {
            return cmd_gen(o);
        }
        if (run->parsed()) {
            return cmd_run(o);
        }
        if (oracle->parsed()) {
            return cmd_oracle(o);
        }
        return cmd_describe(o);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
