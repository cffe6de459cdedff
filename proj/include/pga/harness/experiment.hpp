#pragma once

/// @file experiment.hpp
/// @brief Seeded multi-run experiments: configurations x instances x runs, censoring and aggregation.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <pga/core/random.hpp>
#include <pga/engine/pyramid_ga.hpp>
#include <pga/harness/generate.hpp>
#include <pga/harness/results.hpp>
#include <pga/mall/problem.hpp>
#include <pga/nurse/problem.hpp>
#include <pga/partnering.hpp>
#include <pga/topology.hpp>

namespace pga::harness {

enum class ProblemKind { nurse, mall };

[[nodiscard]] constexpr std::string_view to_string(ProblemKind p) noexcept {
    return p == ProblemKind::nurse ? "nurse" : "mall";
}

[[nodiscard]] inline ProblemKind parse_problem(std::string_view s) {
    if (s == "nurse") {
        return ProblemKind::nurse;
    }
    if (s == "mall") {
        return ProblemKind::mall;
    }
    throw std::invalid_argument("unknown problem '" + std::string(s) + "'");
}

/// Worst-case score recorded for an instance on which no run found a feasible solution.
[[nodiscard]] constexpr double censored_score(ProblemKind p) noexcept { return p == ProblemKind::nurse ? 100.0 : 0.0; }

/// One column of the results table: a partnering strategy on the pyramid, or
/// the single-population baseline, optionally with the hillclimber.
struct Configuration {
    bool single_population = false;
    StrategyKind strategy = StrategyKind::S;
    bool hillclimb = false;

    [[nodiscard]] std::string name() const {
        std::string n = single_population ? "SGA" : std::string(to_string(strategy));
        return hillclimb ? n + "&H" : n;
    }
    friend bool operator==(const Configuration&, const Configuration&) = default;
};

/// "S".."RR", "SGA", each optionally suffixed with "&H".
[[nodiscard]] inline Configuration parse_configuration(std::string_view s) {
    Configuration c;
    if (s.size() > 2 && s.substr(s.size() - 2) == "&H") {
        c.hillclimb = true;
        s.remove_suffix(2);
    }
    if (s == "SGA") {
        c.single_population = true;
    } else {
        c.strategy = parse_strategy(s);
    }
    return c;
}

/// The seven strategies followed by the single-population baseline.
[[nodiscard]] inline std::vector<Configuration> table_configurations(bool hillclimb = false) {
    std::vector<Configuration> out;
    for (auto k : kAllStrategies) {
        out.push_back({false, k, hillclimb});
    }
    out.push_back({true, StrategyKind::S, hillclimb});
    return out;
}

struct ExperimentSpec {
    ProblemKind problem = ProblemKind::nurse;
    std::vector<std::string> instance_ids;
    std::vector<nurse::NurseInstance> nurse_instances;
    std::vector<mall::MallInstance> mall_instances;
    std::vector<Configuration> configurations;
    std::size_t runs = 20;
    std::uint64_t base_seed = 1;
    EngineConfig engine{};
    nurse::HillclimbOptions climb{};
    std::size_t jobs = 1;
    /// Record wall time per run; off by default so result files are reproducible byte for byte.
    bool timing = false;

    [[nodiscard]] std::size_t instance_count() const noexcept {
        return problem == ProblemKind::nurse ? nurse_instances.size() : mall_instances.size();
    }

    void validate() const {
        if (runs == 0) {
            throw std::invalid_argument("runs per instance must be at least 1");
        }
        if (configurations.empty()) {
            throw std::invalid_argument("no configurations to run");
        }
        if (instance_ids.size() != instance_count()) {
            throw std::invalid_argument("one id per instance required");
        }
        if (problem == ProblemKind::mall) {
            for (const auto& c : configurations) {
                if (c.hillclimb) {
                    throw std::invalid_argument("the hillclimber applies to the nurse problem only");
                }
            }
        }
        engine.validate();
    }
};

/// Seed of run `run` on instance `instance`; identical for every configuration.
[[nodiscard]] inline std::uint64_t run_seed(std::uint64_t base, std::size_t instance, std::size_t run) {
    return derive_seed({base, static_cast<std::uint64_t>(instance), static_cast<std::uint64_t>(run)});
}

/// Seed of the `index`-th generated instance of a suite.
[[nodiscard]] inline std::uint64_t instance_seed(ProblemKind problem, std::uint64_t base, std::size_t index) {
    return derive_seed({base, problem == ProblemKind::nurse ? 0x6e75U : 0x6d61U, static_cast<std::uint64_t>(index)});
}

[[nodiscard]] inline std::string instance_id(ProblemKind problem, std::size_t index) {
    std::string n = std::to_string(index);
    return std::string(to_string(problem)) + "-" + (n.size() < 2 ? "0" + n : n);
}

/// Generated instances and ids for `count` instances of `problem`, seeded from `base`.
inline void add_generated(ExperimentSpec& spec, std::size_t count, std::uint64_t base, const NurseGenParams& np = {},
                          const MallGenParams& mp = {}) {
    for (std::size_t i = 0; i < count; ++i) {
        const auto seed = instance_seed(spec.problem, base, i);
        if (spec.problem == ProblemKind::nurse) {
            spec.nurse_instances.push_back(generate_nurse_instance(np, seed));
        } else {
            spec.mall_instances.push_back(generate_mall_instance(mp, seed));
        }
        spec.instance_ids.push_back(instance_id(spec.problem, i));
    }
}

/// The benchmark suite: ten generated instances, twenty runs, every table column.
[[nodiscard]] inline ExperimentSpec default_suite(ProblemKind problem, std::uint64_t base_seed = 1,
                                                  bool hillclimb = false) {
    ExperimentSpec spec;
    spec.problem = problem;
    spec.base_seed = base_seed;
    spec.configurations = table_configurations(hillclimb);
    add_generated(spec, 10, base_seed);
    return spec;
}

struct RunRecord {
    std::size_t instance = 0;
    std::size_t configuration = 0;
    std::size_t run = 0;
    bool feasible = false;
    /// Reported objective of the best feasible solution; meaningless when !feasible.
    double best = 0.0;
    std::size_t generations = 0;
    double seconds = 0.0;
    std::string error;
};

struct ExperimentResult {
    std::vector<RunRecord> runs;
    /// Per instance and configuration, then one summary row per configuration.
    std::vector<ResultRow> rows;
};

inline constexpr std::string_view kSummaryInstance = "mean";

namespace detail {

template <typename P>
RunOutcome run_one(const P& problem, const Topology& topo, const Configuration& c, EngineConfig cfg) {
    PyramidGA<P> ga(problem, topo, c.single_population ? StrategyKind::S : c.strategy, cfg);
    return ga.run();
}

inline RunRecord execute(const ExperimentSpec& spec, std::size_t inst, std::size_t conf, std::size_t run) {
    RunRecord rec;
    rec.instance = inst;
    rec.configuration = conf;
    rec.run = run;
    const Configuration& c = spec.configurations[conf];
    EngineConfig cfg = spec.engine;
    cfg.rng_seed = run_seed(spec.base_seed, inst, run);
    cfg.hillclimb = c.hillclimb;
    const auto start = std::chrono::steady_clock::now();
    try {
        RunOutcome o;
        if (spec.problem == ProblemKind::nurse) {
            const auto& instance = spec.nurse_instances[inst];
            const nurse::NurseProblem problem(instance, spec.climb);
            const Topology topo =
                c.single_population ? build_single_topology(instance.n()) : build_nurse_topology(instance);
            o = run_one(problem, topo, c, cfg);
        } else {
            const auto& instance = spec.mall_instances[inst];
            const mall::MallProblem problem(instance);
            const Topology topo = c.single_population ? build_single_topology(instance.locations())
                                                      : build_mall_topology(instance);
            o = run_one(problem, topo, c, cfg);
        }
        rec.feasible = o.feasible_found;
        rec.best = o.best_feasible;
        rec.generations = o.generations;
    } catch (const std::exception& e) {
        rec.error = e.what();
    }
    if (spec.timing) {
        rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    return rec;
}

} // namespace detail

/// Aggregate per-run records into result rows.
///
/// Instance row: feasibility = share of runs that found a feasible solution;
/// score = best feasible objective over the runs, or the censored value when
/// no run found one. Summary row: the means of those over all instances.
[[nodiscard]] inline std::vector<ResultRow> aggregate(ProblemKind problem, std::span<const std::string> instance_ids,
                                                      std::span<const Configuration> configurations,
                                                      std::span<const RunRecord> runs) {
    const std::size_t I = instance_ids.size();
    const std::size_t C = configurations.size();
    struct Acc {
        std::size_t runs = 0;
        std::size_t feasible = 0;
        std::optional<double> best;
        double generations = 0.0;
        double seconds = 0.0;
    };
    std::vector<Acc> acc(I * C);
    for (const auto& r : runs) {
        if (r.instance >= I || r.configuration >= C) {
            throw std::invalid_argument("run record outside the experiment grid");
        }
        auto& a = acc[r.instance * C + r.configuration];
        ++a.runs;
        a.generations += static_cast<double>(r.generations);
        a.seconds += r.seconds;
        if (r.feasible) {
            ++a.feasible;
            const bool better = !a.best || (problem == ProblemKind::nurse ? r.best < *a.best : r.best > *a.best);
            if (better) {
                a.best = r.best;
            }
        }
    }
    std::vector<ResultRow> rows;
    for (std::size_t i = 0; i < I; ++i) {
        for (std::size_t c = 0; c < C; ++c) {
            const auto& a = acc[i * C + c];
            if (a.runs == 0) {
                continue;
            }
            ResultRow row;
            row.instance = instance_ids[i];
            row.strategy = configurations[c].name();
            row.feasibility = static_cast<double>(a.feasible) / static_cast<double>(a.runs);
            row.score = a.best ? *a.best : censored_score(problem);
            row.generations = a.generations / static_cast<double>(a.runs);
            row.seconds = a.seconds;
            rows.push_back(std::move(row));
        }
    }
    for (std::size_t c = 0; c < C; ++c) {
        ResultRow s;
        s.instance = std::string(kSummaryInstance);
        s.strategy = configurations[c].name();
        std::size_t count = 0;
        for (const auto& row : rows) {
            if (row.strategy == s.strategy && row.instance != kSummaryInstance) {
                s.feasibility += row.feasibility;
                s.score += row.score;
                s.generations += row.generations;
                s.seconds += row.seconds;
                ++count;
            }
        }
        if (count == 0) {
            continue;
        }
        s.feasibility /= static_cast<double>(count);
        s.score /= static_cast<double>(count);
        s.generations /= static_cast<double>(count);
        rows.push_back(std::move(s));
    }
    return rows;
}

/// Run every (instance, configuration, run) triple, up to `spec.jobs` at a time.
///
/// Records come back in canonical order (instance, configuration, run) whatever
/// the scheduling, so output depends only on the spec. A run that throws is
/// recorded with its error and counted as infeasible.
[[nodiscard]] inline ExperimentResult run_experiment(const ExperimentSpec& spec) {
    spec.validate();
    const std::size_t I = spec.instance_count();
    const std::size_t C = spec.configurations.size();
    const std::size_t R = spec.runs;
    ExperimentResult result;
    result.runs.resize(I * C * R);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t t = next++; t < result.runs.size(); t = next++) {
            const std::size_t inst = t / (C * R);
            const std::size_t conf = (t / R) % C;
            const std::size_t run = t % R;
            result.runs[t] = detail::execute(spec, inst, conf, run);
        }
    };
    const std::size_t jobs = std::max<std::size_t>(1, std::min(spec.jobs, result.runs.size()));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t j = 0; j < jobs; ++j) {
            pool.emplace_back(worker);
        }
    }
    result.rows = aggregate(spec.problem, spec.instance_ids, spec.configurations, result.runs);
    return result;
}

} // namespace pga::harness
