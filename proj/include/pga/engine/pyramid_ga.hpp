#pragma once

/// @file pyramid_ga.hpp
/// @brief Generational co-operative coevolution over a pyramid of sub-populations.
///
/// One generation, for every level at once:
///   1. breed ceil(replacement_fraction * capacity) children from the current
///      populations (bottom levels: uniform crossover only; other levels: each
///      crossover is cross-level fixed-point with probability cross_level_fraction),
///   2. mutate and evaluate them against the current populations as partners,
///   3. replace the worst parents, adapt each level's penalty weight,
///   4. optionally hillclimb the best agents of the top level.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include <pga/core/genome.hpp>
#include <pga/core/random.hpp>
#include <pga/engine/operators.hpp>
#include <pga/partnering.hpp>
#include <pga/penalty.hpp>
#include <pga/problem.hpp>
#include <pga/topology.hpp>

namespace pga {

struct EngineConfig {
    double uniform_inherit_prob = 0.66;
    double mutation_rate = 0.01;
    double replacement_fraction = 0.9;
    std::size_t stagnation_window = 50;
    double cross_level_fraction = 0.5;
    std::size_t max_generations = 2000;
    std::uint64_t rng_seed = 0;
    /// Let non-retained parents compete with children for the replaced slots.
    bool elitist_pool = false;
    PenaltyParams penalty{};
    bool hillclimb = false;
    /// Share of the top level (best first) offered to the hillclimber each generation.
    double hillclimb_fraction = 0.05;
    std::size_t grid_width = 10;
    std::size_t grid_height = 10;
    /// Check population sizes and slot domains after every generation.
    bool audit = false;

    void validate() const {
        if (!(uniform_inherit_prob > 0.0 && uniform_inherit_prob < 1.0)) {
            throw std::invalid_argument("uniform_inherit_prob must lie in (0,1)");
        }
        if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0)) {
            throw std::invalid_argument("mutation_rate must lie in [0,1]");
        }
        if (!(replacement_fraction > 0.0 && replacement_fraction <= 1.0)) {
            throw std::invalid_argument("replacement_fraction must lie in (0,1]");
        }
        if (stagnation_window == 0 || max_generations == 0) {
            throw std::invalid_argument("stagnation_window and max_generations must be positive");
        }
        if (!(cross_level_fraction >= 0.0 && cross_level_fraction <= 1.0)) {
            throw std::invalid_argument("cross_level_fraction must lie in [0,1]");
        }
        if (!(penalty.beta >= 1.0) || !(penalty.w0_scale > 0.0)) {
            throw std::invalid_argument("penalty beta must be >= 1 and w0 scale positive");
        }
        if (!(hillclimb_fraction >= 0.0 && hillclimb_fraction <= 1.0)) {
            throw std::invalid_argument("hillclimb_fraction must lie in [0,1]");
        }
    }
};

/// Best feasible full solution seen during a run.
struct Incumbent {
    bool found = false;
    Evaluation evaluation{};
    std::vector<Gene> solution;
    std::size_t generation = 0;
};

struct LevelStats {
    std::size_t uniform_children = 0;
    std::size_t cross_level_children = 0;
};

struct RunOutcome {
    bool feasible_found = false;
    /// Reported objective of the best feasible solution (nurse cost, mall rent).
    double best_feasible = 0.0;
    std::vector<Gene> best_solution;
    std::size_t generations = 0;
    std::size_t evaluations = 0;
};

template <CoevolutionProblem P>
class PyramidGA {
  public:
    PyramidGA(const P& problem, const Topology& topology, StrategyKind strategy, EngineConfig config)
        : problem_(&problem), topo_(&topology), strategy_(strategy), cfg_(config), rng_(config.rng_seed) {
        cfg_.validate();
        if (topo_->slot_count() != problem.slot_count()) {
            throw std::invalid_argument("topology does not match the problem size");
        }
        domains_.resize(topo_->size());
        for (const auto& level : topo_->levels()) {
            auto& d = domains_[level.level_id];
            for (std::size_t slot : level.slots) {
                const auto dom = problem.domain(slot);
                if (dom.empty()) {
                    throw std::invalid_argument("infeasible slot domain");
                }
                d.push_back(dom);
            }
        }
        stats_.resize(topo_->size());
        initialise();
    }

    /// Advance one generation.
    void step() {
        const bool use_grid = strategy_ == StrategyKind::D;
        const auto ctx = PartnerContext::build(pops_, use_grid, cfg_.grid_width, cfg_.grid_height);
        const ToroidalGrid grid_dims(cfg_.grid_width, cfg_.grid_height);

        std::vector<std::vector<Genome>> children(topo_->size());
        for (const auto& level : topo_->levels()) {
            breed(level, ctx, grid_dims, children[level.level_id]);
        }
        for (auto& kids : children) {
            for (auto& c : kids) {
                evaluate_agent(c, ctx);
            }
        }
        for (const auto& level : topo_->levels()) {
            const LevelId id = level.level_id;
            pops_[id] = replace_generation(pops_[id], std::move(children[id]), cfg_.replacement_fraction,
                                           cfg_.elitist_pool);
            adapt_penalty(id);
        }
        if constexpr (PolishableProblem<P>) {
            if (cfg_.hillclimb) {
                polish_top();
            }
        }
        ++generation_;
        history_.push_back(best_agent(topo_->top()).evaluation);
        if (cfg_.audit) {
            audit();
        }
    }

    [[nodiscard]] bool should_stop() const {
        const auto history = best_history();
        return check_stop(history, cfg_.stagnation_window, cfg_.max_generations, generation_);
    }

    RunOutcome run() {
        while (!should_stop()) {
            step();
        }
        return outcome();
    }

    [[nodiscard]] RunOutcome outcome() const {
        RunOutcome o;
        o.feasible_found = incumbent_.found;
        if (incumbent_.found) {
            o.best_feasible = problem_->report(incumbent_.evaluation);
            o.best_solution = incumbent_.solution;
        }
        o.generations = generation_;
        o.evaluations = evaluations_;
        return o;
    }

    [[nodiscard]] std::span<const SubPopulation> populations() const noexcept { return pops_; }
    [[nodiscard]] std::span<const PenaltyState> penalties() const noexcept { return penalties_; }
    /// Best top-level agent of every generation so far, penalised at the current
    /// top-level weight so that a growing weight alone never reads as stagnation.
    [[nodiscard]] std::vector<double> best_history() const {
        const double w = penalties_[topo_->top()].w;
        std::vector<double> out;
        out.reserve(history_.size());
        for (const auto& e : history_) {
            out.push_back(e.penalised(w));
        }
        return out;
    }
    [[nodiscard]] std::span<const Evaluation> best_evaluations() const noexcept { return history_; }
    [[nodiscard]] std::span<const LevelStats> stats() const noexcept { return stats_; }
    [[nodiscard]] const Incumbent& incumbent() const noexcept { return incumbent_; }
    [[nodiscard]] std::size_t generation() const noexcept { return generation_; }
    [[nodiscard]] const Topology& topology() const noexcept { return *topo_; }
    [[nodiscard]] const EngineConfig& config() const noexcept { return cfg_; }

    [[nodiscard]] double best_fitness(LevelId id) const {
        const auto& agents = pops_[id].agents;
        double best = agents.front().fitness();
        for (const auto& a : agents) {
            best = std::min(best, a.fitness());
        }
        return best;
    }

    [[nodiscard]] const Genome& best_agent(LevelId id) const {
        const auto& agents = pops_[id].agents;
        const Genome* best = &agents.front();
        for (const auto& a : agents) {
            if (a.fitness() < best->fitness()) {
                best = &a;
            }
        }
        return *best;
    }

  private:
    void initialise() {
        pops_.clear();
        penalties_.clear();
        for (const auto& level : topo_->levels()) {
            SubPopulation pop{level.level_id, level.capacity, {}};
            pop.agents.reserve(level.capacity);
            for (std::size_t a = 0; a < level.capacity; ++a) {
                Genome g(level.level_id, std::vector<Gene>(level.slots.size()));
                for (std::size_t idx = 0; idx < g.genes.size(); ++idx) {
                    const auto dom = domains_[level.level_id][idx];
                    g.genes[idx] = dom[uniform_index(rng_, dom.size())];
                }
                g.cell = initial_cell(a, cfg_.grid_width, cfg_.grid_height);
                pop.agents.push_back(std::move(g));
            }
            pops_.push_back(std::move(pop));
            penalties_.push_back(PenaltyState::from_scale(problem_->objective_scale(), cfg_.penalty));
        }
        // Seed every cache with the level's own fitness so rank- and best-based
        // partner choices have something to read in the first partnered pass.
        const PartnerContext none;
        for (auto& pop : pops_) {
            for (auto& g : pop.agents) {
                evaluate_with(g, StrategyKind::S, none);
            }
        }
        if (strategy_ != StrategyKind::S) {
            const auto snapshot = pops_;
            const auto ctx = PartnerContext::build(snapshot, strategy_ == StrategyKind::D, cfg_.grid_width,
                                                   cfg_.grid_height);
            for (auto& pop : pops_) {
                for (auto& g : pop.agents) {
                    evaluate_with(g, strategy_, ctx);
                }
            }
        }
        history_.clear();
        history_.push_back(best_agent(topo_->top()).evaluation);
    }

    void breed(const LevelSpec& level, const PartnerContext& ctx, const ToroidalGrid& grid,
               std::vector<Genome>& kids) {
        const LevelId id = level.level_id;
        const auto& pop = pops_[id].agents;
        const std::size_t need = replaced_count(level.capacity, cfg_.replacement_fraction);
        const bool use_grid = strategy_ == StrategyKind::D;
        kids.reserve(need + 1);
        while (kids.size() < need) {
            const bool cross = !level.crossover_sources.empty() && bernoulli(rng_, cfg_.cross_level_fraction);
            if (!cross) {
                const std::size_t pa = ctx.wheels[id](rng_);
                const std::size_t pb = ctx.wheels[id](rng_);
                auto [c1, c2] = uniform_crossover(pop[pa], pop[pb], cfg_.uniform_inherit_prob, rng_);
                if (use_grid) {
                    c1.cell = grid_insert_child(pop[pa].cell, grid, rng_);
                    c2.cell = grid_insert_child(pop[pb].cell, grid, rng_);
                }
                kids.push_back(std::move(c1));
                ++stats_[id].uniform_children;
                if (kids.size() < need) {
                    kids.push_back(std::move(c2));
                    ++stats_[id].uniform_children;
                }
            } else {
                const std::size_t self = ctx.wheels[id](rng_);
                const auto& sources = level.crossover_sources;
                const LevelId src = sources[uniform_index(rng_, sources.size())];
                const std::size_t lower = ctx.wheels[src](rng_);
                Genome child = fixed_point_crossover(pops_[src].agents[lower], pop[self], *topo_);
                child.clear_cache();
                if (use_grid) {
                    child.cell = grid_insert_child(pop[self].cell, grid, rng_);
                }
                kids.push_back(std::move(child));
                ++stats_[id].cross_level_children;
            }
        }
        for (auto& k : kids) {
            mutate_in_place(k, cfg_.mutation_rate, domains_[id], rng_);
        }
    }

    void evaluate_agent(Genome& g, const PartnerContext& ctx) { evaluate_with(g, strategy_, ctx); }

    void evaluate_with(Genome& g, StrategyKind strategy, const PartnerContext& ctx) {
        const auto& penalty = penalties_[g.level_id];
        evaluate(g, strategy, *topo_, ctx, *problem_, penalty, rng_,
                 [this](std::span<const Gene> full, const Evaluation& e) { record(full, e); });
        ++evaluations_;
    }

    void record(std::span<const Gene> full, const Evaluation& e) {
        if (e.feasible() && (!incumbent_.found || e.raw < incumbent_.evaluation.raw)) {
            incumbent_.found = true;
            incumbent_.evaluation = e;
            incumbent_.solution.assign(full.begin(), full.end());
            incumbent_.generation = generation_;
        }
    }

    void adapt_penalty(LevelId id) {
        auto& pop = pops_[id];
        std::size_t best_idx = 0;
        std::optional<double> best_feasible;
        for (std::size_t a = 0; a < pop.agents.size(); ++a) {
            const auto& g = pop.agents[a];
            if (g.fitness() < pop.agents[best_idx].fitness()) {
                best_idx = a;
            }
            if (g.feasible() && (!best_feasible || g.fitness() < *best_feasible)) {
                best_feasible = g.fitness();
            }
        }
        const auto& best = pop.agents[best_idx];
        penalties_[id] = update(std::move(penalties_[id]), best.fitness(), best.feasible(), best_feasible);
        for (auto& g : pop.agents) {
            g.rescore(penalties_[id].w);
        }
    }

    void polish_top() {
        if constexpr (PolishableProblem<P>) {
            const LevelId top = topo_->top();
            auto& pop = pops_[top];
            const double w = penalties_[top].w;
            const auto order = rank_order(fitness_vector(pop));
            const auto count = static_cast<std::size_t>(std::ceil(cfg_.hillclimb_fraction * pop.capacity - 1e-9));
            std::vector<Gene> full(topo_->slot_count());
            const auto& slots = topo_->level(top).slots;
            for (std::size_t r = 0; r < count && r < order.size(); ++r) {
                auto& g = pop.agents[order[r]];
                if (g.polished) {
                    continue;
                }
                scatter(g, *topo_, full);
                if (problem_->polish(full, w)) {
                    for (std::size_t idx = 0; idx < slots.size(); ++idx) {
                        g.genes[idx] = full[slots[idx]];
                    }
                    const Evaluation e = problem_->evaluate_full(std::span<const Gene>(full));
                    record(full, e);
                    g.set_evaluation(e, w);
                    ++evaluations_;
                }
                g.polished = true;
            }
        }
    }

    void audit() const {
        for (const auto& level : topo_->levels()) {
            const auto& pop = pops_[level.level_id];
            if (pop.agents.size() != level.capacity) {
                throw std::logic_error("population size drifted on level " + level.name);
            }
            for (const auto& g : pop.agents) {
                if (g.level_id != level.level_id || g.genes.size() != level.slots.size() || !g.evaluated()) {
                    throw std::logic_error("malformed agent on level " + level.name);
                }
                for (std::size_t idx = 0; idx < g.genes.size(); ++idx) {
                    const auto dom = domains_[level.level_id][idx];
                    if (std::find(dom.begin(), dom.end(), g.genes[idx]) == dom.end()) {
                        throw std::logic_error("gene outside its slot domain on level " + level.name);
                    }
                }
            }
            if (topo_->is_bottom(level.level_id) && stats_[level.level_id].cross_level_children != 0) {
                throw std::logic_error("bottom level received a cross-level child");
            }
        }
    }

    const P* problem_;
    const Topology* topo_;
    StrategyKind strategy_;
    EngineConfig cfg_;
    Rng rng_;
    std::vector<std::vector<std::span<const Gene>>> domains_;
    std::vector<SubPopulation> pops_;
    std::vector<PenaltyState> penalties_;
    std::vector<Evaluation> history_;
    std::vector<LevelStats> stats_;
    Incumbent incumbent_;
    std::size_t generation_ = 0;
    std::size_t evaluations_ = 0;
};

} // namespace pga
