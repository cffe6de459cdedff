#pragma once

/// @file partnering.hpp
/// @brief Choosing evaluation partners that complete a partial genome into a full solution.
///
/// Seven strategies:
///   S  - sub-fitness only; rank-roulette partner when paired inside SR
///   R  - uniform random partner
///   B  - best partner (ties: lower level id, then lower agent index)
///   D  - partner sharing the agent's cell on a toroidal grid, else one of the 8 neighbours
///   SR, BR, RR - two composites with independently drawn partners; the better fitness counts

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdlib>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <pga/core/genome.hpp>
#include <pga/core/random.hpp>
#include <pga/engine/operators.hpp>
#include <pga/penalty.hpp>
#include <pga/problem.hpp>
#include <pga/topology.hpp>

namespace pga {

enum class StrategyKind { S, R, B, D, SR, BR, RR };

inline constexpr std::array<StrategyKind, 7> kAllStrategies = {StrategyKind::S,  StrategyKind::R,  StrategyKind::B,
                                                               StrategyKind::D,  StrategyKind::SR, StrategyKind::BR,
                                                               StrategyKind::RR};

[[nodiscard]] constexpr std::string_view to_string(StrategyKind k) noexcept {
    switch (k) {
    case StrategyKind::S:
        return "S";
    case StrategyKind::R:
        return "R";
    case StrategyKind::B:
        return "B";
    case StrategyKind::D:
        return "D";
    case StrategyKind::SR:
        return "SR";
    case StrategyKind::BR:
        return "BR";
    case StrategyKind::RR:
        return "RR";
    }
    return "?";
}

[[nodiscard]] inline StrategyKind parse_strategy(std::string_view s) {
    for (auto k : kAllStrategies) {
        if (to_string(k) == s) {
            return k;
        }
    }
    throw std::invalid_argument("unknown strategy '" + std::string(s) + "'");
}

[[nodiscard]] constexpr bool is_double(StrategyKind k) noexcept {
    return k == StrategyKind::SR || k == StrategyKind::BR || k == StrategyKind::RR;
}

/// Partner policy used for each composite evaluation of a strategy.
[[nodiscard]] constexpr std::array<StrategyKind, 2> composite_policies(StrategyKind k) noexcept {
    switch (k) {
    case StrategyKind::SR:
        return {StrategyKind::S, StrategyKind::R};
    case StrategyKind::BR:
        return {StrategyKind::B, StrategyKind::R};
    case StrategyKind::RR:
        return {StrategyKind::R, StrategyKind::R};
    default:
        return {k, k};
    }
}

/// Shared toroidal grid. Every level is spread evenly over the same cells.
class ToroidalGrid {
  public:
    ToroidalGrid() = default;
    ToroidalGrid(std::size_t width, std::size_t height) : width_(width), height_(height) {
        if (width == 0 || height == 0) {
            throw std::invalid_argument("grid dimensions must be positive");
        }
    }

    /// Snapshot agent placements of every level.
    static ToroidalGrid from_populations(std::span<const SubPopulation> pools, std::size_t width, std::size_t height) {
        ToroidalGrid g(width, height);
        g.placement_.resize(pools.size());
        g.occupancy_.resize(pools.size());
        for (std::size_t l = 0; l < pools.size(); ++l) {
            g.occupancy_[l].assign(g.cells(), {});
            for (std::size_t a = 0; a < pools[l].agents.size(); ++a) {
                const Cell c = pools[l].agents[a].cell;
                if (c.x >= width || c.y >= height) {
                    throw std::invalid_argument("agent placed outside the grid");
                }
                g.placement_[l].push_back(c);
                g.occupancy_[l][g.index(c)].push_back(a);
            }
        }
        return g;
    }

    [[nodiscard]] std::size_t width() const noexcept { return width_; }
    [[nodiscard]] std::size_t height() const noexcept { return height_; }
    [[nodiscard]] std::size_t cells() const noexcept { return width_ * height_; }
    [[nodiscard]] std::size_t index(Cell c) const noexcept { return static_cast<std::size_t>(c.y) * width_ + c.x; }

    [[nodiscard]] Cell wrap(long x, long y) const noexcept {
        const long w = static_cast<long>(width_);
        const long h = static_cast<long>(height_);
        return Cell{static_cast<std::uint16_t>(((x % w) + w) % w), static_cast<std::uint16_t>(((y % h) + h) % h)};
    }

    /// The eight surrounding cells, row by row.
    [[nodiscard]] std::array<Cell, 8> neighbours(Cell c) const noexcept {
        std::array<Cell, 8> out{};
        std::size_t i = 0;
        for (long dy = -1; dy <= 1; ++dy) {
            for (long dx = -1; dx <= 1; ++dx) {
                if (dx != 0 || dy != 0) {
                    out[i++] = wrap(static_cast<long>(c.x) + dx, static_cast<long>(c.y) + dy);
                }
            }
        }
        return out;
    }

    /// Agents of `level` at `c`. Empty if the level has no placement snapshot.
    [[nodiscard]] std::span<const std::size_t> agents_at(LevelId level, Cell c) const {
        if (level >= occupancy_.size()) {
            return {};
        }
        return occupancy_[level][index(c)];
    }

    [[nodiscard]] bool covers(LevelId level) const noexcept { return level < occupancy_.size(); }

    [[nodiscard]] std::span<const Cell> placement(LevelId level) const { return placement_.at(level); }

  private:
    std::size_t width_ = 10;
    std::size_t height_ = 10;
    std::vector<std::vector<Cell>> placement_;
    std::vector<std::vector<std::vector<std::size_t>>> occupancy_;
};

/// Even spacing: agent a sits in cell a mod (width*height), filled row by row.
[[nodiscard]] inline Cell initial_cell(std::size_t agent_index, std::size_t width, std::size_t height) {
    const std::size_t c = agent_index % (width * height);
    return Cell{static_cast<std::uint16_t>(c % width), static_cast<std::uint16_t>(c / width)};
}

[[nodiscard]] inline std::size_t pick_partner_S(const RankWheel& wheel, Rng& rng) { return wheel(rng); }

[[nodiscard]] inline std::size_t pick_partner_S(const SubPopulation& pool, Rng& rng) {
    return rank_roulette_select(pool, rng);
}

[[nodiscard]] inline std::size_t pick_partner_R(const SubPopulation& pool, Rng& rng) {
    if (pool.agents.empty()) {
        throw std::invalid_argument("empty partner pool");
    }
    return uniform_index(rng, pool.agents.size());
}

struct PartnerRef {
    std::size_t pool = 0;
    std::size_t agent = 0;
    friend bool operator==(const PartnerRef&, const PartnerRef&) = default;
};

/// Best cached fitness across `pools` (given in ascending level order).
[[nodiscard]] inline PartnerRef pick_partner_B(std::span<const SubPopulation* const> pools) {
    std::optional<PartnerRef> best;
    double best_fit = 0.0;
    for (std::size_t p = 0; p < pools.size(); ++p) {
        const auto& agents = pools[p]->agents;
        for (std::size_t a = 0; a < agents.size(); ++a) {
            const double f = agents[a].fitness();
            if (!best || f < best_fit) {
                best = PartnerRef{p, a};
                best_fit = f;
            }
        }
    }
    if (!best) {
        throw std::invalid_argument("empty partner pool");
    }
    return *best;
}

[[nodiscard]] inline std::size_t pick_partner_B(const SubPopulation& pool) {
    const SubPopulation* p = &pool;
    return pick_partner_B(std::span<const SubPopulation* const>(&p, 1)).agent;
}

/// Co-located partner, else one from the 8-neighbourhood.
///
/// Candidates are drawn uniformly from all agents of the pool at the cell; if the
/// cell is empty, uniformly from all agents in the eight surrounding cells.
[[nodiscard]] inline std::size_t pick_partner_D(Cell cell, const SubPopulation& pool, const ToroidalGrid& grid,
                                                Rng& rng) {
    if (!grid.covers(pool.level_id)) {
        throw std::invalid_argument("grid does not cover partner level");
    }
    const auto here = grid.agents_at(pool.level_id, cell);
    if (!here.empty()) {
        return here[uniform_index(rng, here.size())];
    }
    std::size_t total = 0;
    const auto around = grid.neighbours(cell);
    for (const Cell& c : around) {
        total += grid.agents_at(pool.level_id, c).size();
    }
    if (total == 0) {
        throw std::runtime_error("sparse grid");
    }
    std::size_t pick = uniform_index(rng, total);
    for (const Cell& c : around) {
        const auto at = grid.agents_at(pool.level_id, c);
        if (pick < at.size()) {
            return at[pick];
        }
        pick -= at.size();
    }
    throw std::logic_error("unreachable");
}

/// pick_partner_D, widening to rings of radius 2, 3, ... when the 3x3 block is empty.
[[nodiscard]] inline std::size_t pick_partner_D_widening(Cell cell, const SubPopulation& pool,
                                                         const ToroidalGrid& grid, Rng& rng) {
    try {
        return pick_partner_D(cell, pool, grid, rng);
    } catch (const std::runtime_error&) {
        const long max_r = static_cast<long>(std::max(grid.width(), grid.height()));
        for (long r = 2; r <= max_r; ++r) {
            std::vector<std::size_t> ring;
            for (long dy = -r; dy <= r; ++dy) {
                for (long dx = -r; dx <= r; ++dx) {
                    if (std::max(std::abs(dx), std::abs(dy)) != r) {
                        continue;
                    }
                    const auto at = grid.agents_at(pool.level_id, grid.wrap(cell.x + dx, cell.y + dy));
                    ring.insert(ring.end(), at.begin(), at.end());
                }
            }
            if (!ring.empty()) {
                return ring[uniform_index(rng, ring.size())];
            }
        }
        throw;
    }
}

/// Uniform choice among the eight cells around the parent.
[[nodiscard]] inline Cell grid_insert_child(Cell parent, const ToroidalGrid& grid, Rng& rng) {
    return grid.neighbours(parent)[uniform_index(rng, 8)];
}

/// Per-generation snapshot the partner pickers read from.
///
/// Rank wheels and best indices use fitness cached in the previous generation,
/// so the order in which agents are evaluated does not matter.
struct PartnerContext {
    std::span<const SubPopulation> pools;
    std::vector<RankWheel> wheels;
    std::vector<std::size_t> best;
    std::optional<ToroidalGrid> grid;

    static PartnerContext build(std::span<const SubPopulation> pools, bool with_grid, std::size_t grid_width = 10,
                                std::size_t grid_height = 10) {
        PartnerContext ctx;
        ctx.pools = pools;
        ctx.wheels.reserve(pools.size());
        for (const auto& p : pools) {
            ctx.wheels.emplace_back(p);
            ctx.best.push_back(pick_partner_B(p));
        }
        if (with_grid) {
            ctx.grid = ToroidalGrid::from_populations(pools, grid_width, grid_height);
        }
        return ctx;
    }

    [[nodiscard]] std::size_t pick(StrategyKind policy, LevelId level, Cell cell, Rng& rng) const {
        const auto& pool = pools[level];
        switch (policy) {
        case StrategyKind::S:
            return pick_partner_S(wheels[level], rng);
        case StrategyKind::R:
            return pick_partner_R(pool, rng);
        case StrategyKind::B:
            return best[level];
        case StrategyKind::D:
            if (!grid) {
                throw std::invalid_argument("distributed partnering needs a grid");
            }
            return pick_partner_D_widening(cell, pool, *grid, rng);
        default:
            throw std::logic_error("composite policy must be a single strategy");
        }
    }
};

/// Evaluate `agent` under `strategy`, cache the result on it and return (fitness, feasible).
///
/// Every full solution evaluated along the way is reported to `on_full` as
/// (problem-ordered genes, evaluation).
template <CoevolutionProblem P, typename FullSink>
std::pair<double, bool> evaluate(Genome& agent, StrategyKind strategy, const Topology& topo,
                                 const PartnerContext& ctx, const P& problem, const PenaltyState& penalty, Rng& rng,
                                 FullSink&& on_full) {
    const auto& level = topo.level(agent.level_id);
    const auto complements = complement_levels(agent.level_id, topo);
    const bool full_length = level.slots.size() == topo.slot_count();

    std::vector<Gene> full(topo.slot_count());
    if (level.is_top || (full_length && strategy != StrategyKind::S)) {
        scatter(agent, topo, full);
        const Evaluation e = problem.evaluate_full(std::span<const Gene>(full));
        on_full(std::span<const Gene>(full), e);
        agent.set_evaluation(e, penalty.w);
        return {*agent.cached_fitness, e.feasible()};
    }
    if (strategy == StrategyKind::S) {
        const Evaluation e = problem.evaluate_level(level, std::span<const Gene>(agent.genes));
        agent.set_evaluation(e, penalty.w);
        return {*agent.cached_fitness, e.feasible()};
    }
    if (complements.empty()) {
        throw std::invalid_argument("level has no evaluation partners");
    }
    const auto policies = composite_policies(strategy);
    const std::size_t rounds = is_double(strategy) ? 2 : 1;
    std::optional<Evaluation> best;
    for (std::size_t r = 0; r < rounds; ++r) {
        for (LevelId c : complements) {
            if (ctx.pools[c].agents.empty()) {
                throw std::invalid_argument("empty partner pool");
            }
            const std::size_t idx = ctx.pick(policies[r], c, agent.cell, rng);
            scatter(ctx.pools[c].agents[idx], topo, full);
        }
        scatter(agent, topo, full);
        const Evaluation e = problem.evaluate_full(std::span<const Gene>(full));
        on_full(std::span<const Gene>(full), e);
        if (!best || e.penalised(penalty.w) < best->penalised(penalty.w)) {
            best = e;
        }
    }
    agent.set_evaluation(*best, penalty.w);
    return {*agent.cached_fitness, best->feasible()};
}

template <CoevolutionProblem P>
std::pair<double, bool> evaluate(Genome& agent, StrategyKind strategy, const Topology& topo,
                                 const PartnerContext& ctx, const P& problem, const PenaltyState& penalty, Rng& rng) {
    return evaluate(agent, strategy, topo, ctx, problem, penalty, rng, [](std::span<const Gene>, const Evaluation&) {});
}

} // namespace pga
