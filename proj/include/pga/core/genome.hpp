#pragma once

/// @file genome.hpp
/// @brief Genome and sub-population value types used by every level of the pyramid.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace pga {

/// Assignment index: a shift-pattern index (nurse) or a shop-type index (mall).
using Gene = std::uint32_t;
using LevelId = std::size_t;

/// Cell on the shared toroidal grid used by distributed partnering.
struct Cell {
    std::uint16_t x = 0;
    std::uint16_t y = 0;

    friend constexpr bool operator==(const Cell&, const Cell&) = default;
};

/// Raw objective (minimisation orientation) and constraint violation of one solution.
struct Evaluation {
    double raw = 0.0;
    double violation = 0.0;

    [[nodiscard]] bool feasible() const noexcept { return violation == 0.0; }
    [[nodiscard]] double penalised(double weight) const noexcept { return raw + weight * violation; }
};

/// A partial or full solution string owned by one sub-population level.
///
/// `genes[idx]` is the assignment of the idx-th slot of the owning level, in the
/// level's gene order (see LevelSpec::slots). `evaluation` holds the components
/// behind `cached_fitness`, so the penalised value can be recomputed when the
/// owning sub-population's penalty weight moves.
struct Genome {
    LevelId level_id = 0;
    std::vector<Gene> genes;
    std::optional<double> cached_fitness;
    std::optional<bool> cached_feasible;
    Evaluation evaluation{};
    Cell cell{};
    bool polished = false;

    Genome() = default;
    Genome(LevelId level, std::vector<Gene> g) : level_id(level), genes(std::move(g)) {}

    void clear_cache() noexcept {
        cached_fitness.reset();
        cached_feasible.reset();
        evaluation = {};
        polished = false;
    }

    void set_evaluation(const Evaluation& e, double weight) noexcept {
        evaluation = e;
        cached_fitness = e.penalised(weight);
        cached_feasible = e.feasible();
    }

    /// Recompute the penalised fitness under a new weight.
    void rescore(double weight) noexcept {
        if (cached_fitness) {
            cached_fitness = evaluation.penalised(weight);
        }
    }

    [[nodiscard]] bool evaluated() const noexcept { return cached_fitness.has_value(); }
    [[nodiscard]] double fitness() const { return cached_fitness.value(); }
    [[nodiscard]] bool feasible() const { return cached_feasible.value(); }
};

struct SubPopulation {
    LevelId level_id = 0;
    std::size_t capacity = 0;
    std::vector<Genome> agents;
};

} // namespace pga
