#pragma once

/// @file problem.hpp
/// @brief What the engine needs from a problem.

#include <concepts>
#include <cstddef>
#include <span>
#include <vector>

#include <pga/core/genome.hpp>
#include <pga/topology.hpp>

namespace pga {

/// A multiple-choice problem the pyramid can evolve.
///
/// Full solutions are passed in problem slot order; level genomes in the level's
/// gene order. Evaluations are oriented for minimisation.
template <typename P>
concept CoevolutionProblem =
    requires(const P& p, const LevelSpec& level, std::span<const Gene> genes, std::size_t slot, Evaluation e) {
        { p.slot_count() } -> std::convertible_to<std::size_t>;
        { p.domain(slot) } -> std::convertible_to<std::span<const Gene>>;
        { p.evaluate_full(genes) } -> std::same_as<Evaluation>;
        { p.evaluate_level(level, genes) } -> std::same_as<Evaluation>;
        { p.objective_scale() } -> std::convertible_to<double>;
        { p.report(e) } -> std::convertible_to<double>;
    };

/// A problem offering local search on full solutions.
template <typename P>
concept PolishableProblem = CoevolutionProblem<P> && requires(const P& p, std::vector<Gene>& full, double w) {
    { p.polish(full, w) } -> std::same_as<bool>;
};

} // namespace pga
