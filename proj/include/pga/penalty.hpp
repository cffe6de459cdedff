#pragma once

/// @file penalty.hpp
/// @brief Adaptive constraint-violation weight, one controller per sub-population.
///
/// The weight grows while the best agent of a sub-population is infeasible and
/// shrinks while it is feasible, following the near-feasibility signal between
/// the best and the best feasible agent.

#include <algorithm>
#include <cstddef>
#include <deque>
#include <optional>
#include <stdexcept>
#include <utility>

namespace pga {

struct PenaltyParams {
    double beta = 1.1;
    double w0_scale = 1.0;
    double min_factor = 1e-3;
    double max_factor = 1e6;
};

struct PenaltyState {
    double w = 1.0;
    double w_min = 1e-3;
    double w_max = 1e6;
    double beta = 1.1;
    /// Recent best-feasible minus best gaps; NaN-free, newest last.
    std::deque<double> history;

    static constexpr std::size_t kHistoryLength = 16;

    /// Defaults derived from the instance's per-unit objective scale.
    [[nodiscard]] static PenaltyState from_scale(double objective_scale, const PenaltyParams& p = {}) {
        if (!(objective_scale > 0.0)) {
            objective_scale = 1.0;
        }
        const double w0 = objective_scale * p.w0_scale;
        PenaltyState s;
        s.w = w0;
        s.w_min = p.min_factor * w0;
        s.w_max = p.max_factor * w0;
        s.beta = p.beta;
        return s;
    }
};

/// One adaptation step. `best` and `best_feasible` are penalised fitness values
/// of the sub-population after replacement.
[[nodiscard]] inline PenaltyState update(PenaltyState state, double best, std::optional<double> best_feasible) {
    if (!best_feasible) {
        state.w = std::min(state.w * state.beta, state.w_max);
        return state;
    }
    const double gap = *best_feasible - best;
    state.history.push_back(gap);
    if (state.history.size() > PenaltyState::kHistoryLength) {
        state.history.pop_front();
    }
    if (gap > 0.0) {
        state.w = std::min(state.w * state.beta, state.w_max);
    } else if (gap == 0.0 && best == *best_feasible) {
        // best agent itself is feasible
        state.w = std::max(state.w / state.beta, state.w_min);
    }
    return state;
}

/// Variant taking the best agent's feasibility explicitly, for the tie where an
/// infeasible agent and a feasible one share the best value.
[[nodiscard]] inline PenaltyState update(PenaltyState state, double best, bool best_is_feasible,
                                         std::optional<double> best_feasible) {
    if (best_feasible && *best_feasible == best && !best_is_feasible) {
        state.history.push_back(0.0);
        if (state.history.size() > PenaltyState::kHistoryLength) {
            state.history.pop_front();
        }
        return state;
    }
    return update(std::move(state), best, best_feasible);
}

[[nodiscard]] inline double penalised(double raw_objective, double violation, const PenaltyState& state) {
    if (violation < 0.0) {
        throw std::invalid_argument("negative violation");
    }
    return raw_objective + state.w * violation;
}

} // namespace pga
