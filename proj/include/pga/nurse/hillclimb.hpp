#pragma once

/// @file hillclimb.hpp
/// @brief Local search for "balanced" nurse schedules: reassignments, swaps and 3-chains.

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <span>
#include <vector>

#include <pga/core/genome.hpp>
#include <pga/nurse/fitness.hpp>
#include <pga/nurse/instance.hpp>

namespace pga::nurse {

/// Signed surplus (cumulative supply minus demand) per period and grade.
struct BalanceProfile {
    std::size_t grades = 0;
    /// 14 x grades, row-major by period.
    std::vector<int> surplus;

    [[nodiscard]] int at(std::size_t period, int grade) const {
        return surplus[period * grades + static_cast<std::size_t>(grade - 1)];
    }
};

[[nodiscard]] inline BalanceProfile balance_profile(const NurseInstance& inst, std::span<const Gene> assignment) {
    detail::GradeCounts counts{};
    for (std::size_t i = 0; i < assignment.size(); ++i) {
        detail::check_gene(inst, i, assignment[i]);
        detail::add_cover(inst, counts, i, assignment[i], 1);
    }
    BalanceProfile b;
    b.grades = inst.grades;
    b.surplus.assign(kPeriods * inst.grades, 0);
    for (std::size_t k = 0; k < kPeriods; ++k) {
        int supply = 0;
        for (std::size_t s = 0; s < inst.grades; ++s) {
            supply += counts[k][s];
            b.surplus[k * inst.grades + s] = supply - inst.demand[k * inst.grades + s];
        }
    }
    return b;
}

/// Surplus somewhere and shortage somewhere else within the same shift class
/// (both day periods or both night periods).
[[nodiscard]] inline bool is_balanced(const NurseInstance& inst, std::span<const Gene> assignment) {
    const auto b = balance_profile(inst, assignment);
    for (std::size_t cls = 0; cls < 2; ++cls) {
        bool surplus = false;
        bool shortage = false;
        for (std::size_t k = cls * kDays; k < (cls + 1) * kDays; ++k) {
            for (std::size_t s = 0; s < inst.grades; ++s) {
                const int v = b.surplus[k * inst.grades + s];
                surplus = surplus || v > 0;
                shortage = shortage || v < 0;
            }
        }
        if (surplus && shortage) {
            return true;
        }
    }
    return false;
}

struct HillclimbOptions {
    /// 1: single reassignments only, 2: plus pair swaps, 3: plus 3-chains.
    int max_chain = 3;
};

namespace detail {

/// Incremental state for delta evaluation of moves.
class ClimbState {
  public:
    ClimbState(const NurseInstance& inst, std::vector<Gene> genes, double w)
        : inst_(inst), genes_(std::move(genes)), w_(w) {
        for (std::size_t i = 0; i < genes_.size(); ++i) {
            check_gene(inst_, i, genes_[i]);
            pref_ += inst_.cost(i, genes_[i]);
            add_cover(inst_, counts_, i, genes_[i], 1);
        }
        for (std::size_t k = 0; k < kPeriods; ++k) {
            uncovered_ += period_uncovered(k);
        }
    }

    /// Apply the move if it strictly lowers penalised fitness without breaking
    /// feasibility; returns whether it was applied.
    template <std::size_t N>
    bool try_move(const std::array<std::size_t, N>& nurses, const std::array<Gene, N>& to) {
        unsigned touched = 0;
        long d_pref = 0;
        bool any_change = false;
        for (std::size_t t = 0; t < N; ++t) {
            const Gene from = genes_[nurses[t]];
            if (from != to[t]) {
                any_change = true;
            }
            touched |= static_cast<unsigned>(inst_.patterns[from].cover ^ inst_.patterns[to[t]].cover);
            d_pref += inst_.cost(nurses[t], to[t]) - inst_.cost(nurses[t], from);
        }
        if (!any_change) {
            return false;
        }
        const long before = uncovered_over(touched);
        for (std::size_t t = 0; t < N; ++t) {
            add_cover(inst_, counts_, nurses[t], genes_[nurses[t]], -1);
            add_cover(inst_, counts_, nurses[t], to[t], 1);
        }
        const long after = uncovered_over(touched);
        const long new_uncovered = uncovered_ - before + after;
        const double delta = static_cast<double>(d_pref) + w_ * static_cast<double>(after - before);
        const bool breaks_feasibility = uncovered_ == 0 && new_uncovered > 0;
        if (delta < 0.0 && !breaks_feasibility) {
            for (std::size_t t = 0; t < N; ++t) {
                genes_[nurses[t]] = to[t];
            }
            pref_ += d_pref;
            uncovered_ = new_uncovered;
            return true;
        }
        for (std::size_t t = 0; t < N; ++t) {
            add_cover(inst_, counts_, nurses[t], to[t], -1);
            add_cover(inst_, counts_, nurses[t], genes_[nurses[t]], 1);
        }
        return false;
    }

    [[nodiscard]] const std::vector<Gene>& genes() const noexcept { return genes_; }
    [[nodiscard]] Gene gene(std::size_t i) const { return genes_[i]; }

  private:
    [[nodiscard]] long period_uncovered(std::size_t k) const {
        long u = 0;
        int supply = 0;
        for (std::size_t s = 0; s < inst_.grades; ++s) {
            supply += counts_[k][s];
            u += std::max(inst_.demand[k * inst_.grades + s] - supply, 0);
        }
        return u;
    }

    [[nodiscard]] long uncovered_over(unsigned periods) const {
        long u = 0;
        while (periods != 0) {
            u += period_uncovered(static_cast<std::size_t>(std::countr_zero(periods)));
            periods &= periods - 1;
        }
        return u;
    }

    const NurseInstance& inst_;
    std::vector<Gene> genes_;
    double w_;
    GradeCounts counts_{};
    long pref_ = 0;
    long uncovered_ = 0;
};

} // namespace detail

/// First-improvement descent, scanning by nurse index, until a full pass over
/// single reassignments, pair swaps and 3-chains finds nothing better.
[[nodiscard]] inline std::vector<Gene> improve(const NurseInstance& inst, std::span<const Gene> assignment, double w,
                                               HillclimbOptions opts = {}) {
    detail::ClimbState st(inst, std::vector<Gene>(assignment.begin(), assignment.end()), w);
    const std::size_t n = inst.n();
    bool improved = true;
    while (improved) {
        improved = false;
        for (std::size_t i = 0; i < n; ++i) {
            for (Gene j : inst.feasible_sets[i]) {
                if (j != st.gene(i) && st.try_move<1>({i}, {j})) {
                    improved = true;
                }
            }
        }
        if (opts.max_chain >= 2) {
            for (std::size_t a = 0; a < n; ++a) {
                for (std::size_t b = a + 1; b < n; ++b) {
                    const Gene ga = st.gene(a);
                    const Gene gb = st.gene(b);
                    if (ga != gb && inst.is_allowed(a, gb) && inst.is_allowed(b, ga) && st.try_move<2>({a, b}, {gb, ga})) {
                        improved = true;
                    }
                }
            }
        }
        if (opts.max_chain >= 3) {
            for (std::size_t a = 0; a < n; ++a) {
                for (std::size_t b = a + 1; b < n; ++b) {
                    for (std::size_t c = b + 1; c < n; ++c) {
                        const Gene ga = st.gene(a);
                        const Gene gb = st.gene(b);
                        const Gene gc = st.gene(c);
                        // a <- b <- c <- a
                        if (inst.is_allowed(a, gb) && inst.is_allowed(b, gc) && inst.is_allowed(c, ga) &&
                            st.try_move<3>({a, b, c}, {gb, gc, ga})) {
                            improved = true;
                            continue;
                        }
                        // a <- c <- b <- a
                        if (inst.is_allowed(a, gc) && inst.is_allowed(b, ga) && inst.is_allowed(c, gb) &&
                            st.try_move<3>({a, b, c}, {gc, ga, gb})) {
                            improved = true;
                        }
                    }
                }
            }
        }
    }
    return st.genes();
}

} // namespace pga::nurse
