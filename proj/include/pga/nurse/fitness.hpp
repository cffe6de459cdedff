#pragma once

/// @file fitness.hpp
/// @brief Full, restricted and grade-blind nurse fitness.
///
/// Fitness = preference cost + w * (number of uncovered shifts). Supply for
/// demand row (k, s) counts every nurse of grade s or better covering period k,
/// so higher grades substitute for lower ones.

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include <pga/core/genome.hpp>
#include <pga/nurse/instance.hpp>

namespace pga::nurse {

struct NurseFitnessBreakdown {
    double preference_cost = 0.0;
    /// 14 x grades, row-major by period.
    std::vector<int> uncovered;
    double penalty_weight = 0.0;
    double total = 0.0;

    [[nodiscard]] int total_uncovered() const noexcept {
        int s = 0;
        for (int u : uncovered) {
            s += u;
        }
        return s;
    }
};

namespace detail {

/// Per-period, per-grade head count of the given nurses (not cumulative).
using GradeCounts = std::array<std::array<int, kMaxGrades>, kPeriods>;

inline void check_gene(const NurseInstance& inst, std::size_t nurse, Gene g) {
    if (!inst.is_allowed(nurse, g)) {
        throw std::invalid_argument("infeasible pattern");
    }
}

inline void add_cover(const NurseInstance& inst, GradeCounts& counts, std::size_t nurse, Gene pattern, int sign) {
    unsigned bits = inst.patterns[pattern].cover;
    const auto g = static_cast<std::size_t>(inst.grade_of[nurse] - 1);
    while (bits != 0) {
        const auto k = static_cast<std::size_t>(std::countr_zero(bits));
        counts[k][g] += sign;
        bits &= bits - 1;
    }
}

/// Uncovered shifts of one period over the listed demand rows (1-based grades).
inline int uncovered_in_period(const NurseInstance& inst, const GradeCounts& counts, std::size_t period,
                               std::span<const int> rows) {
    int total = 0;
    for (int s : rows) {
        int supply = 0;
        for (int g = 0; g < s; ++g) {
            supply += counts[period][static_cast<std::size_t>(g)];
        }
        total += std::max(inst.demand_at(period, s) - supply, 0);
    }
    return total;
}

inline std::vector<int> all_grades(const NurseInstance& inst) {
    std::vector<int> rows(inst.grades);
    for (std::size_t s = 0; s < inst.grades; ++s) {
        rows[s] = static_cast<int>(s + 1);
    }
    return rows;
}

} // namespace detail

/// Preference cost and uncovered-shift count over all nurses; genes in nurse order.
[[nodiscard]] inline Evaluation evaluate_full(const NurseInstance& inst, std::span<const Gene> assignment) {
    if (assignment.size() != inst.n()) {
        throw std::invalid_argument("assignment length does not match nurse count");
    }
    detail::GradeCounts counts{};
    long pref = 0;
    for (std::size_t i = 0; i < assignment.size(); ++i) {
        detail::check_gene(inst, i, assignment[i]);
        pref += inst.cost(i, assignment[i]);
        detail::add_cover(inst, counts, i, assignment[i], 1);
    }
    long uncovered = 0;
    for (std::size_t k = 0; k < kPeriods; ++k) {
        int supply = 0;
        for (std::size_t s = 0; s < inst.grades; ++s) {
            supply += counts[k][s];
            uncovered += std::max(inst.demand[k * inst.grades + s] - supply, 0);
        }
    }
    return {static_cast<double>(pref), static_cast<double>(uncovered)};
}

[[nodiscard]] inline NurseFitnessBreakdown full_fitness(const NurseInstance& inst, std::span<const Gene> assignment,
                                                        double w) {
    if (w < 0.0) {
        throw std::invalid_argument("negative penalty weight");
    }
    if (assignment.size() != inst.n()) {
        throw std::invalid_argument("assignment length does not match nurse count");
    }
    detail::GradeCounts counts{};
    NurseFitnessBreakdown b;
    for (std::size_t i = 0; i < assignment.size(); ++i) {
        detail::check_gene(inst, i, assignment[i]);
        b.preference_cost += inst.cost(i, assignment[i]);
        detail::add_cover(inst, counts, i, assignment[i], 1);
    }
    b.uncovered.assign(kPeriods * inst.grades, 0);
    for (std::size_t k = 0; k < kPeriods; ++k) {
        int supply = 0;
        for (std::size_t s = 0; s < inst.grades; ++s) {
            supply += counts[k][s];
            b.uncovered[k * inst.grades + s] = std::max(inst.demand[k * inst.grades + s] - supply, 0);
        }
    }
    b.penalty_weight = w;
    b.total = b.preference_cost + w * b.total_uncovered();
    return b;
}

[[nodiscard]] inline bool is_feasible(const NurseInstance& inst, std::span<const Gene> assignment) {
    return evaluate_full(inst, assignment).feasible();
}

/// Restricted fitness over a subset of nurses and grades.
///
/// `nurses[idx]` is the nurse assigned `genes[idx]`; every listed nurse must have
/// a grade in `grade_set`. Only demand rows of `grade_set` count, and supply comes
/// from the listed nurses only, so substitution happens inside the set but never
/// from outside it.
[[nodiscard]] inline Evaluation evaluate_subset(const NurseInstance& inst, std::span<const std::size_t> nurses,
                                                std::span<const Gene> genes, std::span<const int> grade_set) {
    if (nurses.size() != genes.size()) {
        throw std::invalid_argument("slot/grade mismatch");
    }
    detail::GradeCounts counts{};
    long pref = 0;
    for (std::size_t idx = 0; idx < nurses.size(); ++idx) {
        const std::size_t i = nurses[idx];
        if (std::find(grade_set.begin(), grade_set.end(), inst.grade_of[i]) == grade_set.end()) {
            throw std::invalid_argument("slot/grade mismatch");
        }
        detail::check_gene(inst, i, genes[idx]);
        pref += inst.cost(i, genes[idx]);
        detail::add_cover(inst, counts, i, genes[idx], 1);
    }
    long uncovered = 0;
    for (std::size_t k = 0; k < kPeriods; ++k) {
        uncovered += detail::uncovered_in_period(inst, counts, k, grade_set);
    }
    return {static_cast<double>(pref), static_cast<double>(uncovered)};
}

/// Nurses whose grade is in `grade_set`, ascending.
[[nodiscard]] inline std::vector<std::size_t> nurses_of_grades(const NurseInstance& inst,
                                                                std::span<const int> grade_set) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < inst.n(); ++i) {
        if (std::find(grade_set.begin(), grade_set.end(), inst.grade_of[i]) != grade_set.end()) {
            out.push_back(i);
        }
    }
    return out;
}

/// Sub-fitness of a partial string covering exactly the nurses of `grade_set`,
/// ordered by ascending nurse index.
[[nodiscard]] inline double sub_fitness(const NurseInstance& inst, std::span<const Gene> partial,
                                        std::span<const int> grade_set, double w) {
    const auto nurses = nurses_of_grades(inst, grade_set);
    if (nurses.size() != partial.size()) {
        throw std::invalid_argument("slot/grade mismatch");
    }
    return evaluate_subset(inst, nurses, partial, grade_set).penalised(w);
}

/// Grade-blind fitness of a full string: total head count per period against the
/// cumulative (lowest grade) demand row, i.e. total staff needed.
[[nodiscard]] inline Evaluation evaluate_grade_blind(const NurseInstance& inst, std::span<const Gene> assignment) {
    if (assignment.size() != inst.n()) {
        throw std::invalid_argument("assignment length does not match nurse count");
    }
    std::array<int, kPeriods> supply{};
    long pref = 0;
    for (std::size_t i = 0; i < assignment.size(); ++i) {
        detail::check_gene(inst, i, assignment[i]);
        pref += inst.cost(i, assignment[i]);
        unsigned bits = inst.patterns[assignment[i]].cover;
        while (bits != 0) {
            ++supply[static_cast<std::size_t>(std::countr_zero(bits))];
            bits &= bits - 1;
        }
    }
    long uncovered = 0;
    const int last = static_cast<int>(inst.grades);
    for (std::size_t k = 0; k < kPeriods; ++k) {
        uncovered += std::max(inst.demand_at(k, last) - supply[k], 0);
    }
    return {static_cast<double>(pref), static_cast<double>(uncovered)};
}

} // namespace pga::nurse
