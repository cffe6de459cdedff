#pragma once

/// @file instance.hpp
/// @brief Nurse scheduling instance data: shift patterns, contracts, grades, costs and demand.
///
/// Periods are indexed 0..13 (0..6 days, 7..13 nights); grades are 1-based with
/// grade 1 the most qualified. Nurse i may be assigned pattern j only if j is in
/// feasible_sets[i], which is derived from the contract and never edited by hand.

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <pga/core/genome.hpp>

namespace pga::nurse {

inline constexpr std::size_t kDays = 7;
inline constexpr std::size_t kPeriods = 14;
inline constexpr std::size_t kMaxGrades = 8;

enum class PatternKind { day, night, combined };

struct ShiftPattern {
    /// Bit k set when the pattern covers period k.
    std::uint16_t cover = 0;
    PatternKind kind = PatternKind::day;

    [[nodiscard]] bool covers(std::size_t period) const noexcept { return (cover >> period) & 1U; }
    [[nodiscard]] int day_count() const noexcept { return std::popcount(static_cast<unsigned>(cover & 0x7FU)); }
    [[nodiscard]] int night_count() const noexcept {
        return std::popcount(static_cast<unsigned>((cover >> kDays) & 0x7FU));
    }
    [[nodiscard]] int total_count() const noexcept { return std::popcount(static_cast<unsigned>(cover & 0x3FFFU)); }

    friend bool operator==(const ShiftPattern&, const ShiftPattern&) = default;
};

/// Shifts per week: D_i when working days, N_i when working nights, B_i when both.
struct Contract {
    int day_shifts = 0;
    int night_shifts = 0;
    int combined_shifts = 0;

    friend bool operator==(const Contract&, const Contract&) = default;
};

struct NurseInstance {
    std::size_t grades = 3;
    std::vector<ShiftPattern> patterns;
    std::vector<int> grade_of;
    std::vector<Contract> contracts;
    /// n x m, row-major by nurse.
    std::vector<int> pref_cost;
    /// 14 x grades, row-major by period.
    std::vector<int> demand;
    std::vector<std::vector<Gene>> feasible_sets;
    /// n x m membership mask mirroring feasible_sets.
    std::vector<std::uint8_t> allowed;

    [[nodiscard]] std::size_t n() const noexcept { return grade_of.size(); }
    [[nodiscard]] std::size_t m() const noexcept { return patterns.size(); }
    [[nodiscard]] int cost(std::size_t nurse, Gene pattern) const { return pref_cost[nurse * m() + pattern]; }
    [[nodiscard]] int demand_at(std::size_t period, int grade) const {
        return demand[period * grades + static_cast<std::size_t>(grade - 1)];
    }
    /// q_is: nurse is of grade s or higher (numerically lower or equal).
    [[nodiscard]] bool qualifies(std::size_t nurse, int grade) const { return grade_of[nurse] <= grade; }
    [[nodiscard]] bool is_allowed(std::size_t nurse, Gene pattern) const {
        return pattern < m() && allowed[nurse * m() + pattern] != 0;
    }

    friend bool operator==(const NurseInstance& a, const NurseInstance& b) {
        return a.grades == b.grades && a.patterns == b.patterns && a.grade_of == b.grade_of &&
               a.contracts == b.contracts && a.pref_cost == b.pref_cost && a.demand == b.demand &&
               a.feasible_sets == b.feasible_sets;
    }
};

/// F(i): day patterns with D_i day shifts, night patterns with N_i night shifts,
/// combined patterns with B_i shifts in total.
[[nodiscard]] inline std::vector<Gene> feasible_patterns(const std::vector<ShiftPattern>& patterns,
                                                         const Contract& c) {
    std::vector<Gene> out;
    for (std::size_t j = 0; j < patterns.size(); ++j) {
        const auto& p = patterns[j];
        bool ok = false;
        switch (p.kind) {
        case PatternKind::day:
            ok = p.day_count() == c.day_shifts;
            break;
        case PatternKind::night:
            ok = p.night_count() == c.night_shifts;
            break;
        case PatternKind::combined:
            ok = p.total_count() == c.combined_shifts;
            break;
        }
        if (ok) {
            out.push_back(static_cast<Gene>(j));
        }
    }
    return out;
}

/// Check structural invariants and rebuild feasible sets from contracts.
inline void finalize(NurseInstance& inst) {
    const std::size_t n = inst.n();
    const std::size_t m = inst.m();
    if (inst.grades == 0 || inst.grades > kMaxGrades) {
        throw std::invalid_argument("grade count out of range");
    }
    if (inst.contracts.size() != n || inst.pref_cost.size() != n * m ||
        inst.demand.size() != kPeriods * inst.grades) {
        throw std::invalid_argument("nurse instance dimensions inconsistent");
    }
    for (const auto& p : inst.patterns) {
        if ((p.cover & ~0x3FFFU) != 0) {
            throw std::invalid_argument("pattern covers unknown period");
        }
        if ((p.kind == PatternKind::day && p.night_count() != 0) ||
            (p.kind == PatternKind::night && p.day_count() != 0)) {
            throw std::invalid_argument("pattern kind does not match its cover");
        }
    }
    for (int g : inst.grade_of) {
        if (g < 1 || static_cast<std::size_t>(g) > inst.grades) {
            throw std::invalid_argument("nurse grade out of range");
        }
    }
    for (int c : inst.pref_cost) {
        if (c < 0 || c > 100) {
            throw std::invalid_argument("preference cost outside [0,100]");
        }
    }
    for (int d : inst.demand) {
        if (d < 0) {
            throw std::invalid_argument("negative demand");
        }
    }
    inst.feasible_sets.assign(n, {});
    inst.allowed.assign(n * m, 0);
    for (std::size_t i = 0; i < n; ++i) {
        inst.feasible_sets[i] = feasible_patterns(inst.patterns, inst.contracts[i]);
        if (inst.feasible_sets[i].empty()) {
            throw std::invalid_argument("nurse " + std::to_string(i) + " has no feasible shift pattern");
        }
        for (Gene j : inst.feasible_sets[i]) {
            inst.allowed[i * m + j] = 1;
        }
    }
}

} // namespace pga::nurse
