#pragma once

// Independent nurse-scheduling fitness and exhaustive search.
//
// Written straight from the integer-programme statement using only the instance
// data; shares no code with the library's fitness, feasibility or hillclimb code.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include <pga/nurse/instance.hpp>

namespace pga_oracle {

using pga::nurse::NurseInstance;
using pga::nurse::PatternKind;

/// a_jk
inline int covers(const NurseInstance& inst, std::size_t j, std::size_t k) {
    return (inst.patterns[j].cover & (1U << k)) ? 1 : 0;
}

/// q_is
inline int q(const NurseInstance& inst, std::size_t i, std::size_t s) {
    return inst.grade_of[i] <= static_cast<int>(s) ? 1 : 0;
}

/// j in F(i), from the contract definition.
inline bool in_feasible_set(const NurseInstance& inst, std::size_t i, std::size_t j) {
    if (j >= inst.patterns.size()) {
        return false;
    }
    int days = 0;
    int nights = 0;
    for (std::size_t k = 0; k < 7; ++k) {
        days += covers(inst, j, k);
        nights += covers(inst, j, k + 7);
    }
    const auto& c = inst.contracts[i];
    switch (inst.patterns[j].kind) {
    case PatternKind::day:
        return nights == 0 && days == c.day_shifts;
    case PatternKind::night:
        return days == 0 && nights == c.night_shifts;
    case PatternKind::combined:
        return days + nights == c.combined_shifts;
    }
    return false;
}

inline std::vector<std::vector<std::uint32_t>> feasible_sets(const NurseInstance& inst) {
    std::vector<std::vector<std::uint32_t>> f(inst.grade_of.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        for (std::size_t j = 0; j < inst.patterns.size(); ++j) {
            if (in_feasible_set(inst, i, j)) {
                f[i].push_back(static_cast<std::uint32_t>(j));
            }
        }
    }
    return f;
}

struct NurseValue {
    double preference = 0.0;
    double uncovered = 0.0;
    double total = 0.0;
};

/// sum_ij p_ij x_ij + w * sum_ks max(R_ks - sum_ij q_is a_jk x_ij, 0)
inline NurseValue recompute_fitness_parts(const NurseInstance& inst, const std::vector<std::uint32_t>& x, double w) {
    const std::size_t n = inst.grade_of.size();
    if (x.size() != n) {
        throw std::invalid_argument("wrong length");
    }
    NurseValue v;
    for (std::size_t i = 0; i < n; ++i) {
        if (!in_feasible_set(inst, i, x[i])) {
            throw std::invalid_argument("infeasible pattern");
        }
        v.preference += inst.pref_cost[i * inst.patterns.size() + x[i]];
    }
    for (std::size_t k = 0; k < 14; ++k) {
        for (std::size_t s = 1; s <= inst.grades; ++s) {
            int supply = 0;
            for (std::size_t i = 0; i < n; ++i) {
                supply += q(inst, i, s) * covers(inst, x[i], k);
            }
            const int need = inst.demand[k * inst.grades + (s - 1)];
            if (need > supply) {
                v.uncovered += need - supply;
            }
        }
    }
    v.total = v.preference + w * v.uncovered;
    return v;
}

inline double recompute_fitness(const NurseInstance& inst, const std::vector<std::uint32_t>& x, double w) {
    return recompute_fitness_parts(inst, x, w).total;
}

struct NurseOptimum {
    std::vector<std::uint32_t> best;
    double best_value = 0.0;
    std::optional<std::vector<std::uint32_t>> best_feasible;
    double best_feasible_cost = 0.0;
    std::size_t evaluated = 0;
};

/// Exhaustive search over prod_i |F(i)| <= limit assignments, in odometer order
/// (the first nurse varies fastest); ties keep the first assignment found.
inline NurseOptimum brute_force_nurse(const NurseInstance& inst, double w, std::size_t limit = 1000000) {
    const auto f = feasible_sets(inst);
    std::size_t space = 1;
    for (const auto& fi : f) {
        if (fi.empty()) {
            throw std::invalid_argument("empty feasible set");
        }
        if (space > limit / fi.size()) {
            throw std::invalid_argument("search space too large");
        }
        space *= fi.size();
    }
    NurseOptimum out;
    std::vector<std::size_t> digit(f.size(), 0);
    std::vector<std::uint32_t> x(f.size());
    for (std::size_t t = 0; t < space; ++t) {
        for (std::size_t i = 0; i < f.size(); ++i) {
            x[i] = f[i][digit[i]];
        }
        const auto v = recompute_fitness_parts(inst, x, w);
        ++out.evaluated;
        if (out.evaluated == 1 || v.total < out.best_value) {
            out.best = x;
            out.best_value = v.total;
        }
        if (v.uncovered == 0 && (!out.best_feasible || v.preference < out.best_feasible_cost)) {
            out.best_feasible = x;
            out.best_feasible_cost = v.preference;
        }
        for (std::size_t i = 0; i < digit.size(); ++i) {
            if (++digit[i] < f[i].size()) {
                break;
            }
            digit[i] = 0;
        }
    }
    return out;
}

} // namespace pga_oracle
