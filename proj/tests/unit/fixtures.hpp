#pragma once

// Small hand-built instances shared by the unit suites.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include <pga/core/genome.hpp>
#include <pga/mall/instance.hpp>
#include <pga/nurse/instance.hpp>

namespace fixtures {

using pga::Gene;
using pga::nurse::Contract;
using pga::nurse::NurseInstance;
using pga::nurse::PatternKind;
using pga::nurse::ShiftPattern;

inline ShiftPattern day_pattern(std::initializer_list<int> days) {
    std::uint16_t m = 0;
    for (int d : days) {
        m |= static_cast<std::uint16_t>(1U << d);
    }
    return {m, PatternKind::day};
}

inline ShiftPattern night_pattern(std::initializer_list<int> nights) {
    std::uint16_t m = 0;
    for (int d : nights) {
        m |= static_cast<std::uint16_t>(1U << (d + 7));
    }
    return {m, PatternKind::night};
}

/// Instance with every nurse on the same contract and zero demand; tests fill in
/// costs and demand, then call finalize.
inline NurseInstance blank_nurse(std::vector<int> grades, std::vector<ShiftPattern> patterns, Contract c,
                                 std::size_t grade_count = 3) {
    NurseInstance inst;
    inst.grades = grade_count;
    inst.patterns = std::move(patterns);
    inst.grade_of = std::move(grades);
    inst.contracts.assign(inst.grade_of.size(), c);
    inst.pref_cost.assign(inst.grade_of.size() * inst.patterns.size(), 0);
    inst.demand.assign(14 * grade_count, 0);
    return inst;
}

inline void set_demand(NurseInstance& inst, std::size_t period, int grade, int value) {
    inst.demand[period * inst.grades + static_cast<std::size_t>(grade - 1)] = value;
}

/// One-area-per-block mall with T types, all rent tables zero and loose limits.
inline pga::mall::MallInstance blank_mall(std::size_t areas, std::size_t per_area, std::size_t types) {
    pga::mall::MallInstance inst;
    inst.areas = areas;
    inst.group_count = 1;
    for (std::size_t l = 0; l < areas * per_area; ++l) {
        inst.area_of.push_back(l / per_area);
    }
    inst.types.assign(types, pga::mall::TypeSpec{0, 0, static_cast<int>(areas * per_area), 0.0, 0.0, 1U});
    inst.attract.assign(areas * types, 0.0);
    inst.fixed_rent.assign(types * areas, 0.0);
    inst.size_rent = {0.0, 0.0, 0.0};
    inst.synergy = 0.0;
    const int L = static_cast<int>(areas * per_area);
    inst.size_limits = {L, L, L};
    return inst;
}

} // namespace fixtures
