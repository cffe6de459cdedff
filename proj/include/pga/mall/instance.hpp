#pragma once

/// @file instance.hpp
/// @brief Mall tenant-selection instance: locations grouped into areas, shop types and rent tables.
///
/// Locations inside one area form a fixed linear adjacency sequence in ascending
/// location order. A run of adjacent locations holding the same type becomes one
/// or more shops of size small (1), medium (2) or large (3 locations).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <pga/core/genome.hpp>

namespace pga::mall {

enum SizeClass : std::size_t { kSmall = 0, kMedium = 1, kLarge = 2 };
inline constexpr std::size_t kSizeClasses = 3;

struct TypeSpec {
    int min_count = 0;
    int ideal_count = 0;
    int max_count = 0;
    /// count_rent at the ideal count.
    double count_peak = 0.0;
    /// count_rent drop per shop away from the ideal count.
    double count_slope = 0.0;
    /// Bit g set when the type belongs to group g.
    std::uint32_t groups = 0;

    friend bool operator==(const TypeSpec&, const TypeSpec&) = default;
};

struct MallInstance {
    std::size_t areas = 5;
    std::size_t group_count = 1;
    std::vector<std::size_t> area_of;
    std::vector<TypeSpec> types;
    /// areas x types, row-major by area.
    std::vector<double> attract;
    /// types x areas, row-major by type.
    std::vector<double> fixed_rent;
    std::array<double, kSizeClasses> size_rent{};
    /// Bonus per adjacent pair of shops sharing at least one group.
    double synergy = 0.0;
    /// Mall-wide maximum number of small, medium and large shops.
    std::array<int, kSizeClasses> size_limits{};

    /// Derived: ascending locations of each area.
    std::vector<std::vector<std::size_t>> area_locations;

    [[nodiscard]] std::size_t locations() const noexcept { return area_of.size(); }
    [[nodiscard]] std::size_t type_count() const noexcept { return types.size(); }
    [[nodiscard]] double attract_at(std::size_t area, std::size_t type) const {
        return attract[area * type_count() + type];
    }
    [[nodiscard]] double fixed_at(std::size_t type, std::size_t area) const {
        return fixed_rent[type * areas + area];
    }

    friend bool operator==(const MallInstance& a, const MallInstance& b) {
        return a.areas == b.areas && a.group_count == b.group_count && a.area_of == b.area_of &&
               a.types == b.types && a.attract == b.attract && a.fixed_rent == b.fixed_rent &&
               a.size_rent == b.size_rent && a.synergy == b.synergy && a.size_limits == b.size_limits;
    }
};

/// Validate invariants and derive the per-area location lists.
inline void finalize(MallInstance& inst) {
    const std::size_t T = inst.type_count();
    if (inst.areas == 0 || T == 0 || inst.locations() == 0) {
        throw std::invalid_argument("mall instance is empty");
    }
    if (inst.attract.size() != inst.areas * T || inst.fixed_rent.size() != T * inst.areas) {
        throw std::invalid_argument("mall rent tables have wrong dimensions");
    }
    if (inst.group_count == 0 || inst.group_count > 32) {
        throw std::invalid_argument("group count out of range");
    }
    for (const auto& t : inst.types) {
        if (!(t.min_count <= t.ideal_count && t.ideal_count <= t.max_count) || t.min_count < 0) {
            throw std::invalid_argument("type counts must satisfy 0 <= min <= ideal <= max");
        }
        if ((static_cast<std::uint64_t>(t.groups) >> inst.group_count) != 0) {
            throw std::invalid_argument("type references an unknown group");
        }
    }
    auto finite = [](double v) { return std::isfinite(v); };
    if (!std::all_of(inst.attract.begin(), inst.attract.end(), finite) ||
        !std::all_of(inst.fixed_rent.begin(), inst.fixed_rent.end(), finite) ||
        !std::all_of(inst.size_rent.begin(), inst.size_rent.end(), finite) || !std::isfinite(inst.synergy)) {
        throw std::invalid_argument("rent tables must be finite");
    }
    for (const auto& t : inst.types) {
        if (!std::isfinite(t.count_peak) || !std::isfinite(t.count_slope)) {
            throw std::invalid_argument("rent tables must be finite");
        }
    }
    inst.area_locations.assign(inst.areas, {});
    for (std::size_t l = 0; l < inst.locations(); ++l) {
        if (inst.area_of[l] >= inst.areas) {
            throw std::invalid_argument("location in unknown area");
        }
        inst.area_locations[inst.area_of[l]].push_back(l);
    }
}

} // namespace pga::mall
