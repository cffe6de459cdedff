#pragma once

/// @file rent.hpp
/// @brief Size decomposition, full rent and area sub-fitness of a mall layout.
///
/// rent = sum over shops of (fixed rent + area attractiveness * size rent)
///      + synergy per adjacent shop pair sharing a group
///      + sum over types of count_rent(number of shops of that type)
/// violation = shortfall/excess of type counts against (min, max)
///           + excess of small/medium/large totals over the mall-wide limits.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdlib>
#include <span>
#include <stdexcept>
#include <vector>

#include <pga/core/genome.hpp>
#include <pga/mall/instance.hpp>

namespace pga::mall {

struct SizeCounts {
    int small = 0;
    int medium = 0;
    int large = 0;

    [[nodiscard]] int shops() const noexcept { return small + medium + large; }
    SizeCounts& operator+=(const SizeCounts& o) noexcept {
        small += o.small;
        medium += o.medium;
        large += o.large;
        return *this;
    }
    friend bool operator==(const SizeCounts&, const SizeCounts&) = default;
};

/// Greedy split of a run: as many larges as fit, then one medium or one small.
[[nodiscard]] constexpr SizeCounts decompose_run(int length) noexcept {
    if (length <= 0) {
        return {};
    }
    SizeCounts c;
    c.large = length / 3;
    switch (length % 3) {
    case 2:
        c.medium = 1;
        break;
    case 1:
        c.small = 1;
        break;
    default:
        break;
    }
    return c;
}

struct SizeDecomposition {
    std::size_t types = 0;
    /// areas x types, row-major by area.
    std::vector<SizeCounts> counts;

    [[nodiscard]] const SizeCounts& at(std::size_t area, std::size_t type) const { return counts[area * types + type]; }
};

struct RentBreakdown {
    double rent = 0.0;
    double violation = 0.0;
    bool feasible = true;
    /// rent - w * violation
    double objective = 0.0;
};

namespace detail {

struct Shop {
    Gene type;
    SizeClass size;
};

/// Shops of one area in adjacency order; `genes` are the area's locations in order.
template <typename Visit>
void for_each_shop(std::span<const Gene> genes, Visit&& visit) {
    std::size_t pos = 0;
    while (pos < genes.size()) {
        std::size_t end = pos + 1;
        while (end < genes.size() && genes[end] == genes[pos]) {
            ++end;
        }
        const auto c = decompose_run(static_cast<int>(end - pos));
        for (int i = 0; i < c.large; ++i) {
            visit(Shop{genes[pos], kLarge});
        }
        if (c.medium > 0) {
            visit(Shop{genes[pos], kMedium});
        }
        if (c.small > 0) {
            visit(Shop{genes[pos], kSmall});
        }
        pos = end;
    }
}

struct AreaTally {
    double rent = 0.0;
    std::array<int, kSizeClasses> sizes{};
};

/// Local rent of one area and its shop tally; `per_type` receives shop counts.
inline AreaTally tally_area(const MallInstance& inst, std::size_t area, std::span<const Gene> genes,
                            std::vector<int>& per_type) {
    AreaTally t;
    bool has_prev = false;
    Gene prev = 0;
    for_each_shop(genes, [&](const Shop& s) {
        if (s.type >= inst.type_count()) {
            throw std::invalid_argument("invalid shop type");
        }
        t.rent += inst.fixed_at(s.type, area) + inst.attract_at(area, s.type) * inst.size_rent[s.size];
        if (has_prev && (inst.types[prev].groups & inst.types[s.type].groups) != 0) {
            t.rent += inst.synergy;
        }
        ++t.sizes[s.size];
        ++per_type[s.type];
        prev = s.type;
        has_prev = true;
    });
    return t;
}

inline void gather(std::span<const Gene> layout, std::span<const std::size_t> locations, std::vector<Gene>& out) {
    out.resize(locations.size());
    for (std::size_t i = 0; i < locations.size(); ++i) {
        out[i] = layout[locations[i]];
    }
}

} // namespace detail

/// Piecewise-linear rent for holding `count` shops of one type: peak at the
/// ideal count, falling by `count_slope` per shop away from it, zero outside
/// [max(min, 1), max].
[[nodiscard]] inline double count_rent(const TypeSpec& t, int count) noexcept {
    if (count <= 0 || count < t.min_count || count > t.max_count) {
        return 0.0;
    }
    return std::max(0.0, t.count_peak - t.count_slope * std::abs(count - t.ideal_count));
}

[[nodiscard]] inline SizeDecomposition decompose_sizes(const MallInstance& inst, std::span<const Gene> layout) {
    if (layout.size() != inst.locations()) {
        throw std::invalid_argument("layout length does not match location count");
    }
    SizeDecomposition d;
    d.types = inst.type_count();
    d.counts.assign(inst.areas * d.types, {});
    std::vector<Gene> genes;
    for (std::size_t a = 0; a < inst.areas; ++a) {
        detail::gather(layout, inst.area_locations[a], genes);
        detail::for_each_shop(genes, [&](const detail::Shop& s) {
            auto& c = d.counts[a * d.types + s.type];
            if (s.size == kLarge) {
                ++c.large;
            } else if (s.size == kMedium) {
                ++c.medium;
            } else {
                ++c.small;
            }
        });
    }
    return d;
}

/// Rent (maximisation) and violation of a full layout; `layout[l]` is the type at location l.
[[nodiscard]] inline RentBreakdown full_rent(const MallInstance& inst, std::span<const Gene> layout, double w) {
    if (layout.size() != inst.locations()) {
        throw std::invalid_argument("layout length does not match location count");
    }
    std::vector<int> per_type(inst.type_count(), 0);
    std::array<int, kSizeClasses> sizes{};
    double rent = 0.0;
    std::vector<Gene> genes;
    for (std::size_t a = 0; a < inst.areas; ++a) {
        detail::gather(layout, inst.area_locations[a], genes);
        const auto t = detail::tally_area(inst, a, genes, per_type);
        rent += t.rent;
        for (std::size_t s = 0; s < kSizeClasses; ++s) {
            sizes[s] += t.sizes[s];
        }
    }
    double violation = 0.0;
    for (std::size_t ty = 0; ty < inst.type_count(); ++ty) {
        const auto& spec = inst.types[ty];
        rent += count_rent(spec, per_type[ty]);
        violation += std::max(spec.min_count - per_type[ty], 0) + std::max(per_type[ty] - spec.max_count, 0);
    }
    for (std::size_t s = 0; s < kSizeClasses; ++s) {
        violation += std::max(sizes[s] - inst.size_limits[s], 0);
    }
    RentBreakdown r;
    r.rent = rent;
    r.violation = violation;
    r.feasible = violation == 0.0;
    r.objective = rent - w * violation;
    return r;
}

/// Area-local rent and violation of one area's genes (ascending location order).
///
/// Counts only terms decidable inside the area: shop rents and synergy, plus
/// type counts and size totals that already exceed their mall-wide maxima.
[[nodiscard]] inline Evaluation area_evaluation(const MallInstance& inst, std::size_t area,
                                                std::span<const Gene> partial) {
    if (area >= inst.areas || partial.size() != inst.area_locations[area].size()) {
        throw std::invalid_argument("wrong length");
    }
    std::vector<int> per_type(inst.type_count(), 0);
    const auto t = detail::tally_area(inst, area, partial, per_type);
    double violation = 0.0;
    for (std::size_t ty = 0; ty < inst.type_count(); ++ty) {
        violation += std::max(per_type[ty] - inst.types[ty].max_count, 0);
    }
    for (std::size_t s = 0; s < kSizeClasses; ++s) {
        violation += std::max(t.sizes[s] - inst.size_limits[s], 0);
    }
    return {-t.rent, violation};
}

/// Penalised area rent (maximisation orientation).
[[nodiscard]] inline double area_sub_fitness(const MallInstance& inst, std::size_t area,
                                             std::span<const Gene> partial, double w) {
    const auto e = area_evaluation(inst, area, partial);
    return -e.raw - w * e.violation;
}

/// Internal minimisation view of full_rent.
[[nodiscard]] inline Evaluation evaluate_full(const MallInstance& inst, std::span<const Gene> layout) {
    const auto r = full_rent(inst, layout, 0.0);
    return {-r.rent, r.violation};
}

} // namespace pga::mall
