#pragma once

// Independent mall rent recomputation and exhaustive search.
//
// Follows the rent model as stated (shop rents, attractiveness times size rent,
// group synergy between neighbouring shops, piecewise-linear count rent,
// count and size-limit violations) using only the instance data.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include <pga/mall/instance.hpp>

namespace pga_oracle {

using pga::mall::MallInstance;

struct OracleShop {
    std::uint32_t type;
    int size; // locations occupied: 1, 2 or 3
};

/// Greedy split of a run into shops, largest first.
inline std::vector<int> split_run(int length) {
    std::vector<int> sizes;
    while (length >= 3) {
        sizes.push_back(3);
        length -= 3;
    }
    if (length > 0) {
        sizes.push_back(length);
    }
    return sizes;
}

struct MallValue {
    double rent = 0.0;
    double violation = 0.0;
    int small = 0;
    int medium = 0;
    int large = 0;
};

inline double oracle_count_rent(const pga::mall::TypeSpec& t, int count) {
    if (count == 0 || count < t.min_count || count > t.max_count) {
        return 0.0;
    }
    const double v = t.count_peak - t.count_slope * std::fabs(static_cast<double>(count - t.ideal_count));
    return v > 0.0 ? v : 0.0;
}

inline MallValue recompute_rent(const MallInstance& inst, const std::vector<std::uint32_t>& layout) {
    if (layout.size() != inst.area_of.size()) {
        throw std::invalid_argument("wrong length");
    }
    const std::size_t T = inst.types.size();
    MallValue v;
    std::vector<int> count(T, 0);
    for (std::size_t area = 0; area < inst.areas; ++area) {
        std::vector<std::uint32_t> seq;
        for (std::size_t l = 0; l < layout.size(); ++l) {
            if (inst.area_of[l] == area) {
                if (layout[l] >= T) {
                    throw std::invalid_argument("invalid shop type");
                }
                seq.push_back(layout[l]);
            }
        }
        std::vector<OracleShop> shops;
        std::size_t start = 0;
        for (std::size_t p = 1; p <= seq.size(); ++p) {
            if (p == seq.size() || seq[p] != seq[start]) {
                for (int size : split_run(static_cast<int>(p - start))) {
                    shops.push_back({seq[start], size});
                }
                start = p;
            }
        }
        for (std::size_t s = 0; s < shops.size(); ++s) {
            const auto type = shops[s].type;
            const double size_rent = inst.size_rent[static_cast<std::size_t>(shops[s].size - 1)];
            v.rent += inst.fixed_rent[type * inst.areas + area];
            v.rent += inst.attract[area * T + type] * size_rent;
            if (s > 0 && (inst.types[shops[s - 1].type].groups & inst.types[type].groups) != 0) {
                v.rent += inst.synergy;
            }
            count[type] += 1;
            if (shops[s].size == 1) {
                ++v.small;
            } else if (shops[s].size == 2) {
                ++v.medium;
            } else {
                ++v.large;
            }
        }
    }
    for (std::size_t t = 0; t < T; ++t) {
        v.rent += oracle_count_rent(inst.types[t], count[t]);
        if (count[t] < inst.types[t].min_count) {
            v.violation += inst.types[t].min_count - count[t];
        }
        if (count[t] > inst.types[t].max_count) {
            v.violation += count[t] - inst.types[t].max_count;
        }
    }
    const int totals[3] = {v.small, v.medium, v.large};
    for (std::size_t s = 0; s < 3; ++s) {
        if (totals[s] > inst.size_limits[s]) {
            v.violation += totals[s] - inst.size_limits[s];
        }
    }
    return v;
}

struct MallOptimum {
    std::optional<std::vector<std::uint32_t>> best;
    double best_rent = 0.0;
    std::size_t evaluated = 0;
};

/// Best-rent feasible layout among all T^L layouts (T^L <= limit); first found wins ties.
inline MallOptimum brute_force_mall(const MallInstance& inst, std::size_t limit = 1000000) {
    const std::size_t T = inst.types.size();
    const std::size_t L = inst.area_of.size();
    std::size_t space = 1;
    for (std::size_t l = 0; l < L; ++l) {
        if (T == 0 || space > limit / T) {
            throw std::invalid_argument("search space too large");
        }
        space *= T;
    }
    MallOptimum out;
    std::vector<std::uint32_t> x(L, 0);
    for (std::size_t t = 0; t < space; ++t) {
        const auto v = recompute_rent(inst, x);
        ++out.evaluated;
        if (v.violation == 0.0 && (!out.best || v.rent > out.best_rent)) {
            out.best = x;
            out.best_rent = v.rent;
        }
        for (std::size_t l = 0; l < L; ++l) {
            if (++x[l] < T) {
                break;
            }
            x[l] = 0;
        }
    }
    return out;
}

} // namespace pga_oracle
