#pragma once

/// @file generate.hpp
/// @brief Seeded synthetic nurse and mall instances with a planted feasible solution.
///
/// Both generators first build a solution and then derive the constraints from
/// it, loosened by a tier-dependent slack, so every generated instance is feasible.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <pga/core/random.hpp>
#include <pga/mall/instance.hpp>
#include <pga/mall/rent.hpp>
#include <pga/nurse/instance.hpp>

namespace pga::harness {

enum class Tier { loose, medium, tight };

[[nodiscard]] constexpr std::string_view to_string(Tier t) noexcept {
    switch (t) {
    case Tier::loose:
        return "loose";
    case Tier::medium:
        return "medium";
    case Tier::tight:
        return "tight";
    }
    return "?";
}

[[nodiscard]] inline Tier parse_tier(std::string_view s) {
    for (Tier t : {Tier::loose, Tier::medium, Tier::tight}) {
        if (to_string(t) == s) {
            return t;
        }
    }
    throw std::invalid_argument("unknown tier '" + std::string(s) + "'");
}

// ---------------------------------------------------------------- nurse

struct NurseGenParams {
    std::size_t nurses = 30;
    /// Relative share of grades 1, 2, 3.
    std::array<double, 3> grade_mix{0.2, 0.3, 0.5};
    Tier tier = Tier::tight;
    /// Share of nurses working nights in the planted roster.
    double night_share = 0.35;
    /// Share of nurses preferring days; the rest prefer nights.
    double day_lovers = 0.8;
    /// Cost added to every pattern of the non-preferred kind.
    int aversion = 30;
    /// Shape b of the Beta(1, b) preference-cost draw; larger means a stronger bias to low costs.
    double cost_bias = 4.0;
    /// Include combined day/night patterns in the universe.
    bool combined = false;
    /// Keep at most this many combined patterns per contract class; 0 keeps all.
    std::size_t combined_per_class = 0;
    /// Keep at most this many patterns per (kind, shift count) class; 0 keeps all.
    std::size_t patterns_per_class = 0;
    /// Planted patterns are drawn from each nurse's this-many cheapest of the wanted kind; 0 draws from all.
    std::size_t planted_pick = 4;
    /// Probability that a demand cell is loosened below the planted supply; negative uses the tier default.
    double slack_prob = -1.0;

    void validate() const {
        if (nurses == 0) {
            throw std::invalid_argument("nurse count must be positive");
        }
        if (std::any_of(grade_mix.begin(), grade_mix.end(), [](double v) { return !(v >= 0.0); }) ||
            grade_mix[0] + grade_mix[1] + grade_mix[2] <= 0.0) {
            throw std::invalid_argument("grade mix must be non-negative with a positive sum");
        }
        if (!(night_share >= 0.0 && night_share <= 1.0) || !(day_lovers >= 0.0 && day_lovers <= 1.0)) {
            throw std::invalid_argument("shares must lie in [0,1]");
        }
        if (slack_prob > 1.0) {
            throw std::invalid_argument("slack probability must not exceed 1");
        }
        if (aversion < 0 || aversion > 100 || !(cost_bias > 0.0)) {
            throw std::invalid_argument("aversion must lie in [0,100] and cost bias be positive");
        }
    }
};

/// Contract classes: (D, N, B) shifts for day, night and combined patterns.
inline constexpr std::array<nurse::Contract, 3> kContractClasses{{{5, 4, 5}, {4, 3, 4}, {3, 2, 3}}};

namespace detail {

inline std::vector<std::uint16_t> masks_with_bits(int bits) {
    std::vector<std::uint16_t> out;
    for (unsigned m = 0; m < (1U << nurse::kDays); ++m) {
        if (std::popcount(m) == bits) {
            out.push_back(static_cast<std::uint16_t>(m));
        }
    }
    return out;
}

/// Grade counts from the mix by largest remainder; each grade with a positive
/// share gets at least one nurse when there are enough nurses.
inline std::array<std::size_t, 3> grade_counts(std::size_t n, const std::array<double, 3>& mix) {
    const double total = mix[0] + mix[1] + mix[2];
    std::array<std::size_t, 3> c{};
    std::array<double, 3> rem{};
    std::size_t used = 0;
    for (std::size_t s = 0; s < 3; ++s) {
        const double exact = static_cast<double>(n) * mix[s] / total;
        c[s] = static_cast<std::size_t>(std::floor(exact));
        rem[s] = exact - static_cast<double>(c[s]);
        used += c[s];
    }
    while (used < n) {
        const auto s = static_cast<std::size_t>(std::max_element(rem.begin(), rem.end()) - rem.begin());
        ++c[s];
        rem[s] = -1.0;
        ++used;
    }
    for (std::size_t s = 0; s < 3; ++s) {
        if (c[s] == 0 && mix[s] > 0.0) {
            const auto donor = static_cast<std::size_t>(std::max_element(c.begin(), c.end()) - c.begin());
            if (c[donor] > 1) {
                --c[donor];
                ++c[s];
            }
        }
    }
    return c;
}

} // namespace detail

[[nodiscard]] inline nurse::NurseInstance generate_nurse_instance(const NurseGenParams& params, std::uint64_t seed) {
    using namespace pga::nurse;
    params.validate();
    Rng rng(derive_seed({seed, 0x6e75727365ULL}));
    NurseInstance inst;
    inst.grades = 3;

    // Pattern universe, grouped by (kind, shift count).
    for (const auto& cc : kContractClasses) {
        auto days = detail::masks_with_bits(cc.day_shifts);
        auto nights = detail::masks_with_bits(cc.night_shifts);
        for (auto* set : {&days, &nights}) {
            if (params.patterns_per_class > 0 && set->size() > params.patterns_per_class) {
                std::shuffle(set->begin(), set->end(), rng);
                set->resize(params.patterns_per_class);
                std::sort(set->begin(), set->end());
            }
        }
        for (auto m : days) {
            inst.patterns.push_back({m, PatternKind::day});
        }
        for (auto m : nights) {
            inst.patterns.push_back({static_cast<std::uint16_t>(m << kDays), PatternKind::night});
        }
    }
    if (params.combined) {
        for (const auto& cc : kContractClasses) {
            std::vector<std::uint16_t> masks;
            for (unsigned m = 0; m < (1U << kPeriods); ++m) {
                if (std::popcount(m) == cc.combined_shifts && (m & 0x7FU) != 0 && (m >> kDays) != 0) {
                    masks.push_back(static_cast<std::uint16_t>(m));
                }
            }
            if (params.combined_per_class > 0 && masks.size() > params.combined_per_class) {
                std::shuffle(masks.begin(), masks.end(), rng);
                masks.resize(params.combined_per_class);
                std::sort(masks.begin(), masks.end());
            }
            for (auto m : masks) {
                inst.patterns.push_back({m, PatternKind::combined});
            }
        }
    }

    const auto counts = detail::grade_counts(params.nurses, params.grade_mix);
    for (int s = 1; s <= 3; ++s) {
        inst.grade_of.insert(inst.grade_of.end(), counts[static_cast<std::size_t>(s - 1)], s);
    }
    std::shuffle(inst.grade_of.begin(), inst.grade_of.end(), rng);
    const std::size_t n = params.nurses;
    const std::size_t m = inst.m();
    for (std::size_t i = 0; i < n; ++i) {
        // mostly full time
        const double u = uniform_unit(rng);
        inst.contracts.push_back(kContractClasses[u < 0.6 ? 0 : (u < 0.85 ? 1 : 2)]);
    }

    // Right-skewed costs: floor(100 * Beta(1, b)) by inverse CDF, plus a kind aversion.
    inst.pref_cost.assign(n * m, 0);
    std::vector<bool> prefers_days(n);
    for (std::size_t i = 0; i < n; ++i) {
        prefers_days[i] = bernoulli(rng, params.day_lovers);
        for (std::size_t j = 0; j < m; ++j) {
            const double x = 1.0 - std::pow(1.0 - uniform_unit(rng), 1.0 / params.cost_bias);
            int c = std::min(99, static_cast<int>(std::floor(100.0 * x)));
            const auto kind = inst.patterns[j].kind;
            const bool disliked = kind == PatternKind::combined ||
                                  (kind == PatternKind::night) == prefers_days[i];
            if (disliked) {
                c = std::min(100, c + params.aversion);
            }
            inst.pref_cost[i * m + j] = c;
        }
    }
    inst.demand.assign(kPeriods * 3, 0);
    finalize(inst);

    // Planted roster: night lovers fill the night share first, then day lovers are
    // drafted onto nights; each nurse takes one of its cheapest patterns of that kind.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    std::stable_partition(order.begin(), order.end(), [&](std::size_t i) { return !prefers_days[i]; });
    const auto night_workers = static_cast<std::size_t>(std::lround(params.night_share * static_cast<double>(n)));
    std::array<std::array<int, 3>, kPeriods> exact{};
    for (std::size_t r = 0; r < n; ++r) {
        const std::size_t i = order[r];
        const PatternKind want = r < night_workers ? PatternKind::night : PatternKind::day;
        std::vector<Gene> options;
        for (Gene j : inst.feasible_sets[i]) {
            if (inst.patterns[j].kind == want) {
                options.push_back(j);
            }
        }
        if (options.empty()) {
            options = inst.feasible_sets[i];
        }
        std::stable_sort(options.begin(), options.end(),
                         [&](Gene a, Gene b) { return inst.cost(i, a) < inst.cost(i, b); });
        if (params.planted_pick > 0 && options.size() > params.planted_pick) {
            options.resize(params.planted_pick);
        }
        const Gene j = options[uniform_index(rng, options.size())];
        for (std::size_t k = 0; k < kPeriods; ++k) {
            if (inst.patterns[j].covers(k)) {
                ++exact[k][static_cast<std::size_t>(inst.grade_of[i] - 1)];
            }
        }
    }
    // Demand = cumulative planted supply minus slack on the grade-specific counts.
    const int max_slack = params.tier == Tier::loose ? 2 : 1;
    const double slack_prob = params.slack_prob >= 0.0 ? params.slack_prob
                              : params.tier == Tier::loose ? 0.6
                              : params.tier == Tier::medium ? 0.4
                                                            : 0.15;
    for (std::size_t k = 0; k < kPeriods; ++k) {
        int cumulative = 0;
        for (std::size_t s = 0; s < 3; ++s) {
            int d = exact[k][s];
            if (d > 0 && bernoulli(rng, slack_prob)) {
                d -= 1 + static_cast<int>(uniform_index(rng, static_cast<std::size_t>(max_slack)));
            }
            cumulative += std::max(d, 0);
            inst.demand[k * 3 + s] = cumulative;
        }
    }
    return inst;
}

// ---------------------------------------------------------------- mall

struct MallGenParams {
    std::size_t areas = 5;
    std::size_t locations_per_area = 20;
    /// Shop-type count; 0 draws uniformly from [20, 50].
    std::size_t types = 0;
    std::size_t groups = 6;
    Tier tier = Tier::medium;

    void validate() const {
        if (areas == 0 || locations_per_area == 0) {
            throw std::invalid_argument("mall needs at least one area and location");
        }
        if (groups == 0 || groups > 32) {
            throw std::invalid_argument("group count must lie in [1,32]");
        }
    }
};

namespace detail {

/// Multiple of 1/16 drawn uniformly from [lo, hi]; exact in binary floating point.
inline double dyadic(Rng& rng, double lo, double hi) {
    const auto a = static_cast<std::size_t>(std::ceil(lo * 16.0));
    const auto b = static_cast<std::size_t>(std::floor(hi * 16.0));
    return static_cast<double>(a + uniform_index(rng, b - a + 1)) / 16.0;
}

} // namespace detail

[[nodiscard]] inline mall::MallInstance generate_mall_instance(const MallGenParams& params, std::uint64_t seed) {
    using namespace pga::mall;
    params.validate();
    Rng rng(derive_seed({seed, 0x6d616c6cULL}));
    MallInstance inst;
    inst.areas = params.areas;
    inst.group_count = params.groups;
    const std::size_t T = params.types > 0 ? params.types : 20 + uniform_index(rng, 31);
    const std::size_t L = params.areas * params.locations_per_area;
    for (std::size_t l = 0; l < L; ++l) {
        inst.area_of.push_back(l / params.locations_per_area);
    }
    inst.types.resize(T);
    for (auto& t : inst.types) {
        t.groups = 1U << uniform_index(rng, params.groups);
        if (bernoulli(rng, 0.3)) {
            t.groups |= 1U << uniform_index(rng, params.groups);
        }
    }
    inst.attract.resize(params.areas * T);
    for (auto& v : inst.attract) {
        v = detail::dyadic(rng, 0.5, 2.0);
    }
    inst.fixed_rent.resize(T * params.areas);
    for (auto& v : inst.fixed_rent) {
        v = detail::dyadic(rng, 1.0, 8.0);
    }
    inst.size_rent = {2.0, 5.0, 9.0};
    inst.synergy = 1.0;

    // Planted layout: random runs of a random type per area.
    std::vector<Gene> planted(L);
    for (std::size_t a = 0; a < params.areas; ++a) {
        std::size_t pos = 0;
        while (pos < params.locations_per_area) {
            const std::size_t len =
                std::min(params.locations_per_area - pos, std::size_t{1} + uniform_index(rng, 4));
            const auto type = static_cast<Gene>(uniform_index(rng, T));
            for (std::size_t q = 0; q < len; ++q) {
                planted[a * params.locations_per_area + pos + q] = type;
            }
            pos += len;
        }
    }
    // Type bounds and size limits around the planted counts.
    inst.size_limits = {static_cast<int>(L), static_cast<int>(L), static_cast<int>(L)};
    finalize(inst);
    const auto dec = decompose_sizes(inst, planted);
    std::vector<int> per_type(T, 0);
    std::array<int, kSizeClasses> sizes{};
    for (std::size_t a = 0; a < params.areas; ++a) {
        for (std::size_t t = 0; t < T; ++t) {
            const auto& c = dec.at(a, t);
            per_type[t] += c.shops();
            sizes[kSmall] += c.small;
            sizes[kMedium] += c.medium;
            sizes[kLarge] += c.large;
        }
    }
    const int spread = params.tier == Tier::loose ? 3 : params.tier == Tier::medium ? 2 : 1;
    for (std::size_t t = 0; t < T; ++t) {
        auto& spec = inst.types[t];
        const int c = per_type[t];
        spec.min_count = std::max(0, c - static_cast<int>(uniform_index(rng, static_cast<std::size_t>(spread) + 1)));
        spec.max_count = c + static_cast<int>(uniform_index(rng, static_cast<std::size_t>(spread) + 1));
        spec.ideal_count = spec.min_count + static_cast<int>(uniform_index(
                                                rng, static_cast<std::size_t>(spec.max_count - spec.min_count) + 1));
        spec.count_peak = detail::dyadic(rng, 4.0, 16.0);
        spec.count_slope = spec.count_peak / 4.0;
    }
    for (std::size_t s = 0; s < kSizeClasses; ++s) {
        inst.size_limits[s] = sizes[s] + static_cast<int>(uniform_index(rng, static_cast<std::size_t>(spread) + 1));
    }
    finalize(inst);
    return inst;
}

} // namespace pga::harness
