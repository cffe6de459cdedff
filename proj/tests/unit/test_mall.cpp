#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>
#include <vector>

#include <pga/harness/generate.hpp>
#include <pga/mall/io.hpp>
#include <pga/mall/problem.hpp>
#include <pga/mall/rent.hpp>
#include <pga_oracle/mall_oracle.hpp>

#include "fixtures.hpp"

using namespace pga;
using namespace pga::mall;

namespace {

std::vector<Gene> random_layout(const MallInstance& inst, Rng& rng) {
    std::vector<Gene> x(inst.locations());
    for (auto& g : x) {
        g = static_cast<Gene>(uniform_index(rng, inst.type_count()));
    }
    return x;
}

/// Layouts with long runs so that every size class shows up.
std::vector<Gene> runny_layout(const MallInstance& inst, Rng& rng) {
    std::vector<Gene> x(inst.locations());
    std::size_t pos = 0;
    while (pos < x.size()) {
        const std::size_t len = 1 + uniform_index(rng, 7);
        const auto t = static_cast<Gene>(uniform_index(rng, inst.type_count()));
        for (std::size_t q = 0; q < len && pos < x.size(); ++q, ++pos) {
            x[pos] = t;
        }
    }
    return x;
}

SizeCounts run_in_first_area(int length) {
    auto inst = fixtures::blank_mall(1, 20, 2);
    finalize(inst);
    std::vector<Gene> x(20, 1);
    std::fill(x.begin(), x.begin() + length, Gene{0});
    return decompose_sizes(inst, x).at(0, 0);
}

} // namespace

TEST(DecomposeRun, GreedyExamples) {
    EXPECT_EQ(decompose_run(5), (SizeCounts{0, 1, 1}));
    EXPECT_EQ(decompose_run(1), (SizeCounts{1, 0, 0}));
    EXPECT_EQ(decompose_run(4), (SizeCounts{1, 0, 1}));
    EXPECT_EQ(decompose_run(7), (SizeCounts{1, 0, 2}));
    EXPECT_EQ(decompose_run(0), (SizeCounts{}));
}

TEST(DecomposeSizes, RunsInsideAnArea) {
    EXPECT_EQ(run_in_first_area(5), (SizeCounts{0, 1, 1}));
    EXPECT_EQ(run_in_first_area(1), (SizeCounts{1, 0, 0}));
    EXPECT_EQ(run_in_first_area(4), (SizeCounts{1, 0, 1}));
    EXPECT_EQ(run_in_first_area(7), (SizeCounts{1, 0, 2}));
}

TEST(DecomposeSizes, RunsStopAtAreaBoundaries) {
    auto inst = fixtures::blank_mall(2, 20, 3);
    finalize(inst);
    std::vector<Gene> x(40, 0); // one type everywhere: two separate runs of 20
    const auto d = decompose_sizes(inst, x);
    EXPECT_EQ(d.at(0, 0), (SizeCounts{0, 1, 6}));
    EXPECT_EQ(d.at(1, 0), (SizeCounts{0, 1, 6}));
}

TEST(DecomposeSizes, AccountsForEveryLocation) {
    const auto inst = harness::generate_mall_instance({}, 1);
    Rng rng(1);
    for (int t = 0; t < 100; ++t) {
        const auto d = decompose_sizes(inst, runny_layout(inst, rng));
        int covered = 0;
        for (const auto& c : d.counts) {
            covered += c.small + 2 * c.medium + 3 * c.large;
        }
        EXPECT_EQ(covered, 100);
    }
}

TEST(FullRent, FixedRentOnlySingletons) {
    auto inst = fixtures::blank_mall(5, 20, 100);
    std::fill(inst.fixed_rent.begin(), inst.fixed_rent.end(), 1.0);
    finalize(inst);
    std::vector<Gene> x(100);
    for (std::size_t l = 0; l < 100; ++l) {
        x[l] = static_cast<Gene>(l);
    }
    const auto r = full_rent(inst, x, 1.0);
    EXPECT_DOUBLE_EQ(r.rent, 100.0);
    EXPECT_TRUE(r.feasible);
}

TEST(FullRent, SingleTypeFillingAnAreaMatchesOracle) {
    auto inst = harness::generate_mall_instance({}, 2);
    Rng rng(2);
    auto x = random_layout(inst, rng);
    std::fill(x.begin() + 40, x.begin() + 60, Gene{3});
    const auto d = decompose_sizes(inst, x);
    EXPECT_EQ(d.at(2, 3), (SizeCounts{0, 1, 6}));
    const auto v = pga_oracle::recompute_rent(inst, x);
    const auto r = full_rent(inst, x, 0.0);
    EXPECT_DOUBLE_EQ(r.rent, v.rent);
    EXPECT_DOUBLE_EQ(r.violation, v.violation);
}

TEST(FullRent, BelowMinimumIsInfeasible) {
    auto inst = fixtures::blank_mall(1, 4, 2);
    inst.types[1].min_count = 1;
    inst.types[1].ideal_count = 1;
    finalize(inst);
    const std::vector<Gene> x(4, 0);
    const auto r = full_rent(inst, x, 2.0);
    EXPECT_FALSE(r.feasible);
    EXPECT_DOUBLE_EQ(r.violation, 1.0);
    EXPECT_DOUBLE_EQ(r.objective, r.rent - 2.0);
}

TEST(FullRent, SizeLimitsCount) {
    auto inst = fixtures::blank_mall(1, 6, 6);
    inst.size_limits = {2, 6, 6};
    finalize(inst);
    const std::vector<Gene> x{0, 1, 2, 3, 4, 5};
    EXPECT_DOUBLE_EQ(full_rent(inst, x, 1.0).violation, 4.0);
}

TEST(FullRent, SynergyOncePerAdjacentPair) {
    auto inst = fixtures::blank_mall(1, 3, 3);
    inst.synergy = 2.0;
    inst.group_count = 2;
    inst.types[0].groups = 1;
    inst.types[1].groups = 3;
    inst.types[2].groups = 2;
    finalize(inst);
    const std::vector<Gene> x{0, 1, 2};
    EXPECT_DOUBLE_EQ(full_rent(inst, x, 0.0).rent, 4.0);
    const std::vector<Gene> y{0, 2, 1};
    EXPECT_DOUBLE_EQ(full_rent(inst, y, 0.0).rent, 2.0);
}

TEST(FullRent, MatchesOracleOnRandomLayouts) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const auto inst = harness::generate_mall_instance({}, seed);
        Rng rng(seed);
        for (int t = 0; t < 500; ++t) {
            const auto x = t % 2 == 0 ? random_layout(inst, rng) : runny_layout(inst, rng);
            const auto r = full_rent(inst, x, 0.0);
            const auto v = pga_oracle::recompute_rent(inst, x);
            ASSERT_EQ(r.rent, v.rent);
            ASSERT_EQ(r.violation, v.violation);
        }
    }
}

TEST(CountRent, PiecewiseLinear) {
    const TypeSpec t{2, 4, 6, 8.0, 2.0, 1};
    EXPECT_DOUBLE_EQ(count_rent(t, 4), 8.0);
    EXPECT_DOUBLE_EQ(count_rent(t, 3), 6.0);
    EXPECT_DOUBLE_EQ(count_rent(t, 6), 4.0);
    EXPECT_DOUBLE_EQ(count_rent(t, 1), 0.0);
    EXPECT_DOUBLE_EQ(count_rent(t, 7), 0.0);
}

TEST(AreaSubFitness, DistinctTypesAreSmallShops) {
    auto inst = fixtures::blank_mall(5, 20, 20);
    inst.size_rent = {1.0, 10.0, 100.0};
    std::fill(inst.attract.begin(), inst.attract.end(), 1.0);
    finalize(inst);
    std::vector<Gene> area(20);
    for (std::size_t i = 0; i < 20; ++i) {
        area[i] = static_cast<Gene>(i);
    }
    EXPECT_DOUBLE_EQ(area_sub_fitness(inst, 0, area, 1.0), 20.0);
}

TEST(AreaSubFitness, AreasSumToFullRentWithoutGlobalTerms) {
    const auto inst = harness::generate_mall_instance({}, 3);
    Rng rng(3);
    for (int t = 0; t < 100; ++t) {
        const auto x = runny_layout(inst, rng);
        double areas = 0.0;
        for (std::size_t a = 0; a < inst.areas; ++a) {
            std::vector<Gene> part;
            for (auto l : inst.area_locations[a]) {
                part.push_back(x[l]);
            }
            areas += -area_evaluation(inst, a, part).raw;
        }
        const auto d = decompose_sizes(inst, x);
        double global = 0.0;
        for (std::size_t ty = 0; ty < inst.type_count(); ++ty) {
            int count = 0;
            for (std::size_t a = 0; a < inst.areas; ++a) {
                count += d.at(a, ty).shops();
            }
            global += pga_oracle::oracle_count_rent(inst.types[ty], count);
        }
        EXPECT_NEAR(areas, full_rent(inst, x, 0.0).rent - global, 1e-9);
    }
}

TEST(AreaSubFitness, RunPreservingPermutationsWithoutSynergy) {
    auto inst = harness::generate_mall_instance({}, 4);
    inst.synergy = 0.0;
    finalize(inst);
    // runs (a a a)(b b)(c) reordered as (c)(a a a)(b b)
    std::vector<Gene> one{0, 0, 0, 1, 1, 2};
    std::vector<Gene> two{2, 0, 0, 0, 1, 1};
    for (Gene filler = 3; one.size() < 20; ++filler) {
        one.push_back(filler);
        two.push_back(filler);
    }
    EXPECT_DOUBLE_EQ(area_sub_fitness(inst, 1, one, 5.0), area_sub_fitness(inst, 1, two, 5.0));
}

TEST(AreaSubFitness, WrongLengthThrows) {
    const auto inst = harness::generate_mall_instance({}, 5);
    const std::vector<Gene> part(19, 0);
    try {
        (void)area_sub_fitness(inst, 0, part, 1.0);
        FAIL() << "expected a throw";
    } catch (const std::invalid_argument& e) {
        EXPECT_STREQ(e.what(), "wrong length");
    }
}

TEST(MallProblem, ArgmaxRentIsArgminInternal) {
    auto inst = fixtures::blank_mall(1, 4, 2);
    inst.fixed_rent = {1.0, 3.0};
    inst.attract = {1.0, 0.5};
    inst.size_rent = {1.0, 3.0, 4.0};
    inst.synergy = 0.5;
    inst.types[0] = {1, 1, 2, 2.0, 1.0, 1};
    finalize(inst);
    const MallProblem problem(inst);
    const auto best = pga_oracle::brute_force_mall(inst);
    ASSERT_TRUE(best.best);
    std::optional<std::vector<Gene>> argmin;
    double min_raw = 0.0;
    std::vector<Gene> x(4, 0);
    for (int code = 0; code < 16; ++code) {
        for (std::size_t l = 0; l < 4; ++l) {
            x[l] = static_cast<Gene>((code >> l) & 1);
        }
        const auto e = problem.evaluate_full(x);
        if (e.feasible() && (!argmin || e.raw < min_raw)) {
            argmin = x;
            min_raw = e.raw;
        }
    }
    ASSERT_TRUE(argmin);
    EXPECT_EQ(*argmin, *best.best);
    EXPECT_DOUBLE_EQ(problem.report({min_raw, 0.0}), best.best_rent);
}

TEST(MallInstance, ValidatesTables) {
    auto inst = fixtures::blank_mall(1, 4, 2);
    inst.types[0].min_count = 3;
    EXPECT_THROW(finalize(inst), std::invalid_argument);
    inst = fixtures::blank_mall(1, 4, 2);
    inst.attract[0] = std::numeric_limits<double>::infinity();
    EXPECT_THROW(finalize(inst), std::invalid_argument);
    inst = fixtures::blank_mall(1, 4, 2);
    inst.group_count = 32;
    inst.types[0].groups = 0x80000000U;
    EXPECT_NO_THROW(finalize(inst));
}

TEST(MallIo, RoundTrip) {
    const auto inst = harness::generate_mall_instance({}, 6);
    std::stringstream ss;
    write_instance(ss, inst);
    const auto back = read_instance(ss);
    EXPECT_EQ(back, inst);
    EXPECT_EQ(to_text(back), to_text(inst));
}
