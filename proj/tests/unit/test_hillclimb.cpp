#include <gtest/gtest.h>

#include <vector>

#include <pga/harness/generate.hpp>
#include <pga/nurse/hillclimb.hpp>
#include <pga/nurse/problem.hpp>
#include <pga_oracle/nurse_oracle.hpp>

#include "fixtures.hpp"

using namespace pga;
using namespace pga::nurse;
using fixtures::day_pattern;

namespace {

/// Two grade-1 nurses, one-shift day contracts on day 0 or day 1, one nurse
/// needed on each day.
NurseInstance two_nurses(int demand_per_day = 1) {
    auto inst = fixtures::blank_nurse({1, 1}, {day_pattern({0}), day_pattern({1})}, {1, 1, 1});
    inst.pref_cost = {0, 3, 0, 5};
    for (int s = 1; s <= 3; ++s) {
        fixtures::set_demand(inst, 0, s, demand_per_day);
        fixtures::set_demand(inst, 1, s, demand_per_day);
    }
    finalize(inst);
    return inst;
}

std::vector<Gene> random_assignment(const NurseInstance& inst, Rng& rng) {
    std::vector<Gene> x(inst.n());
    for (std::size_t i = 0; i < inst.n(); ++i) {
        x[i] = inst.feasible_sets[i][uniform_index(rng, inst.feasible_sets[i].size())];
    }
    return x;
}

double fit(const NurseInstance& inst, const std::vector<Gene>& x, double w) {
    return pga_oracle::recompute_fitness(inst, x, w);
}

} // namespace

TEST(IsBalanced, SurplusAndShortageOnDays) {
    const auto inst = two_nurses();
    const std::vector<Gene> both_day0{0, 0};
    EXPECT_TRUE(is_balanced(inst, both_day0));
}

TEST(IsBalanced, ExactCoverIsNotBalanced) {
    const auto inst = two_nurses();
    const std::vector<Gene> exact{0, 1};
    EXPECT_FALSE(is_balanced(inst, exact));
}

TEST(IsBalanced, AllShortIsNotBalanced) {
    const auto inst = two_nurses(2);
    const std::vector<Gene> x{0, 1};
    EXPECT_FALSE(is_balanced(inst, x));
}

TEST(IsBalanced, ClassesDoNotMix) {
    // surplus on a day, shortage on a night
    auto inst = fixtures::blank_nurse({1}, {day_pattern({0}), fixtures::night_pattern({0})}, {1, 1, 1});
    fixtures::set_demand(inst, 7, 1, 1);
    fixtures::set_demand(inst, 7, 2, 1);
    fixtures::set_demand(inst, 7, 3, 1);
    finalize(inst);
    const std::vector<Gene> x{0};
    EXPECT_FALSE(is_balanced(inst, x));
}

TEST(BalanceProfile, ConsistentWithUncovered) {
    const auto inst = harness::generate_nurse_instance({}, 1);
    Rng rng(1);
    for (int t = 0; t < 50; ++t) {
        const auto x = random_assignment(inst, rng);
        const auto b = balance_profile(inst, x);
        const auto f = full_fitness(inst, x, 1.0);
        for (std::size_t c = 0; c < b.surplus.size(); ++c) {
            EXPECT_EQ(f.uncovered[c], std::max(-b.surplus[c], 0));
        }
    }
}

TEST(Improve, LocalOptimumIsFixpoint) {
    const auto inst = two_nurses();
    const auto opt = pga_oracle::brute_force_nurse(inst, 20.0);
    EXPECT_EQ(improve(inst, opt.best, 20.0), opt.best);
}

TEST(Improve, SwapRepairsImbalance) {
    const auto inst = two_nurses();
    const double w = 20.0;
    const auto opt = pga_oracle::brute_force_nurse(inst, w);
    for (const std::vector<Gene>& start : {std::vector<Gene>{0, 0}, std::vector<Gene>{1, 1},
                                           std::vector<Gene>{1, 0}}) {
        const auto out = improve(inst, start, w);
        EXPECT_DOUBLE_EQ(fit(inst, out, w), opt.best_value);
    }
}

TEST(Improve, NeverBeatsTheBruteForceOptimum) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        harness::NurseGenParams p;
        p.nurses = 5;
        p.patterns_per_class = 2;
        const auto inst = harness::generate_nurse_instance(p, seed);
        const auto opt = pga_oracle::brute_force_nurse(inst, 50.0);
        Rng rng(seed);
        const auto out = improve(inst, random_assignment(inst, rng), 50.0);
        EXPECT_GE(fit(inst, out, 50.0), opt.best_value);
    }
}

TEST(Improve, NeverWorseIdempotentAndFeasibilityPreserving) {
    harness::NurseGenParams p;
    p.nurses = 12;
    p.tier = harness::Tier::loose;
    const auto inst = harness::generate_nurse_instance(p, 2);
    Rng rng(2);
    int feasible_inputs = 0;
    for (int t = 0; t < 1000; ++t) {
        auto x = random_assignment(inst, rng);
        if (t % 4 == 0) {
            x = improve(inst, x, 1000.0); // push some inputs to feasibility first
        }
        const double w = 1.0 + uniform_unit(rng) * 30.0;
        const auto out = improve(inst, x, w);
        ASSERT_LE(fit(inst, out, w), fit(inst, x, w));
        if (is_feasible(inst, x)) {
            ++feasible_inputs;
            ASSERT_TRUE(is_feasible(inst, out));
        }
        if (t % 10 == 0) {
            ASSERT_EQ(improve(inst, out, w), out);
        }
    }
    EXPECT_GT(feasible_inputs, 0);
}

TEST(Improve, ChainLengthOption) {
    const auto inst = harness::generate_nurse_instance({}, 3);
    Rng rng(3);
    const auto x = random_assignment(inst, rng);
    const auto one = improve(inst, x, 10.0, {1});
    const auto three = improve(inst, x, 10.0, {3});
    EXPECT_LE(fit(inst, one, 10.0), fit(inst, x, 10.0));
    EXPECT_LE(fit(inst, three, 10.0), fit(inst, x, 10.0));
}

TEST(NurseProblemPolish, OnlyBalancedSchedulesChange) {
    const auto inst = two_nurses();
    const NurseProblem problem(inst);
    std::vector<Gene> exact{1, 0};
    EXPECT_FALSE(problem.polish(exact, 20.0));
    std::vector<Gene> lopsided{0, 0};
    EXPECT_TRUE(problem.polish(lopsided, 20.0));
    EXPECT_TRUE(is_feasible(inst, lopsided));
}
