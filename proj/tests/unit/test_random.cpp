#include <gtest/gtest.h>

#include <set>

#include <pga/core/random.hpp>

using namespace pga;

TEST(DeriveSeed, DeterministicAndOrderSensitive) {
    EXPECT_EQ(derive_seed({1, 2, 3}), derive_seed({1, 2, 3}));
    EXPECT_NE(derive_seed({1, 2, 3}), derive_seed({1, 3, 2}));
    EXPECT_NE(derive_seed({1, 2}), derive_seed({1, 2, 0}));
    static_assert(derive_seed({7}) == derive_seed({7}));
}

TEST(DeriveSeed, NeighbouringRunsDiffer) {
    std::set<std::uint64_t> seen;
    for (std::uint64_t inst = 0; inst < 20; ++inst) {
        for (std::uint64_t run = 0; run < 20; ++run) {
            seen.insert(derive_seed({1, inst, run}));
        }
    }
    EXPECT_EQ(seen.size(), 400U);
}

TEST(UniformIndex, StaysInRange) {
    Rng rng(5);
    for (int t = 0; t < 10000; ++t) {
        EXPECT_LT(uniform_index(rng, 7), 7U);
    }
    EXPECT_EQ(uniform_index(rng, 1), 0U);
}

TEST(Bernoulli, DegenerateProbabilities) {
    Rng rng(9);
    for (int t = 0; t < 1000; ++t) {
        EXPECT_TRUE(bernoulli(rng, 1.0));
        EXPECT_FALSE(bernoulli(rng, 0.0));
    }
}
