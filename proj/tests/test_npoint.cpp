#include "wk/npoint.hpp"

#include "oracle/dvv.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace wk;

namespace {
const Kernel& airy30() {
    static const Kernel k = kernel_from_closed_form(30);
    return k;
}

Kernel random_kernel(int M, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> d(-6, 6);
    Kernel k(M, "random");
    for (int m = 0; m <= M; ++m)
        for (int n = 0; n <= M; ++n) k.set(m, n, Rational(d(rng), 1 + std::abs(d(rng))));
    return k;
}
} // namespace

TEST(CorrelatorKey, SelectionRule) {
    EXPECT_TRUE(CorrelatorKey({0, 0, 0}).valid());
    EXPECT_EQ(CorrelatorKey({1}).genus(), 1);
    EXPECT_EQ(CorrelatorKey({2, 3}).genus(), 2);
    EXPECT_FALSE(CorrelatorKey({0, 0}).valid());
    EXPECT_FALSE(CorrelatorKey({0}).valid());
    EXPECT_THROW(CorrelatorKey({0, 0}).genus(), InvalidKey);
    EXPECT_THROW(CorrelatorKey({-1, 2}), InvalidKey);
    EXPECT_EQ(CorrelatorKey({3, 0, 1}).str(), "0,1,3");
    EXPECT_EQ(intersection_number(CorrelatorKey({0, 0}), airy30()), Rational(0));
}

TEST(Correlators, MatchRecursionOracle) {
    oracle::Dvv dvv;
    int checked = 0;
    for (int n = 1; n <= 5; ++n)
        for (int s = 0; s <= 9; ++s)
            for (auto& key : keys_with(n, s)) {
                if (!key.valid()) continue;
                EXPECT_EQ(intersection_number(key, airy30()).raw(), dvv(key.indices())) << key.str();
                ++checked;
            }
    EXPECT_GT(checked, 60);
}

TEST(Correlators, KnownValues) {
    EXPECT_EQ(intersection_number(CorrelatorKey({0, 0, 0}), airy30()), Rational(1));
    EXPECT_EQ(intersection_number(CorrelatorKey({1}), airy30()), Rational(1, 24));
    EXPECT_EQ(intersection_number(CorrelatorKey({4}), airy30()), Rational(1, 1152));
    EXPECT_EQ(intersection_number(CorrelatorKey({7}), airy30()), Rational(1, 82944));
    EXPECT_EQ(intersection_number(CorrelatorKey({1, 1, 1, 1}), airy30()), Rational(1, 4));
    EXPECT_EQ(intersection_number(CorrelatorKey({2, 3}), airy30()), Rational(29, 5760));
}

TEST(Correlators, GenusZeroAndPuncture) {
    for (int n = 3; n <= 6; ++n) {
        auto r = genus0_check(n, airy30());
        EXPECT_TRUE(r.ok) << r.first_failure;
    }
    for (auto m : std::vector<std::vector<int>>{{0, 2}, {0, 5}, {0, 0, 0, 1}, {0, 1, 1, 2}, {0, 3, 3}, {0, 0, 1, 3}})
        EXPECT_TRUE(puncture_check(CorrelatorKey(m), airy30())) << CorrelatorKey(m).str();
    EXPECT_THROW(puncture_check(CorrelatorKey({1, 1, 1, 1}), airy30()), InvalidKey);
    EXPECT_THROW(puncture_check(CorrelatorKey({0, 0, 0}), airy30()), InvalidKey);
}

TEST(Npoint, CutoffIsChecked) {
    Kernel small = kernel_from_closed_form(5);
    EXPECT_THROW(intersection_number(CorrelatorKey({7}), small), CutoffError);
    EXPECT_EQ(required_cutoff(CorrelatorKey({7})), 17);
}

TEST(Npoint, StableUnderTruncationGrowth) {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> d(0, 4);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<int> js;
        int n = 1 + trial % 4;
        for (int i = 0; i < n; ++i) js.push_back(2 * d(rng) + 1);
        auto demand = npoint_demand(js);
        Rational a = connected_npoint_raw(airy30().restricted(demand.cutoff), js, demand.window);
        Rational b = connected_npoint_raw(airy30().restricted(demand.cutoff + 3), js, demand.window + 3);
        EXPECT_EQ(a, b);
    }
}

TEST(Npoint, CycleSumEqualsDeterminantRoute) {
    for (unsigned seed = 1; seed <= 3; ++seed) {
        Kernel k = random_kernel(6, seed);
        for (auto js : std::vector<std::vector<int>>{{1, 2}, {2, 1, 3}, {1, 1, 1, 2}, {3, 2}})
            EXPECT_EQ(connected_npoint_raw(k, js, 12), connected_via_determinants(k, js, 12));
    }
    for (auto js : std::vector<std::vector<int>>{{1, 5}, {1, 3, 5}, {1, 1, 1, 3}})
        EXPECT_EQ(connected_npoint_raw(airy30(), js, 20), connected_via_determinants(airy30(), js, 20));
}

TEST(Npoint, MobiusRoundTrip) {
    SubsetFamily f;
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> d(-9, 9);
    for (unsigned s = 1; s < 16; ++s) f[s] = Rational(d(rng), 1 + std::abs(d(rng)));
    SubsetFamily back = mobius_disconnect(mobius_connect(f));
    for (auto& [s, v] : f) EXPECT_EQ(back.at(s), v) << s;
    // a product family has no connected part beyond singletons
    SubsetFamily prod;
    for (unsigned s = 1; s < 8; ++s) prod[s] = Rational(static_cast<long>(1u << __builtin_popcount(s)));
    auto c = mobius_connect(prod);
    EXPECT_EQ(c.at(3), Rational(0));
    EXPECT_EQ(c.at(7), Rational(0));
    EXPECT_EQ(c.at(4), Rational(2));
}

TEST(FreeEnergy, LowOrderTerms) {
    MultiPoly F = free_energy_truncation(9, 3, airy30());
    EXPECT_EQ(F.coeff({0, 0, 1, 0, 0, 0, 0, 0, 0}), Rational(1, 8));
    EXPECT_EQ(F.coeff({0, 0, 0, 0, 0, 0, 0, 0, 1}), Rational(105, 128));
    EXPECT_EQ(F.coeff({3, 0, 0, 0, 0, 0, 0, 0, 0}), Rational(1, 6));
    for (auto& [e, v] : F.terms())
        for (std::size_t k = 1; k < e.size(); k += 2) EXPECT_EQ(e[k], 0);
    EXPECT_THROW(free_energy_truncation(9, 3, kernel_from_closed_form(10)), CutoffError);
}
