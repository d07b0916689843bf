#include "wk/schur.hpp"

#include <gtest/gtest.h>

using namespace wk;

TEST(Partition, Enumeration) {
    EXPECT_EQ(partitions_of(10).size(), 42u);
    EXPECT_EQ(partitions_up_to(6).size(), 1u + 1 + 2 + 3 + 5 + 7 + 11);
}

TEST(Partition, FrobeniusRoundTrip) {
    for (auto& mu : partitions_up_to(9)) {
        std::vector<int> a, b;
        for (auto [m, n] : mu.frobenius()) {
            a.push_back(m);
            b.push_back(n);
        }
        EXPECT_EQ(Partition::from_frobenius(a, b), mu) << mu.str();
        EXPECT_EQ(mu.conjugate().conjugate(), mu);
    }
    EXPECT_EQ(Partition::hook(2, 1).str(), "3,1");
    EXPECT_EQ(Partition::parse("3,2,1").frobenius_str(), "(2,0|2,0)");
    EXPECT_THROW(Partition::from_frobenius({1, 1}, {2, 0}), std::invalid_argument);
}

// Bialternant formula det(x_i^{mu_j + N - j}) / det(x_i^{N - j}) in N rational variables.
static Rational bialternant(const Partition& mu, const std::vector<Rational>& x) {
    const std::size_t N = x.size();
    Matrix<Rational> num(N, std::vector<Rational>(N)), den(N, std::vector<Rational>(N));
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) {
            num[i][j] = pow(x[i], static_cast<unsigned>(mu.part(static_cast<int>(j)) + static_cast<int>(N - 1 - j)));
            den[i][j] = pow(x[i], static_cast<unsigned>(N - 1 - j));
        }
    return det_bareiss(num) / det_bareiss(den);
}

TEST(Schur, MatchesBialternantAtPowerSumsOfPoints) {
    std::vector<Rational> x{Rational(1, 2), Rational(-2, 3), Rational(3), Rational(5, 7)};
    std::vector<Rational> p;
    for (int k = 1; k <= 9; ++k) {
        Rational s(0);
        for (auto& xi : x) s += pow(xi, static_cast<unsigned>(k));
        p.push_back(s);
    }
    auto spec = rational_spec(p);
    for (auto& mu : partitions_up_to(9)) {
        if (mu.length() > 4) {
            EXPECT_TRUE(schur_at(mu, spec).is_zero()) << mu.str();
            continue;
        }
        EXPECT_EQ(schur_at(mu, spec), bialternant(mu, x)) << mu.str();
        EXPECT_EQ(schur_h(mu, spec), schur_e(mu, spec)) << mu.str();
    }
}

TEST(Schur, BoundIsEnforced) {
    auto spec = rational_spec({Rational(1), Rational(2)});
    EXPECT_THROW(schur_at(Partition::parse("2,1"), spec), SpecializationError);
}

TEST(Schur, HookSpecializationIdentity) {
    for (int m = 0; m <= 6; ++m)
        for (int n = 0; n <= 6; ++n) EXPECT_TRUE(hook_spec_identity_check(m, n)) << m << "," << n;
}

TEST(Schur, TwoPointSpecializationKillsLongPartitions) {
    auto spec = two_point_spec(8, "x", "y", -1, +1);  // p_k = y^-k + (-1) x^-k
    for (auto& mu : partitions_up_to(8))
        if (mu.length() > 2 && mu.part(1) > 1) { EXPECT_TRUE(schur_at(mu, spec).empty()) << mu.str(); }
}

TEST(Schur, CompleteSymmetricAtTwoPoints) {
    // h_n at p_k = y^-k + (-x)^-k is the sum over i + j = n of (-1)^i x^-i y^-j
    PowerSumSpec<Series2> s{{Series2("x", "y")}, Series2("x", "y"), Series2::constant("x", "y", 1)};
    for (int k = 1; k <= 8; ++k) {
        Series2 pk("x", "y");
        pk.add_to(-k, 0, Rational(k % 2 ? -1 : 1));
        pk.add_to(0, -k, 1);
        s.p.push_back(pk);
    }
    auto h = complete_symmetric(s, 8);
    for (int n = 0; n <= 8; ++n) EXPECT_TRUE(h[static_cast<std::size_t>(n)] == two_point_hk(n)) << n;
}
