#include "wk/sato.hpp"

#include "oracle/dvv.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace wk;

static AffineCoords random_coords(int M, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> d(-9, 9);
    AffineCoords a(M);
    for (int n = 0; n <= M; ++n)
        for (int m = 0; m <= M; ++m) a.set(n, m, Rational(d(rng), 1 + std::abs(d(rng))));
    return a;
}

TEST(Frame, NormalizationRecoversCoordinates) {
    AffineCoords a = random_coords(5, 1);
    AffineCoords b = normalize(frame_from_coords(a), 5);
    for (int n = 0; n <= 5; ++n)
        for (int m = 0; m <= 5; ++m) EXPECT_EQ(a(n, m), b(n, m));
}

TEST(Frame, RejectsBadLeadingTerm) {
    Series1 f("z");
    f.set(1, 2);
    EXPECT_THROW(AdmissibleFrame({Series1::monomial("z", 0), f}), FrameError);
}

TEST(Plucker, MinorEqualsAdmissibleDeterminant) {
    const int M = 8;
    AffineCoords a(kernel_from_closed_form(M));
    AdmissibleFrame frame = airy_frame(M + 2, 3L * M + 6);
    int nonzero = 0;
    for (auto& mu : partitions_up_to(8)) {
        Rational p = plucker_minor(a, mu);
        EXPECT_EQ(p, plucker_from_admissible(frame, mu)) << mu.str();
        if (!p.is_zero()) ++nonzero;
        if (mu.weight() % 3) { EXPECT_TRUE(p.is_zero()) << mu.str(); }
    }
    EXPECT_GT(nonzero, 10);
    AffineCoords r = random_coords(6, 2);
    AdmissibleFrame rf = frame_from_coords(r);
    for (auto& mu : partitions_up_to(6)) EXPECT_EQ(plucker_minor(r, mu), plucker_from_admissible(rf, mu)) << mu.str();
}

TEST(Plucker, HookCoefficientsAreCoordinates) {
    AffineCoords a = random_coords(5, 3);
    for (int m = 0; m <= 4; ++m)
        for (int n = 0; n <= 4; ++n) {
            Rational c = plucker_minor(a, Partition::hook(m, n));
            EXPECT_EQ(n % 2 ? -c : c, a(n, m)) << m << "," << n;
        }
}

TEST(Tau, VacuumIsOne) {
    AffineCoords zero(4);
    auto c = tau_schur_expansion(zero, 5);
    for (auto& [mu, v] : c) EXPECT_EQ(v, Rational(mu.empty() ? 1 : 0)) << mu.str();
}

TEST(Tau, LogTauMatchesRecursionOracle) {
    const int W = 10;
    AffineCoords a(kernel_from_closed_form(W - 1));
    MultiPoly tau = tau_polynomial(tau_schur_expansion(a, W), W, W);
    MultiPoly F = MultiPoly::log1p(tau - tau.one_like());
    oracle::Dvv dvv;
    int checked = 0;
    for (auto& mu : partitions_up_to(W)) {
        // monomial prod T_{mu_i}
        MultiPoly::Exps e(static_cast<std::size_t>(W), 0);
        std::vector<int> idx;
        bool odd = true;
        for (int p : mu.parts()) {
            ++e[static_cast<std::size_t>(p - 1)];
            odd = odd && p % 2;
            idx.push_back((p - 1) / 2);
        }
        if (mu.empty()) continue;
        mpq_class expect = 0;
        if (odd) {
            expect = dvv(idx);
            for (int p : mu.parts()) expect *= oracle::dfact(p);
            for (int r : e) {
                mpz_class f = 1;
                for (int k = 2; k <= r; ++k) f *= k;
                expect /= f;
            }
        }
        EXPECT_EQ(F.coeff(e).raw(), expect) << mu.str();
        ++checked;
    }
    EXPECT_EQ(checked, static_cast<int>(partitions_up_to(W).size()) - 1);
}

TEST(Tau, TwoPointSpecialization) {
    const int W = 10;
    AffineCoords a(kernel_from_closed_form(W));
    EXPECT_TRUE(tau_two_point_specialization(a, W + 1, TwoPointVariant::EtaMinusXi)
                    .agrees_to_depth(two_point_from_coords(a, W + 1), W + 1));
    AffineCoords r = random_coords(6, 4);
    EXPECT_TRUE(tau_two_point_specialization(r, 7, TwoPointVariant::EtaMinusXi)
                    .agrees_to_depth(two_point_from_coords(r, 7), 7));
}

TEST(Tau, PlusPlusSpecializationTerms) {
    AffineCoords a(kernel_from_closed_form(12));
    Series2 pp = tau_two_point_specialization(a, 12, TwoPointVariant::PlusPlus);
    // Degree-three part: the m+n=2 kernel block enters as 5/24 (x^-3 + y^-3) at p_k = x^-k + y^-k.
    EXPECT_EQ(pp.coeff(-3, 0), Rational(5, 24));
    EXPECT_EQ(pp.coeff(0, -3), Rational(5, 24));
    EXPECT_EQ(pp.coeff(-1, -1), Rational(0));
}

TEST(Reduction, AiryFrameIsTwoReduced) {
    const int M = 10;
    auto rep = reduction_check(airy_frame(M + 1, 3L * M + 6), Series1::monomial("z", 2));
    EXPECT_TRUE(rep.ok) << rep.first_failure;
    EXPECT_GT(rep.tested, 5);
    auto bad = reduction_check(airy_frame(M + 1, 3L * M + 6), Series1::monomial("z", 1));
    EXPECT_FALSE(bad.ok);
}

TEST(Reduction, AiryOperator) { EXPECT_TRUE(airy_D_check(24)); }
