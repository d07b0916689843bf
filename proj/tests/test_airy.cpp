#include "wk/airy.hpp"
#include "wk/sato.hpp"

#include "oracle/airy_kernel.hpp"

#include <gtest/gtest.h>

using namespace wk;

TEST(AiryKernel, ClosedFormMatchesDenseOracle) {
    const int M = 12;
    auto ref = oracle::airy_kernel(M);
    Kernel k = kernel_from_closed_form(M);
    for (int m = 0; m <= M; ++m)
        for (int n = 0; n <= M; ++n) EXPECT_EQ(k(m, n).raw(), ref[m][n]) << m << "," << n;
}

TEST(AiryKernel, FourRoutesAgree) {
    const int M = 12;
    Kernel c = kernel_from_closed_form(M);
    EXPECT_FALSE(kernel_from_series(M).first_difference(c));
    EXPECT_FALSE(kernel_from_gmatrix(M).first_difference(c));
    EXPECT_FALSE(kernel_from_frame(M).first_difference(c));
}

TEST(AiryKernel, LowOrderEntries) {
    Kernel k = kernel_from_closed_form(8);
    EXPECT_EQ(k(0, 2), Rational(5, 24));
    EXPECT_EQ(k(1, 1), Rational(-7, 24));
    EXPECT_EQ(k(2, 0), Rational(5, 24));
    EXPECT_EQ(k(0, 5), Rational(385, 1152));
    EXPECT_EQ(k(1, 4), Rational(-455, 1152));
    EXPECT_EQ(k(5, 0), Rational(-385, 1152));
    EXPECT_EQ(k(1, 7), Rational(-95095, 82944));
    EXPECT_EQ(k(3, 5), Rational(-43505, 41472));
    EXPECT_EQ(k(4, 4), Rational(45955, 41472));
}

TEST(AiryKernel, SupportedOnTwoModThree) {
    Kernel k = kernel_from_closed_form(12);
    for (int m = 0; m <= 12; ++m)
        for (int n = 0; n <= 12; ++n)
            if ((m + n) % 3 != 2) { EXPECT_TRUE(k(m, n).is_zero()) << m << "," << n; }
}

TEST(AiryKernel, SeriesCancellation) { EXPECT_TRUE(kernel_series_cancellation_check(10)); }

TEST(AiryKernel, CutoffErrors) {
    Kernel k = kernel_from_closed_form(4);
    EXPECT_THROW((void)k(5, 0), KernelError);
    EXPECT_THROW((void)k.restricted(6), KernelError);
    EXPECT_THROW(kernel_from_series(4, 10), KernelError);
    EXPECT_EQ(k.restricted(2)(1, 1), Rational(-7, 24));
}

TEST(AiryKernel, FaberZagierConventionSignFlip) {
    const int M = 9;
    Kernel s = kernel_from_closed_form(M), f = kernel_from_closed_form(M, Convention::FaberZagier);
    for (int m = 0; m <= M; ++m)
        for (int n = 0; n <= M; ++n) {
            Rational expect = (m + n) % 2 ? s(m, n) : -s(m, n);
            EXPECT_EQ(f(m, n), expect) << m << "," << n;
        }
    EXPECT_FALSE(kernel_from_series(M, -1, Convention::FaberZagier).first_difference(f));
    EXPECT_FALSE(kernel_from_frame(M, Convention::FaberZagier).first_difference(f));
}

TEST(AirySeries, Coefficients) {
    for (long m = 0; m <= 8; ++m) EXPECT_EQ(airy_alpha(m).raw(), oracle::airy_alpha(m));
    Series1 a = airy_a(9);
    EXPECT_EQ(a.terms().size(), 4u);
    EXPECT_EQ(a.coeff(-9), Rational(85085, 82944));
    Series1 b = airy_b(9);
    EXPECT_EQ(b.coeff(1), Rational(1));
    EXPECT_EQ(b.coeff(-2), Rational(-7, 24));
    EXPECT_EQ(airy_c(9).coeff(-3), Rational(-5, 24));
    EXPECT_EQ(airy_q(9).coeff(-2), Rational(7, 24));  // -b(-xi)
}

TEST(AiryDiagonal, OnePointValues) {
    Series1 d = kernel_diagonal(16);
    EXPECT_EQ(d.coeff(-4), Rational(1, 8));
    EXPECT_EQ(d.coeff(-10), Rational(105, 128));
    EXPECT_EQ(d.coeff(-16), Rational(25025, 1024));
    for (long g = 1; g <= 3; ++g) {
        Rational ref = Rational(double_factorial(6 * g - 3)) /
                       (pow(Rational(24), static_cast<unsigned>(g)) * Rational(factorial(g)));
        EXPECT_EQ(one_point_coefficient(g), ref);
        EXPECT_EQ(d.coeff(-(6 * g - 2)), ref);
    }
    EXPECT_TRUE(diagonal_from_kernel(kernel_from_closed_form(16)).agrees_with(d, 16));
}

TEST(AiryDiagonal, FaberZagierIdentity) { EXPECT_TRUE(faber_zagier_identity_check(30)); }
