#pragma once

#include "wk/series1.hpp"
#include "wk/series2.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace wk {

// Which pair of series generates the Airy point. Standard uses a, b with
// t_n = (2n+1)!! T_{2n+1}; FaberZagier uses c(z) = a(-z), q(z) = -b(-z), which
// corresponds to t_n = -(2n+1)!! T_{2n+1}.
enum class Convention { Standard, FaberZagier };

inline std::string to_string(Convention c) { return c == Convention::Standard ? "standard" : "faber-zagier"; }

inline Convention parse_convention(const std::string& s) {
    if (s == "standard") return Convention::Standard;
    if (s == "faber-zagier" || s == "fz") return Convention::FaberZagier;
    throw std::invalid_argument("unknown convention '" + s + "'");
}

// (6m-1)!! / (36^m (2m)!)
inline Rational airy_alpha(long m) {
    return Rational(double_factorial(6 * m - 1)) / (pow(Rational(36), static_cast<unsigned>(m)) * Rational(factorial(2 * m)));
}

// a(x) = sum_m alpha_m x^{-3m}, truncated at x^{-K}.
inline Series1 airy_a(long K, const std::string& tag = "x") {
    if (K < 0) throw std::invalid_argument("airy_a order must be >= 0");
    Series1 s(tag, K);
    for (long m = 0; 3 * m <= K; ++m) s.set(-3 * m, airy_alpha(m));
    return s;
}

// b(y) = -sum_m alpha_m (6m+1)/(6m-1) y^{-3m+1}, truncated at y^{-K}.
inline Series1 airy_b(long K, const std::string& tag = "y") {
    if (K < 0) throw std::invalid_argument("airy_b order must be >= 0");
    Series1 s(tag, K);
    for (long m = 0; 3 * m - 1 <= K; ++m) s.set(1 - 3 * m, -airy_alpha(m) * Rational(6 * m + 1, 6 * m - 1));
    return s;
}

// c(xi) = a(-xi), q(xi) = -b(-xi).
inline Series1 airy_c(long K, const std::string& tag = "xi") { return airy_a(K, tag).negate_var(); }
inline Series1 airy_q(long K, const std::string& tag = "xi") { return -airy_b(K, tag).negate_var(); }

inline Series1 generator_a(long K, const std::string& tag, Convention conv) {
    return conv == Convention::Standard ? airy_a(K, tag) : airy_c(K, tag);
}
inline Series1 generator_b(long K, const std::string& tag, Convention conv) {
    return conv == Convention::Standard ? airy_b(K, tag) : airy_q(K, tag);
}

// Closed form of the affine coordinate A_{m,n} (normalized basis
// z^n + sum_m A_{m,n} z^{-m-1}); zero unless m + n = 2 mod 3.
inline Rational closed_Amn(long m, long n) {
    if (m < 0 || n < 0) throw std::invalid_argument("closed_Amn indices must be >= 0");
    if ((m + n) % 3 != 2) return Rational(0);
    auto bconst = [](long k) { return Rational(mpz_class(mpz_class(1) << static_cast<mp_bitcnt_t>(k))) * Rational(double_factorial(6 * k + 1)) / Rational(factorial(2 * k)); };
    auto falling = [](long a, long j) {
        Rational r(1);
        for (long i = 0; i < j; ++i) r *= Rational(a - i);
        return r;
    };
    auto Bpoly = [&](long N, long x) {
        Rational s(0);
        for (long j = 1; j <= N; ++j)
            s += pow(Rational(108), static_cast<unsigned>(j)) * bconst(N - j) * falling(x + N, j - 1);
        return s * Rational(1, 6);
    };
    long M, N;
    bool second_case = false;
    if (m % 3 == 2) { M = (m + 1) / 3; N = n / 3; }
    else if (m % 3 == 0) { M = m / 3 + 1; N = (n - 2) / 3; }
    else { M = (m + 2) / 3; N = (n - 1) / 3; second_case = true; }

    Rational pre = Rational(double_factorial(6 * M + 1)) /
                   (pow(Rational(36), static_cast<unsigned>(M + N)) * Rational(factorial(2 * (M + N))));
    for (long j = 0; j < N; ++j) pre *= Rational(M + j);
    for (long j = 1; j <= N; ++j) pre *= Rational(2 * M + 2 * j - 1);
    if (!second_case) {
        if (N % 2) pre = -pre;
        return pre * (Bpoly(N, M) + bconst(N) / Rational(6 * M + 1));
    }
    if (N % 2 == 0) pre = -pre;
    return pre * (Bpoly(N, M) + bconst(N) / Rational(6 * M - 1));
}

struct KernelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// coeffs(m, n) = coefficient of x^{-m-1} y^{-n-1} in A(x, y) = A_{n,m}, 0 <= m, n <= M.
// For the Airy point this table is also the affine-coordinate table a_{m,n}.
class Kernel {
public:
    Kernel() = default;
    Kernel(int cutoff, std::string route)
        : M_(cutoff), route_(std::move(route)),
          c_(static_cast<std::size_t>((cutoff + 1) * (cutoff + 1)), Rational(0)) {
        if (cutoff < 0) throw std::invalid_argument("kernel cutoff must be >= 0");
    }

    int cutoff() const { return M_; }
    const std::string& route() const { return route_; }

    const Rational& operator()(int m, int n) const {
        if (m < 0 || n < 0 || m > M_ || n > M_)
            throw KernelError("kernel index (" + std::to_string(m) + "," + std::to_string(n) + ") beyond cutoff " + std::to_string(M_));
        return c_[idx(m, n)];
    }
    void set(int m, int n, Rational v) { c_.at(idx(m, n)) = std::move(v); }

    Kernel restricted(int M) const {
        if (M > M_) throw KernelError("cannot restrict kernel to a larger cutoff");
        Kernel k(M, route_);
        for (int m = 0; m <= M; ++m)
            for (int n = 0; n <= M; ++n) k.set(m, n, (*this)(m, n));
        return k;
    }

    // First entry where the two tables differ, over the common cutoff.
    std::optional<std::array<int, 2>> first_difference(const Kernel& o) const {
        int M = std::min(M_, o.M_);
        for (int s = 0; s <= 2 * M; ++s)
            for (int m = std::max(0, s - M); m <= std::min(s, M); ++m)
                if ((*this)(m, s - m) != o(m, s - m)) return std::array<int, 2>{m, s - m};
        return std::nullopt;
    }

    // A(x, y) as a bivariate series, exact for exponents >= -(M+1).
    Series2 as_series(const std::string& x = "x", const std::string& y = "y") const {
        Series2 s(x, y, M_ + 1, M_ + 1);
        for (int m = 0; m <= M_; ++m)
            for (int n = 0; n <= M_; ++n) s.add_to(-m - 1, -n - 1, (*this)(m, n));
        return s;
    }

private:
    std::size_t idx(int m, int n) const { return static_cast<std::size_t>(m * (M_ + 1) + n); }

    int M_ = 0;
    std::string route_;
    std::vector<Rational> c_;
};

inline long required_series_order(int M) { return 3L * M + 6; }

inline Kernel kernel_from_closed_form(int M, Convention conv = Convention::Standard) {
    Kernel k(M, "closed-form");
    for (int m = 0; m <= M; ++m)
        for (int n = 0; n <= M; ++n) {
            Rational v = closed_Amn(n, m);
            if (conv == Convention::FaberZagier && (m + n) % 2 == 0) v = -v;
            k.set(m, n, v);
        }
    return k;
}

namespace detail {
// N(x, y) = a(-x) b(y) - a(y) b(-x), exact for both exponents >= -K.
inline Series2 airy_numerator(long K, Convention conv) {
    Series1 ax = generator_a(K, "x", conv), ay = generator_a(K, "y", conv);
    Series1 bx = generator_b(K, "x", conv), by = generator_b(K, "y", conv);
    return Series2::outer(ax.negate_var(), by) - Series2::outer(bx.negate_var(), ay);
}

// Coefficient of x^p y^q of N/(x^2 - y^2) - 1/(x - y), expanded in |x| > |y|.
inline Rational kernel_series_coeff(const Series2& N, long p, long q) {
    Rational s(0);
    // 1/(x^2 - y^2) = sum_k y^{2k} x^{-2k-2}; N has x-exponents <= 1.
    for (long k = 0; p + 2 * k + 2 <= 1; ++k) s += N.coeff(p + 2 * k + 2, q - 2 * k);
    // -1/(x - y) = -sum_k y^k x^{-k-1}
    if (q >= 0 && p == -q - 1) s -= Rational(1);
    return s;
}
} // namespace detail

// Series route: expand the closed expression for A(x, y) in the region |x| > |y|.
inline Kernel kernel_from_series(int M, long order = -1, Convention conv = Convention::Standard) {
    if (order < 0) order = required_series_order(M);
    if (order < required_series_order(M))
        throw KernelError("series order " + std::to_string(order) + " below required " +
                          std::to_string(required_series_order(M)) + " for cutoff " + std::to_string(M));
    Series2 N = detail::airy_numerator(order, conv);
    Kernel k(M, "series");
    for (int m = 0; m <= M; ++m)
        for (int n = 0; n <= M; ++n) k.set(m, n, detail::kernel_series_coeff(N, -m - 1, -n - 1));
    return k;
}

// Every coefficient with a nonnegative exponent in x or y vanishes, over a window
// of size M around the origin.
inline bool kernel_series_cancellation_check(int M, Convention conv = Convention::Standard) {
    Series2 N = detail::airy_numerator(required_series_order(M), conv);
    for (long p = -M - 1; p <= 1; ++p)
        for (long q = -M - 1; q <= M; ++q)
            if ((p >= 0 || q >= 0) && !detail::kernel_series_coeff(N, p, q).is_zero()) return false;
    return true;
}

// Block route: G(z) from even/odd splits of a and b(z)/z, sum Z_{m,n} x^{-m-1} y^{-n-1}
// = (I - G(x) G(y)^{-1}) / (x - y), with G^{-1} the adjugate since det G = 1.
inline Kernel kernel_from_gmatrix(int M, long order = -1, Convention conv = Convention::Standard) {
    const long L = M + 3;  // block-series order needed per variable
    if (order < 0) order = std::max(required_series_order(M), 2 * L + 1);
    if (order < required_series_order(M))
        throw KernelError("series order below required for cutoff " + std::to_string(M));
    Series1 a = generator_a(order, "z", conv);
    Series1 b = generator_b(order, "z", conv).shifted(-1);
    auto ac = [&](long i) { return i < 0 ? Rational(0) : a.coeff(-i); };
    auto bc = [&](long i) { return i < 0 ? Rational(0) : b.coeff(-i); };
    if (2 * L + 1 > order) throw KernelError("series order too small for block route");

    std::array<std::array<Series1, 2>, 2> G;
    for (auto& row : G)
        for (auto& e : row) e = Series1("z", L);
    for (long n = 0; n <= L; ++n) {
        G[0][0].set(-n, ac(2 * n));
        G[0][1].set(-n, bc(2 * n + 1));
        G[1][0].set(-n, ac(2 * n - 1));
        G[1][1].set(-n, bc(2 * n));
    }
    Series1 det = G[0][0] * G[1][1] - G[0][1] * G[1][0];
    if (!det.agrees_with(Series1::monomial("z", 0, 1, L), L))
        throw KernelError("det G(z) != 1 within window");
    std::array<std::array<Series1, 2>, 2> Gi{{{G[1][1], -G[0][1]}, {-G[1][0], G[0][0]}}};

    auto rx = [](const Series1& s) { return s.retagged("x"); };
    auto ry = [](const Series1& s) { return s.retagged("y"); };
    Kernel k(M, "g-matrix");
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) {
            Series2 Nrc("x", "y", L, L);
            for (int t = 0; t < 2; ++t) Nrc -= Series2::outer(rx(G[r][t]), ry(Gi[t][c]));
            if (r == c) Nrc.add_to(0, 0, 1);
            // Q = N / (x - y): q_{a,b} = sum_{i>=0} n_{a-i, b+1+i} for x^{-a-1} y^{-b-1}
            for (long am = 0; 2 * am <= M + 1; ++am)
                for (long bn = 0; 2 * bn <= M + 1; ++bn) {
                    Rational q(0);
                    for (long i = 0; i <= am; ++i) q += Nrc.coeff(-(am - i), -(bn + 1 + i));
                    // Z_{m,n} = [[A_{2m+1,2n}, A_{2m+1,2n+1}], [A_{2m,2n}, A_{2m,2n+1}]]
                    long P = 2 * am + (r == 0 ? 1 : 0);
                    long Qi = 2 * bn + (c == 1 ? 1 : 0);
                    if (P <= M && Qi <= M) k.set(static_cast<int>(Qi), static_cast<int>(P), q);
                }
        }
    return k;
}

// A(xi, xi) = (1/(2 xi)) (1 + a'(xi) b(-xi) - a(-xi) b'(xi)), truncated at xi^{-K}.
inline Series1 kernel_diagonal(long K, Convention conv = Convention::Standard) {
    if (K < 0) throw std::invalid_argument("diagonal order must be >= 0");
    long L = K + 3;
    Series1 a = generator_a(L, "xi", conv), b = generator_b(L, "xi", conv);
    Series1 inner = Series1::monomial("xi", 0, 1) + a.derivative() * b.negate_var() - a.negate_var() * b.derivative();
    return (inner.shifted(-1) * Rational(1, 2)).truncated(K);
}

// Antidiagonal sums of a kernel table: sum_{m+n=j-1} coeffs(m, n) at xi^{-j-1}.
inline Series1 diagonal_from_kernel(const Kernel& k) {
    const int M = k.cutoff();
    Series1 s("xi", M + 2);
    for (int m = 0; m <= M; ++m)
        for (int n = 0; n <= M; ++n)
            if (m + n + 2 <= M + 2) s.add_to(-m - n - 2, k(m, n));
    return s;
}

// a'(xi) b(-xi) - a(-xi) b'(xi) as a series through xi^{-K}.
inline Series1 faber_zagier_lhs(long K) {
    long L = K + 3;
    Series1 a = airy_a(L, "xi"), b = airy_b(L, "xi");
    return (a.derivative() * b.negate_var() - a.negate_var() * b.derivative()).truncated(K);
}

// -1 + 2 sum_{g>=1} (6g-3)!!/(24^g g!) xi^{-(6g-3)} through xi^{-K}.
inline Series1 faber_zagier_rhs(long K) {
    Series1 s("xi", K);
    s.set(0, -1);
    for (long g = 1; 6 * g - 3 <= K; ++g)
        s.set(-(6 * g - 3), Rational(2) * Rational(double_factorial(6 * g - 3)) /
                                (pow(Rational(24), static_cast<unsigned>(g)) * Rational(factorial(g))));
    return s;
}

inline bool faber_zagier_identity_check(long K) {
    if (K < 0) throw std::invalid_argument("order must be >= 0");
    return faber_zagier_lhs(K).agrees_with(faber_zagier_rhs(K), K);
}

// (6g-3)!!/(24^g g!), the coefficient of xi^{-(6g-2)} in A(xi, xi).
inline Rational one_point_coefficient(long g) {
    return Rational(double_factorial(6 * g - 3)) / (pow(Rational(24), static_cast<unsigned>(g)) * Rational(factorial(g)));
}

} // namespace wk
