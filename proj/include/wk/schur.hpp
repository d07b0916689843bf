#pragma once

#include "wk/determinant.hpp"
#include "wk/multipoly.hpp"
#include "wk/partition.hpp"
#include "wk/series2.hpp"

#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace wk {

// Values of the power sums p_1..p_K in a commutative ring R that admits
// scaling by Rational.
template <class R>
struct PowerSumSpec {
    std::vector<R> p;  // p[k] for k = 1..K; p[0] unused
    R zero;
    R one;

    int bound() const { return static_cast<int>(p.size()) - 1; }
};

struct SpecializationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class R>
R ring_det(const Matrix<R>& m, const R& zero, const R& one) {
    if constexpr (std::is_same_v<R, Rational>) return det_bareiss(m);
    else return det_laplace(m, zero, one);
}

// h_0..h_n from k h_k = sum_{i=1}^k p_i h_{k-i}.
template <class R>
std::vector<R> complete_symmetric(const PowerSumSpec<R>& s, int n) {
    if (n > s.bound()) throw SpecializationError("specialization bound " + std::to_string(s.bound()) +
                                                 " below required degree " + std::to_string(n));
    std::vector<R> h{s.one};
    for (int k = 1; k <= n; ++k) {
        R acc = s.zero;
        for (int i = 1; i <= k; ++i) acc += s.p[static_cast<std::size_t>(i)] * h[static_cast<std::size_t>(k - i)];
        h.push_back(acc * Rational(1, k));
    }
    return h;
}

// e_0..e_n from k e_k = sum_{i=1}^k (-1)^{i-1} p_i e_{k-i}.
template <class R>
std::vector<R> elementary_symmetric(const PowerSumSpec<R>& s, int n) {
    if (n > s.bound()) throw SpecializationError("specialization bound " + std::to_string(s.bound()) +
                                                 " below required degree " + std::to_string(n));
    std::vector<R> e{s.one};
    for (int k = 1; k <= n; ++k) {
        R acc = s.zero;
        for (int i = 1; i <= k; ++i) {
            R t = s.p[static_cast<std::size_t>(i)] * e[static_cast<std::size_t>(k - i)];
            if (i % 2) acc += t;
            else acc -= t;
        }
        e.push_back(acc * Rational(1, k));
    }
    return e;
}

namespace detail {
template <class R>
R jacobi_trudi(const std::vector<int>& rows, const std::vector<R>& seq, const PowerSumSpec<R>& s) {
    const int n = static_cast<int>(rows.size());
    Matrix<R> m(static_cast<std::size_t>(n), std::vector<R>(static_cast<std::size_t>(n), s.zero));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int k = rows[static_cast<std::size_t>(i)] - i + j;
            if (k >= 0) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = seq[static_cast<std::size_t>(k)];
        }
    return ring_det(m, s.zero, s.one);
}
} // namespace detail

// s_mu = det(h_{mu_i - i + j}), size l(mu).
template <class R>
R schur_h(const Partition& mu, const PowerSumSpec<R>& s) {
    if (mu.empty()) return s.one;
    // mu_1 + l - 1 <= |mu|, so the bound check in schur_at covers this.
    auto h = complete_symmetric(s, mu.part(0) + mu.length() - 1);
    return detail::jacobi_trudi(mu.parts(), h, s);
}

// s_mu = det(e_{mu^t_i - i + j}), size mu_1.
template <class R>
R schur_e(const Partition& mu, const PowerSumSpec<R>& s) {
    if (mu.empty()) return s.one;
    Partition t = mu.conjugate();
    auto e = elementary_symmetric(s, t.part(0) + t.length() - 1);
    return detail::jacobi_trudi(t.parts(), e, s);
}

// Uses the smaller of the two Jacobi-Trudi determinants.
template <class R>
R schur_at(const Partition& mu, const PowerSumSpec<R>& s) {
    if (mu.weight() > s.bound())
        throw SpecializationError("specialization bound " + std::to_string(s.bound()) + " below |mu| = " +
                                  std::to_string(mu.weight()));
    return mu.length() <= mu.part(0) ? schur_h(mu, s) : schur_e(mu, s);
}

// ---- concrete specializations ----

inline PowerSumSpec<Rational> rational_spec(const std::vector<Rational>& p1k) {
    PowerSumSpec<Rational> s{{Rational(0)}, Rational(0), Rational(1)};
    s.p.insert(s.p.end(), p1k.begin(), p1k.end());
    return s;
}

// p_k = u * x^{-k} + v * y^{-k} with u, v in {+1, -1}, as exact bivariate polynomials in x^{-1}, y^{-1}.
inline PowerSumSpec<Series2> two_point_spec(int K, const std::string& x, const std::string& y, int u, int v) {
    PowerSumSpec<Series2> s{{Series2(x, y)}, Series2(x, y), Series2::constant(x, y, 1)};
    for (int k = 1; k <= K; ++k) {
        Series2 pk(x, y);
        pk.add_to(-k, 0, Rational(u));
        pk.add_to(0, -k, Rational(v));
        s.p.push_back(pk);
    }
    return s;
}

// p_k = k T_k as polynomials in T_1..T_J (variable index k-1) of the given grading.
inline PowerSumSpec<MultiPoly> time_spec(const std::vector<int>& grades, int J, long cap) {
    MultiPoly zero(grades, kExact);
    PowerSumSpec<MultiPoly> s{{zero}, zero, MultiPoly::constant(grades, 1)};
    for (int k = 1; k <= J; ++k) s.p.push_back(MultiPoly::variable(grades, k - 1, Rational(k), kExact).capped(cap));
    return s;
}

// h_n at p_k = y^{-k} + (-x)^{-k}: sum_{i+j=n} (-1)^i x^{-i} y^{-j}.
inline Series2 two_point_hk(int n, const std::string& x = "x", const std::string& y = "y") {
    if (n < 0) throw std::invalid_argument("h_n with n < 0");
    Series2 r(x, y);
    for (int i = 0; i <= n; ++i) r.add_to(-i, -(n - i), Rational(i % 2 ? -1 : 1));
    return r;
}

// s_{(m|n)} at p_k = eta^{-k} - xi^{-k} equals (-1)^n (xi - eta) xi^{-n-1} eta^{-m-1}.
inline bool hook_spec_identity_check(int m, int n) {
    Partition mu = Partition::hook(m, n);
    auto spec = two_point_spec(mu.weight(), "xi", "eta", -1, +1);
    Series2 lhs = schur_at(mu, spec);
    Series2 rhs("xi", "eta");
    Rational sg(n % 2 ? -1 : 1);
    rhs.add_to(-n, -m - 1, sg);
    rhs.add_to(-n - 1, -m, -sg);
    return lhs == rhs;
}

} // namespace wk
