#pragma once

#include "wk/airy.hpp"
#include "wk/schur.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

// Frames use integer exponents: f_n = z^n + sum_{k<n} c_{n,k} z^k stands for the
// half-integer basis element z^{n+1/2} + ...; the common z^{1/2} is left implicit.

namespace wk {

struct FrameError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class AdmissibleFrame {
public:
    AdmissibleFrame() = default;
    explicit AdmissibleFrame(std::vector<Series1> basis) : basis_(std::move(basis)) {
        for (std::size_t n = 0; n < basis_.size(); ++n) {
            const auto& f = basis_[n];
            if (f.max_exp() != static_cast<long>(n) || !f.raw_coeff(static_cast<long>(n)).is_one())
                throw FrameError("basis element " + std::to_string(n) + " does not start with z^" + std::to_string(n));
        }
    }

    std::size_t size() const { return basis_.size(); }
    const Series1& operator[](std::size_t n) const { return basis_.at(n); }
    const std::vector<Series1>& basis() const { return basis_; }

    // Coefficient c_{n,k} of z^k in f_n.
    Rational c(int n, int k) const { return basis_.at(static_cast<std::size_t>(n)).coeff(k); }

private:
    std::vector<Series1> basis_;
};

// Table a_{n,m} of the normalized basis f_n = z^n + sum_m a_{n,m} z^{-m-1}, 0 <= n, m <= M.
class AffineCoords {
public:
    AffineCoords() = default;
    explicit AffineCoords(int M) : M_(M), a_(static_cast<std::size_t>((M + 1) * (M + 1)), Rational(0)) {}
    explicit AffineCoords(const Kernel& k) : AffineCoords(k.cutoff()) {
        for (int n = 0; n <= M_; ++n)
            for (int m = 0; m <= M_; ++m) set(n, m, k(n, m));
    }

    int cutoff() const { return M_; }
    const Rational& operator()(int n, int m) const {
        if (n < 0 || m < 0 || n > M_ || m > M_)
            throw FrameError("affine coordinate (" + std::to_string(n) + "," + std::to_string(m) + ") beyond cutoff " + std::to_string(M_));
        return a_[static_cast<std::size_t>(n * (M_ + 1) + m)];
    }
    void set(int n, int m, Rational v) { a_.at(static_cast<std::size_t>(n * (M_ + 1) + m)) = std::move(v); }

    // A(x, y) = sum a_{m,n} x^{-m-1} y^{-n-1}; the kernel table has the same layout.
    Kernel as_kernel(const std::string& route = "normalized-frame") const {
        Kernel k(M_, route);
        for (int m = 0; m <= M_; ++m)
            for (int n = 0; n <= M_; ++n) k.set(m, n, (*this)(m, n));
        return k;
    }

    friend bool operator==(const AffineCoords&, const AffineCoords&) = default;

private:
    int M_ = -1;
    std::vector<Rational> a_;
};

inline AdmissibleFrame vacuum_frame(int depth) {
    std::vector<Series1> b;
    for (int n = 0; n < depth; ++n) b.push_back(Series1::monomial("z", n));
    return AdmissibleFrame(std::move(b));
}

// f_{2n} = z^{2n} a(z), f_{2n+1} = z^{2n} b(z), each truncated at order K of a, b.
inline AdmissibleFrame airy_frame(int depth, long K, Convention conv = Convention::Standard) {
    Series1 a = generator_a(K, "z", conv), b = generator_b(K, "z", conv);
    std::vector<Series1> basis;
    for (int n = 0; n < depth; ++n) basis.push_back(n % 2 == 0 ? a.shifted(n) : b.shifted(n - 1));
    return AdmissibleFrame(std::move(basis));
}

// Frame whose normalized basis has the given coordinates.
inline AdmissibleFrame frame_from_coords(const AffineCoords& a) {
    const int M = a.cutoff();
    std::vector<Series1> basis;
    for (int n = 0; n <= M; ++n) {
        Series1 f("z", M + 1);
        f.set(n, 1);
        for (int m = 0; m <= M; ++m) f.set(-m - 1, a(n, m));
        basis.push_back(f);
    }
    return AdmissibleFrame(std::move(basis));
}

// Gauss elimination: clear every nonnegative power below the leading one.
inline std::vector<Series1> normalized_basis(const AdmissibleFrame& frame, int count) {
    if (static_cast<int>(frame.size()) < count)
        throw FrameError("frame has " + std::to_string(frame.size()) + " elements, need " + std::to_string(count));
    std::vector<Series1> out;
    for (int n = 0; n < count; ++n) {
        Series1 f = frame[static_cast<std::size_t>(n)];
        for (int k = n - 1; k >= 0; --k) {
            Rational c = f.raw_coeff(k);
            if (!c.is_zero()) f -= out[static_cast<std::size_t>(k)] * c;
        }
        out.push_back(f);
    }
    return out;
}

inline AffineCoords normalize(const AdmissibleFrame& frame, int M) {
    auto nb = normalized_basis(frame, M + 1);
    AffineCoords a(M);
    for (int n = 0; n <= M; ++n) {
        const auto& f = nb[static_cast<std::size_t>(n)];
        if (f.reliable() < M + 1)
            throw FrameError("frame element " + std::to_string(n) + " reliable only to z^-" +
                             std::to_string(f.reliable()) + ", need z^-" + std::to_string(M + 1));
        for (int m = 0; m <= M; ++m) a.set(n, m, f.coeff(-m - 1));
    }
    return a;
}

// The Airy frame needs order 2M+1 for its top element to reach z^{-M-1}.
inline Kernel kernel_from_frame(int M, Convention conv = Convention::Standard) {
    return normalize(airy_frame(M + 1, 2L * M + 3, conv), M).as_kernel();
}

// (-1)^{n_1+...+n_l} det(a_{n_i, m_j}).
inline Rational plucker_minor(const AffineCoords& a, const Partition& mu) {
    auto f = mu.frobenius();
    const std::size_t l = f.size();
    Matrix<Rational> m(l, std::vector<Rational>(l));
    long nsum = 0;
    for (std::size_t i = 0; i < l; ++i) {
        nsum += f[i].second;
        for (std::size_t j = 0; j < l; ++j) m[i][j] = a(f[i].second, f[j].first);
    }
    Rational d = det_bareiss(std::move(m));
    return nsum % 2 ? -d : d;
}

// Determinant of the admissible-basis matrix B_mu: rows f_0..f_{n_1}; columns the
// exponents -m_1-1 < ... < -m_l-1 followed by the exponents in {0..n_1} \ {n_i}, ascending.
// With this column order det B_mu equals the Plücker coordinate exactly.
inline Rational plucker_from_admissible(const AdmissibleFrame& frame, const Partition& mu) {
    if (mu.empty()) return Rational(1);
    auto f = mu.frobenius();
    const int n1 = f[0].second;
    if (static_cast<int>(frame.size()) < n1 + 1)
        throw FrameError("frame depth " + std::to_string(frame.size()) + " below required " + std::to_string(n1 + 1));
    std::vector<int> cols;
    for (auto it = f.begin(); it != f.end(); ++it) cols.push_back(-it->first - 1);
    std::sort(cols.begin(), cols.end());
    for (int k = 0; k <= n1; ++k) {
        bool leg = false;
        for (auto& [mi, ni] : f) leg = leg || ni == k;
        if (!leg) cols.push_back(k);
    }
    Matrix<Rational> B(static_cast<std::size_t>(n1 + 1), std::vector<Rational>(cols.size()));
    for (int r = 0; r <= n1; ++r)
        for (std::size_t j = 0; j < cols.size(); ++j) B[static_cast<std::size_t>(r)][j] = frame.c(r, cols[j]);
    return det_bareiss(std::move(B));
}

// c_mu for every |mu| <= W; needs m_1, n_1 <= M, i.e. W <= M + 1.
inline std::map<Partition, Rational> tau_schur_expansion(const AffineCoords& a, int W) {
    if (W > a.cutoff() + 1)
        throw FrameError("weight cap " + std::to_string(W) + " exceeds what cutoff " + std::to_string(a.cutoff()) + " supports");
    std::map<Partition, Rational> c;
    for (auto& mu : partitions_up_to(W)) {
        Rational v = plucker_minor(a, mu);
        if (!v.is_zero()) c.emplace(mu, v);
    }
    return c;
}

// tau(T) = sum c_mu s_mu(p_k = k T_k) as a polynomial in T_1..T_J, weight-graded (T_k of weight k).
inline MultiPoly tau_polynomial(const std::map<Partition, Rational>& c, int J, int W) {
    std::vector<int> grades;
    for (int k = 1; k <= J; ++k) grades.push_back(k);
    auto spec = time_spec(grades, J, W);
    MultiPoly tau(grades, W);
    for (auto& [mu, v] : c) {
        if (mu.weight() > W) continue;
        tau += schur_at(mu, spec) * v;
    }
    return tau;
}

enum class TwoPointVariant {
    EtaMinusXi,  // p_k = eta^{-k} - xi^{-k}, variables (xi, eta)
    PlusPlus     // p_k = x^{-k} + y^{-k}, variables (x, y)
};

// sum_mu c_mu s_mu at the two-point specialization, exact through total depth W.
inline Series2 tau_two_point_specialization(const AffineCoords& a, int W, TwoPointVariant v) {
    auto c = tau_schur_expansion(a, W);
    bool minus = v == TwoPointVariant::EtaMinusXi;
    std::string x = minus ? "xi" : "x", y = minus ? "eta" : "y";
    auto spec = two_point_spec(W, x, y, minus ? -1 : 1, 1);
    Series2 tau = Series2::constant(x, y, 1).depth_truncated(W);
    for (auto& [mu, val] : c) {
        if (mu.empty()) continue;
        // Vanishing shapes: only hooks survive for EtaMinusXi, only l(mu) <= 2 for PlusPlus.
        if (minus && mu.frobenius().size() > 1) continue;
        if (!minus && mu.length() > 2) continue;
        tau += schur_at(mu, spec) * val;
    }
    return tau;
}

// 1 + (xi - eta) A(xi, eta) with A(xi, eta) = sum a_{m,n} xi^{-m-1} eta^{-n-1}, through depth W.
inline Series2 two_point_from_coords(const AffineCoords& a, int W) {
    Series2 r = Series2::constant("xi", "eta", 1).depth_truncated(W);
    for (int m = 0; m <= a.cutoff(); ++m)
        for (int n = 0; n <= a.cutoff(); ++n) {
            const Rational& v = a(m, n);
            if (v.is_zero()) continue;
            r.add_to(-m, -n - 1, v);
            r.add_to(-m - 1, -n, -v);
        }
    return r;
}

// Residual of multiplier * f_n after reduction against the normalized frame.
inline Series1 reduction_residual(const std::vector<Series1>& normalized, const Series1& g_in) {
    Series1 g = g_in;
    for (long k = g.max_exp(); k >= 0; --k) {
        Rational c = g.raw_coeff(k);
        if (c.is_zero()) continue;
        if (k >= static_cast<long>(normalized.size()))
            throw FrameError("reduction needs normalized element " + std::to_string(k));
        g -= normalized[static_cast<std::size_t>(k)] * c;
    }
    return g;
}

struct ReductionReport {
    bool ok = true;
    int tested = 0;       // number of basis elements checked
    long window = 0;      // residual checked down to z^{-window}
    int first_failure = -1;
    Series1 residual;
};

// multiplier * f_n lies in the span for every n whose product stays inside the frame.
inline ReductionReport reduction_check(const AdmissibleFrame& frame, const Series1& multiplier) {
    if (multiplier.empty()) return {};
    const long deg = multiplier.max_exp();
    const int count = static_cast<int>(frame.size());
    auto nb = normalized_basis(frame, count);
    ReductionReport rep;
    rep.window = kExact;
    for (int n = 0; n + deg < count; ++n) {
        Series1 g = reduction_residual(nb, multiplier.retagged("z") * frame[static_cast<std::size_t>(n)]);
        rep.window = std::min(rep.window, g.reliable());
        ++rep.tested;
        if (!g.empty()) {
            rep.ok = false;
            rep.first_failure = n;
            rep.residual = g;
            return rep;
        }
    }
    return rep;
}

// D = z + 1/(2 z^2) - (1/z) d/dz
inline Series1 airy_D(const Series1& f) {
    return f.shifted(1) + f.shifted(-2) * Rational(1, 2) - f.derivative().shifted(-1);
}

// Dc = q and D^2 c = z^2 c through z^{-K}.
inline bool airy_D_check(long K) {
    long L = K + 3;
    Series1 c = airy_c(L, "z"), q = airy_q(L, "z");
    Series1 Dc = airy_D(c), DDc = airy_D(Dc);
    return Dc.agrees_with(q, K) && DDc.agrees_with(c.shifted(2), K);
}

} // namespace wk
