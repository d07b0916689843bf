#pragma once

#include "wk/npoint.hpp"
#include "wk/sato.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

// Wave functions of a truncated tau-function.
//
// Everything lives in one graded ring: T_1..T_J (T_n of weight n) followed by
// auxiliary variables of weight 1 (u = 1/xi for each spectral point, or formal
// shift parameters s). Negative powers of u are allowed, so xi = u^{-1} has weight -1.
// The prefactor exp(+-sum T_n xi^n) has weight 0 and is carried symbolically.

namespace wk {

struct WaveError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class WaveRing {
public:
    WaveRing(int J, int extra) : J_(J), extra_(extra) {
        if (J < 1) throw WaveError("need at least one time variable");
        for (int n = 1; n <= J; ++n) grades_.push_back(n);
        for (int k = 0; k < extra; ++k) grades_.push_back(1);
    }

    int J() const { return J_; }
    int extra() const { return extra_; }
    const std::vector<int>& grades() const { return grades_; }
    int T(int n) const { return n - 1; }
    int aux(int k) const { return J_ + k; }
    std::vector<int> time_vars() const {
        std::vector<int> v;
        for (int n = 1; n <= J_; ++n) v.push_back(n - 1);
        return v;
    }

    MultiPoly one() const { return MultiPoly::constant(grades_, 1); }
    MultiPoly monomial(int var, int power, const Rational& c = 1) const {
        MultiPoly::Exps e(grades_.size(), 0);
        e[static_cast<std::size_t>(var)] = power;
        MultiPoly p(grades_);
        p.add_term(e, c);
        return p;
    }

    // Embed a polynomial in T_1..T_J (possibly fewer variables) into this ring.
    MultiPoly lift(const MultiPoly& p) const {
        if (static_cast<int>(p.nvars()) > J_) throw WaveError("polynomial has more time variables than the ring");
        for (std::size_t k = 0; k < p.nvars(); ++k)
            if (p.grades()[k] != grades_[k]) throw WaveError("polynomial is not weight-graded");
        MultiPoly r(grades_, p.cap());
        MultiPoly::Exps e(grades_.size(), 0);
        for (auto& [f, c] : p.terms()) {
            std::copy(f.begin(), f.end(), e.begin());
            r.add_term(e, c);
        }
        return r;
    }

    // xi * p for the spectral point carried by auxiliary variable var.
    MultiPoly xi_times(const MultiPoly& p, int var) const {
        MultiPoly::Exps e(grades_.size(), 0);
        e[static_cast<std::size_t>(var)] = -1;
        return p.times_monomial(e);
    }
    // d/dxi = -u^2 d/du
    MultiPoly d_xi(const MultiPoly& p, int var) const {
        MultiPoly::Exps e(grades_.size(), 0);
        e[static_cast<std::size_t>(var)] = 2;
        return p.derivative(var).times_monomial(e, Rational(-1));
    }
    // sum_n n T_n xi^{n-1}
    MultiPoly P_xi(int var) const {
        MultiPoly r(grades_);
        MultiPoly::Exps e(grades_.size(), 0);
        for (int n = 1; n <= J_; ++n) {
            std::fill(e.begin(), e.end(), 0);
            e[static_cast<std::size_t>(n - 1)] = 1;
            e[static_cast<std::size_t>(var)] = 1 - n;
            r.add_term(e, Rational(n));
        }
        return r;
    }
    // nabla(xi) p = sum_n xi^{-n-1} dp/dT_n
    MultiPoly nabla(const MultiPoly& p, int var) const {
        MultiPoly r(grades_, kExact);
        bool first = true;
        for (int n = 1; n <= J_; ++n) {
            MultiPoly::Exps e(grades_.size(), 0);
            e[static_cast<std::size_t>(var)] = n + 1;
            MultiPoly t = p.derivative(n - 1).times_monomial(e);
            if (first) { r = t; first = false; }
            else r += t;
        }
        return r;
    }

private:
    int J_, extra_;
    std::vector<int> grades_;
};

// tau(T) restricted to T_n = 0 for n > J, exact through weight cap().
class TruncatedTau {
public:
    TruncatedTau(MultiPoly poly, std::string source) : poly_(std::move(poly)), source_(std::move(source)) {
        for (std::size_t k = 0; k < poly_.nvars(); ++k)
            if (poly_.grades()[k] != static_cast<int>(k) + 1) throw WaveError("tau must be weight-graded in T_1..T_J");
        if (poly_.cap() >= kExact) throw WaveError("tau needs a finite weight cap");
        if (!poly_.constant_term().is_one()) throw WaveError("tau must have constant term 1");
    }

    static TruncatedTau vacuum(int J, long D) {
        std::vector<int> g;
        for (int n = 1; n <= J; ++n) g.push_back(n);
        return TruncatedTau(MultiPoly::constant(g, 1, std::min<long>(J, D)), "vacuum");
    }

    // Sato route: Plücker coordinates of the Airy point, Schur polynomials in T.
    static TruncatedTau airy_schur(int J, long D, Convention conv = Convention::Standard) {
        int W = static_cast<int>(std::min<long>(J, D));
        AffineCoords a(kernel_from_closed_form(std::max(W - 1, 0), conv));
        return TruncatedTau(tau_polynomial(tau_schur_expansion(a, W), J, W),
                            "airy-schur J=" + std::to_string(J) + " D=" + std::to_string(D));
    }

    // Correlator route: exp of the free energy assembled from intersection numbers.
    static TruncatedTau airy_free_energy(int J, long D) {
        long W = std::min<long>(J, D);
        Kernel K = kernel_from_closed_form(static_cast<int>(W) * 2 + 6);
        MultiPoly F = free_energy_truncation(J, static_cast<int>(W), K, Grading::Weight, W);
        return TruncatedTau(F.exp(), "airy-free-energy J=" + std::to_string(J) + " D=" + std::to_string(D));
    }

    const MultiPoly& poly() const { return poly_; }
    int J() const { return static_cast<int>(poly_.nvars()); }
    long cap() const { return poly_.cap(); }
    const std::string& source() const { return source_; }

    bool is_kdv() const {
        for (auto& [e, c] : poly_.terms())
            for (std::size_t k = 1; k < e.size(); k += 2)
                if (e[k] != 0) return false;
        return true;
    }

    MultiPoly free_energy() const { return MultiPoly::log1p(poly_ - poly_.one_like()); }

private:
    MultiPoly poly_;
    std::string source_;
};

// body * prod_v exp(sign_v sum_n T_n xi_v^n), with xi_v = 1/u_v.
struct WaveSeries {
    MultiPoly body;
    std::map<int, int> prefactor;  // auxiliary variable index -> exponent sign

    friend WaveSeries operator*(const WaveSeries& a, const WaveSeries& b) {
        WaveSeries r{a.body * b.body, a.prefactor};
        for (auto& [v, s] : b.prefactor) {
            r.prefactor[v] += s;
            if (r.prefactor[v] == 0) r.prefactor.erase(v);
        }
        return r;
    }
};

inline WaveSeries d_x(const WaveRing& R, const WaveSeries& w) {
    WaveSeries r{w.body.derivative(0), w.prefactor};
    for (auto& [v, s] : w.prefactor) {
        MultiPoly t = R.xi_times(w.body, v) * Rational(s);
        r.body += t;
    }
    return r;
}

// d/dxi for the spectral point var; acts on the prefactor and the body.
inline WaveSeries d_xi(const WaveRing& R, const WaveSeries& w, int var) {
    WaveSeries r{R.d_xi(w.body, var), w.prefactor};
    auto it = w.prefactor.find(var);
    if (it != w.prefactor.end()) r.body += R.P_xi(var) * w.body * Rational(it->second);
    return r;
}

// {p, q} = p q_x - p_x q
inline WaveSeries wronskian(const WaveRing& R, const WaveSeries& p, const WaveSeries& q) {
    WaveSeries a = p * d_x(R, q), b = d_x(R, p) * q;
    if (a.prefactor != b.prefactor) throw WaveError("prefactor mismatch in Wronskian");
    a.body -= b.body;
    return a;
}

// tau(T + sign [u]) with T_n -> T_n + sign u^n / n.
inline MultiPoly shifted_tau(const WaveRing& R, const MultiPoly& tau, int var, int sign) {
    return tau.shift_substitute(R.time_vars(), var, sign);
}

// w(T; xi) = exp(sum T_n xi^n) tau(T - [1/xi]) / tau(T)
inline WaveSeries wave(const WaveRing& R, const TruncatedTau& tau, int var) {
    MultiPoly t = R.lift(tau.poly());
    return {shifted_tau(R, t, var, -1) * t.inverse(), {{var, 1}}};
}

// w*(T; xi) = exp(-sum T_n xi^n) tau(T + [1/xi]) / tau(T)
inline WaveSeries dual_wave(const WaveRing& R, const TruncatedTau& tau, int var) {
    MultiPoly t = R.lift(tau.poly());
    return {shifted_tau(R, t, var, +1) * t.inverse(), {{var, -1}}};
}

// Prefactor-stripped w(0; xi) as a series in xi.
inline Series1 wave_at_zero(const TruncatedTau& tau) {
    WaveRing R(tau.J(), 1);
    MultiPoly w = wave(R, tau, R.aux(0)).body.at_zero(R.time_vars());
    Series1 s("xi", w.cap());
    for (auto& [e, c] : w.terms()) s.set(-e[static_cast<std::size_t>(R.aux(0))], c);
    return s;
}

// Prefactor-stripped d_x w at T = 0.
inline Series1 wave_x_at_zero(const TruncatedTau& tau) {
    WaveRing R(tau.J(), 1);
    MultiPoly w = d_x(R, wave(R, tau, R.aux(0))).body.at_zero(R.time_vars());
    // xi has weight -1, so the series is exact down to xi^{-cap}.
    Series1 s("xi", w.cap());
    for (auto& [e, c] : w.terms()) s.set(-e[static_cast<std::size_t>(R.aux(0))], c);
    return s;
}

struct IdentityReport {
    bool ok = true;
    long weight = 0;  // identity checked on every monomial of weight <= weight
    std::string detail;
};

inline IdentityReport compare(const MultiPoly& a, const MultiPoly& b, const std::string& what) {
    long g = std::min(a.cap(), b.cap());
    IdentityReport r{a.agrees_with(b, g), g, what};
    return r;
}

// {w(T; xi), w*(T; xi)} = -2 xi
inline IdentityReport wronskian_check(const TruncatedTau& tau) {
    WaveRing R(tau.J(), 1);
    int u = R.aux(0);
    WaveSeries W = wronskian(R, wave(R, tau, u), dual_wave(R, tau, u));
    if (!W.prefactor.empty()) throw WaveError("prefactors did not cancel");
    return compare(W.body, R.xi_times(R.one(), u) * Rational(-2), "{w,w*} = -2 xi");
}

struct OnePointFormsReport {
    IdentityReport first;    // -(1/2xi)({d w, w*} + 1)
    IdentityReport second;   // (1/2xi)({w, d w*} + 1)
    IdentityReport third;    // (1/4xi)({w, d w*} - {d w, w*})
    bool ok() const { return first.ok && second.ok && third.ok; }
};

// sum n T_n xi^{n-1} + nabla(xi) F against the three Wronskian expressions.
inline OnePointFormsReport one_point_forms_check(const TruncatedTau& tau) {
    WaveRing R(tau.J(), 1);
    int u = R.aux(0);
    WaveSeries w = wave(R, tau, u), ws = dual_wave(R, tau, u);
    WaveSeries A = wronskian(R, d_xi(R, w, u), ws);   // {d_xi w, w*}
    WaveSeries B = wronskian(R, w, d_xi(R, ws, u));   // {w, d_xi w*}
    if (!A.prefactor.empty() || !B.prefactor.empty()) throw WaveError("prefactors did not cancel");
    MultiPoly lhs = R.P_xi(u) + R.nabla(R.lift(tau.free_energy()), u);
    MultiPoly one = R.one(), uu = R.monomial(u, 1);
    OnePointFormsReport rep;
    rep.first = compare(lhs, (A.body + one) * uu * Rational(-1, 2), "first Wronskian form");
    rep.second = compare(lhs, (B.body + one) * uu * Rational(1, 2), "second Wronskian form");
    rep.third = compare(lhs, (B.body - A.body) * uu * Rational(1, 4), "symmetric Wronskian form");
    return rep;
}

// w(T; xi) w*(T; xi) = 1 + d_x nabla(xi) F
inline IdentityReport one_point_wave_check(const TruncatedTau& tau) {
    WaveRing R(tau.J(), 1);
    int u = R.aux(0);
    WaveSeries P = wave(R, tau, u) * dual_wave(R, tau, u);
    MultiPoly rhs = R.one() + R.nabla(R.lift(tau.free_energy()), u).derivative(0);
    return compare(P.body, rhs, "w w* = 1 + d_x nabla F");
}

struct FayReport {
    IdentityReport plain;    // s1 s2 {tau(T+[s1]), tau(T+[s2])} = (s1 - s2)(...)
    IdentityReport shifted;  // s1 s2 {tau(T+[s1]-[s2]), tau(T)} = (s1 - s2)(...)
    bool ok() const { return plain.ok && shifted.ok; }
};

// Differential Fay identity and its shifted form (T -> T - [s2]), cleared of denominators.
// Only monomials with s-degree at most sDegree in each shift parameter are compared.
inline FayReport differential_fay_check(const TruncatedTau& tau, int sDegree) {
    WaveRing R(tau.J(), 2);
    int s1 = R.aux(0), s2 = R.aux(1);
    MultiPoly t = R.lift(tau.poly());
    MultiPoly t1 = shifted_tau(R, t, s1, 1), t2 = shifted_tau(R, t, s2, 1);
    MultiPoly t12 = shifted_tau(R, t1, s2, 1);
    MultiPoly t1m2 = shifted_tau(R, t1, s2, -1), tm2 = shifted_tau(R, t, s2, -1);
    MultiPoly s1s2 = R.monomial(s1, 1) * R.monomial(s2, 1);
    MultiPoly diff = R.monomial(s1, 1) - R.monomial(s2, 1);
    auto wr = [](const MultiPoly& a, const MultiPoly& b) { return a * b.derivative(0) - a.derivative(0) * b; };

    auto filtered = [&](const MultiPoly& p) {
        MultiPoly r(p.grades(), p.cap());
        for (auto& [e, c] : p.terms())
            if (e[static_cast<std::size_t>(s1)] <= sDegree && e[static_cast<std::size_t>(s2)] <= sDegree) r.add_term(e, c);
        return r;
    };
    FayReport rep;
    rep.plain = compare(filtered(s1s2 * wr(t1, t2)), filtered(diff * (t1 * t2 - t * t12)), "differential Fay");
    rep.shifted = compare(filtered(s1s2 * wr(t1m2, t)), filtered(diff * (t1m2 * t - t1 * tm2)), "shifted differential Fay");
    return rep;
}

// Theta = (1/2) [[-R_x, -2R], [2 w_x w*_x, R_x]] with R = w w*; entries are prefactor-free.
struct Theta {
    MultiPoly t11, t12, t21, t22;
};

inline Theta bdy_theta(const WaveRing& R, const TruncatedTau& tau, int var) {
    if (!tau.is_kdv()) throw WaveError("Theta matrix needs a KdV tau-function");
    WaveSeries w = wave(R, tau, var), ws = dual_wave(R, tau, var);
    WaveSeries P = w * ws, Q = d_x(R, w) * d_x(R, ws);
    if (!P.prefactor.empty() || !Q.prefactor.empty()) throw WaveError("prefactors did not cancel");
    MultiPoly Rx = P.body.derivative(0);
    return {Rx * Rational(-1, 2), -P.body, Q.body, Rx * Rational(1, 2)};
}

// One-point data from Theta: -Theta_12 - 1 = d_x nabla(xi) F.
inline IdentityReport bdy_one_point_check(const TruncatedTau& tau) {
    WaveRing R(tau.J(), 1);
    int u = R.aux(0);
    Theta th = bdy_theta(R, tau, u);
    MultiPoly lhs = -th.t12 - R.one();
    MultiPoly rhs = R.nabla(R.lift(tau.free_energy()), u).derivative(0);
    IdentityReport rep = compare(lhs, rhs, "-Theta12 - 1 = d_x nabla F");
    MultiPoly tr = th.t11 + th.t22;
    if (!tr.empty()) {
        rep.ok = false;
        rep.detail += "; trace nonzero";
    }
    return rep;
}

// -Theta_12(xi; 0) - 1 as a series in xi.
inline Series1 bdy_one_point_at_zero(const TruncatedTau& tau) {
    WaveRing R(tau.J(), 1);
    int u = R.aux(0);
    Theta th = bdy_theta(R, tau, u);
    MultiPoly p = (-th.t12 - R.one()).at_zero(R.time_vars());
    Series1 s("xi", p.cap());
    for (auto& [e, c] : p.terms()) s.set(-e[static_cast<std::size_t>(u)], c);
    return s;
}

// Two-point data at T = 0: Tr(Theta(z1) Theta(z2)) - (z1^2 + z2^2), which should equal
// (z1^2 - z2^2)^2 nabla(z1) nabla(z2) F at T = 0. Returns both sides in the two spectral variables.
struct TwoPointSides {
    MultiPoly theta_side;
    MultiPoly free_energy_side;
    WaveRing ring;
};

inline TwoPointSides bdy_two_point(const TruncatedTau& tau) {
    WaveRing R(tau.J(), 2);
    int u1 = R.aux(0), u2 = R.aux(1);
    Theta a = bdy_theta(R, tau, u1), b = bdy_theta(R, tau, u2);
    MultiPoly tr = a.t11 * b.t11 + a.t12 * b.t21 + a.t21 * b.t12 + a.t22 * b.t22;
    MultiPoly z1sq = R.monomial(u1, -2), z2sq = R.monomial(u2, -2);
    MultiPoly theta_side = (tr - z1sq - z2sq).at_zero(R.time_vars());
    MultiPoly F = R.lift(tau.free_energy());
    MultiPoly nn = R.nabla(R.nabla(F, u1), u2).at_zero(R.time_vars());
    MultiPoly delta = z1sq - z2sq;
    return {theta_side, delta * delta * nn, R};
}

inline IdentityReport bdy_two_point_check(const TruncatedTau& tau) {
    auto s = bdy_two_point(tau);
    return compare(s.theta_side, s.free_energy_side, "Tr(Theta Theta) two-point formula");
}

} // namespace wk
