#pragma once

#include "wk/kp_wave.hpp"
#include "wk/npoint.hpp"
#include "wk/sato.hpp"
#include "wk/schur.hpp"

#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

// Named self-checks grouped by module, shared by the CLI and the acceptance gate.

namespace wk::verify {

struct CheckResult {
    std::string suite;
    std::string name;
    bool ok = false;
    std::string detail;
};

struct Options {
    bool small = false;  // reduced sizes for smoke runs
};

namespace detail {

inline CheckResult run(const std::string& suite, const std::string& name, const std::function<std::string(bool&)>& body) {
    CheckResult r{suite, name, false, ""};
    try {
        r.detail = body(r.ok);
    } catch (const std::exception& e) {
        r.ok = false;
        r.detail = std::string("exception: ") + e.what();
    }
    return r;
}

inline std::string where(const std::optional<std::array<int, 2>>& d) {
    if (!d) return "";
    return " first difference at (" + std::to_string((*d)[0]) + "," + std::to_string((*d)[1]) + ")";
}

// (6m-1)!!/(36^m (2m)!) written out directly.
inline Rational alpha(long m) {
    mpz_class num = 1;
    for (long k = 6 * m - 1; k > 1; k -= 2) num *= k;
    mpz_class den = 1;
    for (long k = 0; k < m; ++k) den *= 36;
    for (long k = 2; k <= 2 * m; ++k) den *= k;
    return Rational(num) / Rational(den);
}

} // namespace detail

inline std::vector<CheckResult> airy_suite(const Options& o) {
    const std::string S = "airy";
    const int M = o.small ? 6 : 12;
    std::vector<CheckResult> out;
    out.push_back(detail::run(S, "kernel routes agree (closed form, series, block matrix, frame)", [&](bool& ok) {
        Kernel c = kernel_from_closed_form(M);
        auto d1 = kernel_from_series(M).first_difference(c);
        auto d2 = kernel_from_gmatrix(M).first_difference(c);
        auto d3 = kernel_from_frame(M).first_difference(c);
        ok = !d1 && !d2 && !d3;
        return "cutoff " + std::to_string(M) + detail::where(d1 ? d1 : d2 ? d2 : d3);
    }));
    out.push_back(detail::run(S, "listed kernel entries", [&](bool& ok) {
        const std::vector<std::tuple<int, int, Rational>> listed{
            {0, 2, Rational(5, 24)},          {1, 1, Rational(-7, 24)},         {2, 0, Rational(5, 24)},
            {0, 5, Rational(385, 1152)},      {1, 4, Rational(-455, 1152)},     {5, 0, Rational(-385, 1152)},
            {0, 8, Rational(85085, 82944)},   {1, 7, Rational(-95095, 82944)},  {2, 6, Rational(85085, 82944)},
            {3, 5, Rational(-43505, 41472)},  {4, 4, Rational(45955, 41472)},  {8, 0, Rational(85085, 82944)}};
        Kernel k = kernel_from_closed_form(8);
        ok = true;
        std::string bad;
        for (auto& [m, n, v] : listed)
            if (k(m, n) != v) {
                ok = false;
                bad += " (" + std::to_string(m) + "," + std::to_string(n) + ")=" + k(m, n).str();
            }
        return ok ? std::to_string(listed.size()) + " entries" : "mismatch" + bad;
    }));
    out.push_back(detail::run(S, "series route cancellation of nonnegative exponents", [&](bool& ok) {
        ok = kernel_series_cancellation_check(M);
        return "cutoff " + std::to_string(M);
    }));
    out.push_back(detail::run(S, "diagonal one-point coefficients (6g-3)!!/(24^g g!)", [&](bool& ok) {
        Series1 d = kernel_diagonal(16);
        ok = d == diagonal_from_kernel(kernel_from_closed_form(14)).truncated(16);
        for (long g = 1; g <= 3; ++g) ok = ok && d.coeff(-(6 * g - 2)) == one_point_coefficient(g);
        ok = ok && d.coeff(-4) == Rational(1, 8) && d.coeff(-10) == Rational(105, 128) && d.coeff(-16) == Rational(25025, 1024);
        return "xi^-4 " + d.coeff(-4).str() + ", xi^-10 " + d.coeff(-10).str() + ", xi^-16 " + d.coeff(-16).str();
    }));
    out.push_back(detail::run(S, "Faber-Zagier identity", [&](bool& ok) {
        ok = faber_zagier_identity_check(24);
        return "through xi^-24";
    }));
    out.push_back(detail::run(S, "Faber-Zagier convention flag: routes agree", [&](bool& ok) {
        int m = std::min(M, 9);
        Kernel c = kernel_from_closed_form(m, Convention::FaberZagier);
        ok = !kernel_from_series(m, -1, Convention::FaberZagier).first_difference(c) &&
             !kernel_from_gmatrix(m, -1, Convention::FaberZagier).first_difference(c) &&
             !kernel_from_frame(m, Convention::FaberZagier).first_difference(c);
        return "cutoff " + std::to_string(m);
    }));
    return out;
}

inline std::vector<CheckResult> schur_suite(const Options& o) {
    const std::string S = "schur";
    std::vector<CheckResult> out;
    const int H = o.small ? 4 : 8, W = o.small ? 7 : 10;
    out.push_back(detail::run(S, "hook specialization identity", [&](bool& ok) {
        ok = true;
        for (int m = 0; m <= H && ok; ++m)
            for (int n = 0; n <= H && ok; ++n) ok = hook_spec_identity_check(m, n);
        return "all hooks m,n <= " + std::to_string(H);
    }));
    out.push_back(detail::run(S, "vanishing for l(mu) > 2 at p_k = y^-k + (-x)^-k", [&](bool& ok) {
        PowerSumSpec<Series2> spec{{Series2("x", "y")}, Series2("x", "y"), Series2::constant("x", "y", 1)};
        for (int k = 1; k <= W; ++k) {
            Series2 p("x", "y");
            p.add_to(-k, 0, Rational(k % 2 ? -1 : 1));
            p.add_to(0, -k, Rational(1));
            spec.p.push_back(p);
        }
        ok = true;
        int count = 0;
        for (auto& mu : partitions_up_to(W)) {
            if (mu.length() <= 2) continue;
            ++count;
            if (!schur_at(mu, spec).empty()) {
                ok = false;
                return "nonzero at " + mu.str();
            }
        }
        return std::to_string(count) + " partitions, |mu| <= " + std::to_string(W);
    }));
    out.push_back(detail::run(S, "h-route and e-route Jacobi-Trudi agree", [&](bool& ok) {
        std::mt19937 rng(1234);
        std::uniform_int_distribution<int> d(-9, 9);
        std::vector<Rational> p;
        for (int k = 1; k <= W; ++k) p.push_back(Rational(d(rng), 1 + std::abs(d(rng))));
        auto spec = rational_spec(p);
        ok = true;
        for (auto& mu : partitions_up_to(W))
            if (schur_h(mu, spec) != schur_e(mu, spec)) {
                ok = false;
                return "differ at " + mu.str();
            }
        return "|mu| <= " + std::to_string(W) + " at a random rational point";
    }));
    out.push_back(detail::run(S, "closed form of h_n at the two-point specialization", [&](bool& ok) {
        PowerSumSpec<Series2> spec{{Series2("x", "y")}, Series2("x", "y"), Series2::constant("x", "y", 1)};
        for (int k = 1; k <= W; ++k) {
            Series2 p("x", "y");
            p.add_to(-k, 0, Rational(k % 2 ? -1 : 1));
            p.add_to(0, -k, Rational(1));
            spec.p.push_back(p);
        }
        auto h = complete_symmetric(spec, W);
        ok = true;
        for (int n = 0; n <= W; ++n) ok = ok && h[static_cast<std::size_t>(n)] == two_point_hk(n);
        return "n <= " + std::to_string(W);
    }));
    return out;
}

inline std::vector<CheckResult> sato_suite(const Options& o) {
    const std::string S = "sato";
    const int M = o.small ? 8 : 12, W = o.small ? 6 : 9;
    std::vector<CheckResult> out;
    Kernel K = kernel_from_closed_form(M);
    AffineCoords a(K);
    out.push_back(detail::run(S, "Plücker minors equal admissible-basis determinants", [&](bool& ok) {
        auto fr = airy_frame(M + 1, 3L * M + 6);
        ok = true;
        for (auto& mu : partitions_up_to(std::min(W, 8)))
            if (plucker_minor(a, mu) != plucker_from_admissible(fr, mu)) {
                ok = false;
                return "differ at " + mu.str();
            }
        return "Airy frame, |mu| <= " + std::to_string(std::min(W, 8));
    }));
    out.push_back(detail::run(S, "Schur coefficients supported on |mu| = 0 mod 3", [&](bool& ok) {
        ok = true;
        for (auto& [mu, v] : tau_schur_expansion(a, W))
            if (mu.weight() % 3 != 0) ok = false;
        return "|mu| <= " + std::to_string(W);
    }));
    out.push_back(detail::run(S, "log tau gives <tau_0^3> = 1", [&](bool& ok) {
        auto tau = tau_polynomial(tau_schur_expansion(a, 3), 3, 3);
        auto F = MultiPoly::log1p(tau - tau.one_like());
        Rational v = F.coeff({3, 0, 0}) * Rational(6);
        ok = v == Rational(1);
        return "<tau_0^3> = " + v.str();
    }));
    out.push_back(detail::run(S, "two-point tau specialization equals 1 + (xi - eta) A(xi, eta)", [&](bool& ok) {
        ok = tau_two_point_specialization(a, W + 1, TwoPointVariant::EtaMinusXi).agrees_to_depth(two_point_from_coords(a, W + 1), W + 1);
        return "through total degree " + std::to_string(W + 1);
    }));
    out.push_back(detail::run(S, "listed plus-plus specialization terms", [&](bool& ok) {
        AffineCoords big(kernel_from_closed_form(12));
        Series2 pp = tau_two_point_specialization(big, 12, TwoPointVariant::PlusPlus);
        Series2 w("x", "y");
        w.add_to(-1, 0, 1);
        w.add_to(0, -1, -1);
        Series2 r = pp * w;
        ok = r.coeff(-4, 0) == Rational(5, 24) && r.coeff(0, -4) == Rational(-5, 24) &&
             r.coeff(-13, 0) == Rational(37182145, 7962624) && r.coeff(-1, -12) == Rational(-40415375, 7962624) &&
             r.coeff(-12, -1) == Rational(40415375, 7962624);
        return "x^-13 " + r.coeff(-13, 0).str() + ", x^-1 y^-12 " + r.coeff(-1, -12).str();
    }));
    out.push_back(detail::run(S, "Airy frame is 2-reduced", [&](bool& ok) {
        auto rep = reduction_check(airy_frame(M + 1, 3L * M + 6), Series1::monomial("z", 2));
        ok = rep.ok && rep.tested > 0;
        return std::to_string(rep.tested) + " basis elements, window z^-" + std::to_string(rep.window);
    }));
    out.push_back(detail::run(S, "Dc = q and D^2 c = z^2 c", [&](bool& ok) {
        ok = airy_D_check(o.small ? 12 : 30);
        return "through z^-" + std::to_string(o.small ? 12 : 30);
    }));
    return out;
}

inline std::vector<CheckResult> npoint_suite(const Options& o) {
    const std::string S = "npoint";
    std::vector<CheckResult> out;
    Kernel K = kernel_from_closed_form(30);
    out.push_back(detail::run(S, "listed intersection numbers", [&](bool& ok) {
        const std::vector<std::pair<std::vector<int>, Rational>> listed{
            {{0, 0, 0}, Rational(1)}, {{1}, Rational(1, 24)}, {{4}, Rational(1, 1152)}, {{7}, Rational(1, 82944)}};
        ok = true;
        std::string s;
        for (auto& [m, v] : listed) {
            Rational got = intersection_number(CorrelatorKey(m), K);
            ok = ok && got == v;
            s += "<" + CorrelatorKey(m).str() + ">=" + got.str() + " ";
        }
        return s;
    }));
    out.push_back(detail::run(S, "genus-zero multinomial values", [&](bool& ok) {
        ok = true;
        int count = 0;
        for (int n = 3; n <= 5; ++n) {
            auto r = genus0_check(n, K);
            count += r.checked;
            if (!r.ok) {
                ok = false;
                return "fails at " + r.first_failure;
            }
        }
        return std::to_string(count) + " keys, n <= 5";
    }));
    out.push_back(detail::run(S, "puncture equation", [&](bool& ok) {
        const std::vector<std::vector<int>> keys{{0, 2}, {0, 5}, {0, 0, 0, 1}, {0, 1, 1, 2}, {0, 3, 3}, {0, 0, 1, 3}};
        ok = true;
        for (auto& k : keys) ok = ok && puncture_check(CorrelatorKey(k), K);
        return std::to_string(keys.size()) + " keys";
    }));
    out.push_back(detail::run(S, "cycle sum equals determinant route after Mobius inversion", [&](bool& ok) {
        const std::vector<std::vector<int>> cases = o.small ? std::vector<std::vector<int>>{{1, 5}, {1, 1, 1}}
                                                            : std::vector<std::vector<int>>{{1, 5}, {3, 3}, {1, 1, 1}, {1, 3, 5}, {1, 1, 1, 3}};
        ok = true;
        for (auto& js : cases) {
            long W = npoint_demand(js).window;
            ok = ok && connected_npoint_raw(K, js, W) == connected_via_determinants(K, js, W);
        }
        return std::to_string(cases.size()) + " index lists";
    }));
    out.push_back(detail::run(S, "free energy: odd times only, T_3/8 + 105 T_9/128 in degree one", [&](bool& ok) {
        MultiPoly F = free_energy_truncation(9, 3, K, Grading::TotalDegree);
        ok = true;
        for (auto& [e, c] : F.terms())
            for (std::size_t k = 1; k < e.size(); k += 2) ok = ok && e[k] == 0;
        MultiPoly::Exps t3(9, 0), t9(9, 0), t1(9, 0);
        t3[2] = 1;
        t9[8] = 1;
        t1[0] = 3;
        ok = ok && F.coeff(t3) == Rational(1, 8) && F.coeff(t9) == Rational(105, 128) && F.coeff(t1) == Rational(1, 6);
        return "J = 9, degree <= 3, " + std::to_string(F.terms().size()) + " terms";
    }));
    return out;
}

inline std::vector<CheckResult> kp_suite(const Options& o) {
    const std::string S = "kp";
    const int J = o.small ? 9 : 12;
    std::vector<CheckResult> out;
    TruncatedTau tau = TruncatedTau::airy_schur(J, J);
    out.push_back(detail::run(S, "Schur and free-energy routes give the same tau", [&](bool& ok) {
        ok = tau.poly() == TruncatedTau::airy_free_energy(J, J).poly();
        return "weight <= " + std::to_string(J);
    }));
    out.push_back(detail::run(S, "w(0; xi) is the alternating Airy series", [&](bool& ok) {
        Series1 w = wave_at_zero(tau);
        Series1 expect("xi", J);
        for (long m = 0; 3 * m <= J; ++m) expect.set(-3 * m, detail::alpha(m) * Rational(m % 2 ? -1 : 1));
        ok = w.agrees_with(expect, J);
        return "through xi^-" + std::to_string(J);
    }));
    out.push_back(detail::run(S, "d_x w(0; xi) series", [&](bool& ok) {
        Series1 w = wave_x_at_zero(tau);
        Series1 expect("xi", J - 1);
        for (long m = 0; 3 * m - 1 <= J - 1; ++m) {
            Rational c = detail::alpha(m) * Rational(6 * m + 1, 6 * m - 1);
            expect.set(1 - 3 * m, m % 2 ? c : -c);
        }
        ok = w.agrees_with(expect, J - 1);
        return "through xi^-" + std::to_string(J - 1);
    }));
    out.push_back(detail::run(S, "{w, w*} = -2 xi", [&](bool& ok) {
        auto a = wronskian_check(TruncatedTau::airy_schur(9, 3));
        auto b = wronskian_check(tau);
        ok = a.ok && b.ok;
        return "caps (9,3): weight " + std::to_string(a.weight) + "; caps (" + std::to_string(J) + "," +
               std::to_string(J) + "): weight " + std::to_string(b.weight);
    }));
    out.push_back(detail::run(S, "one-point function from the Wronskian forms", [&](bool& ok) {
        auto r = one_point_forms_check(tau);
        ok = r.ok();
        return "three forms, weight <= " + std::to_string(std::min({r.first.weight, r.second.weight, r.third.weight}));
    }));
    out.push_back(detail::run(S, "w w* = 1 + d_x nabla F", [&](bool& ok) {
        auto r = one_point_wave_check(tau);
        ok = r.ok;
        return "weight <= " + std::to_string(r.weight);
    }));
    out.push_back(detail::run(S, "differential Fay identity", [&](bool& ok) {
        auto r = differential_fay_check(TruncatedTau::airy_schur(9, 9), 3);
        auto toy = differential_fay_check(TruncatedTau(MultiPoly::variable({1, 2, 3}, 0, 1, 6) + MultiPoly::constant({1, 2, 3}, 1, 6), "1+T1"), 3);
        ok = r.ok() && toy.ok();
        return "s-bidegree (3,3), weight <= " + std::to_string(r.plain.weight);
    }));
    out.push_back(detail::run(S, "Theta matrix one-point data", [&](bool& ok) {
        auto r = bdy_one_point_check(tau);
        Series1 z = bdy_one_point_at_zero(tau);
        Kernel K = kernel_from_closed_form(20);
        Rational g1 = intersection_number(CorrelatorKey({0, 2}), K) * Rational(double_factorial(5));
        ok = r.ok && z.coeff(-6) == g1;
        if (J >= 12) {
            Rational g2 = intersection_number(CorrelatorKey({0, 5}), K) * Rational(double_factorial(11));
            ok = ok && z.coeff(-12) == g2;
        }
        return "xi^-6 " + z.coeff(-6).str() + (J >= 12 ? ", xi^-12 " + z.coeff(-12).str() : "");
    }));
    out.push_back(detail::run(S, "Theta matrix two-point data", [&](bool& ok) {
        auto r = bdy_two_point_check(tau);
        ok = r.ok;
        return "weight <= " + std::to_string(r.weight);
    }));
    return out;
}

inline std::vector<std::string> suite_names() { return {"airy", "schur", "sato", "npoint", "kp"}; }

inline std::vector<CheckResult> run_suite(const std::string& name, const Options& o) {
    if (name == "airy") return airy_suite(o);
    if (name == "schur") return schur_suite(o);
    if (name == "sato") return sato_suite(o);
    if (name == "npoint") return npoint_suite(o);
    if (name == "kp") return kp_suite(o);
    if (name == "all") {
        std::vector<CheckResult> all;
        for (auto& s : suite_names()) {
            auto r = run_suite(s, o);
            all.insert(all.end(), r.begin(), r.end());
        }
        return all;
    }
    throw std::invalid_argument("unknown suite '" + name + "'");
}

} // namespace wk::verify
