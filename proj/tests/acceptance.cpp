// Acceptance gate: one PASS/FAIL line per criterion; exit status 0 iff all pass.

#include "wk/io.hpp"
#include "wk/kp_wave.hpp"
#include "wk/npoint.hpp"
#include "wk/sato.hpp"
#include "wk/schur.hpp"

#include "oracle/airy_kernel.hpp"
#include "oracle/dvv.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace wk;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream note;
    void require(bool cond, const std::string& what) {
        if (!cond && ok) note << "first failure: " << what << "; ";
        ok = ok && cond;
    }
};

int failures = 0;

void criterion(int id, const std::string& title, const std::function<void(Outcome&)>& body) {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.ok = false;
        o.note << "exception: " << e.what() << "; ";
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.ok) ++failures;
    std::cout << (o.ok ? "PASS" : "FAIL") << " [" << id << "] " << title << " -- " << o.note.str() << "("
              << secs << " s)" << std::endl;
}

const Kernel& airy(int M) {
    static std::map<int, Kernel> cache;
    auto it = cache.find(M);
    if (it == cache.end()) it = cache.emplace(M, kernel_from_closed_form(M)).first;
    return it->second;
}

Kernel random_kernel(int M, std::mt19937& rng) {
    std::uniform_int_distribution<int> d(-7, 7);
    Kernel k(M, "random");
    for (int m = 0; m <= M; ++m)
        for (int n = 0; n <= M; ++n) k.set(m, n, Rational(d(rng), 1 + std::abs(d(rng))));
    return k;
}

std::vector<CorrelatorKey> valid_keys(int maxN, int maxTotal) {
    std::vector<CorrelatorKey> out;
    for (int n = 1; n <= maxN; ++n)
        for (int s = 0; s <= maxTotal; ++s)
            for (auto& k : keys_with(n, s))
                if (k.valid()) out.push_back(k);
    return out;
}

template <class T>
std::vector<T> sample(std::vector<T> pool, std::size_t count, std::mt19937& rng) {
    std::shuffle(pool.begin(), pool.end(), rng);
    if (pool.size() > count) pool.resize(count);
    return pool;
}

} // namespace

int main() {
    criterion(1, "kernel routes agree for 0 <= m,n <= 12", [](Outcome& o) {
        const int M = 12;
        const Kernel& c = airy(M);
        auto d1 = kernel_from_series(M).first_difference(c);
        auto d2 = kernel_from_gmatrix(M).first_difference(c);
        auto d3 = kernel_from_frame(M).first_difference(c);
        o.require(!d1, "series route");
        o.require(!d2, "block-matrix route");
        o.require(!d3, "frame normalization route");
        auto ref = oracle::airy_kernel(M);
        for (int m = 0; m <= M; ++m)
            for (int n = 0; n <= M; ++n) o.require(c(m, n).raw() == ref[m][n], "dense oracle entry");
        o.note << "closed form, series, block matrix, frame and dense oracle agree on 169 entries; ";
    });

    criterion(2, "listed kernel entries through the m+n = 8 block", [](Outcome& o) {
        // coefficient of x^{-m-1} y^{-n-1} in A(x, y)
        const std::vector<std::tuple<int, int, Rational>> listed{
            {0, 2, Rational(5, 24)},          {1, 1, Rational(-7, 24)},         {2, 0, Rational(5, 24)},
            {0, 5, Rational(385, 1152)},      {1, 4, Rational(-455, 1152)},     {2, 3, Rational(385, 1152)},
            {3, 2, Rational(-385, 1152)},     {4, 1, Rational(455, 1152)},      {5, 0, Rational(-385, 1152)},
            {0, 8, Rational(85085, 82944)},   {1, 7, Rational(-95095, 82944)},  {2, 6, Rational(85085, 82944)},
            {3, 5, Rational(-43505, 41472)},  {4, 4, Rational(45955, 41472)},   {5, 3, Rational(-43505, 41472)},
            {6, 2, Rational(85085, 82944)},   {7, 1, Rational(-95095, 82944)},  {8, 0, Rational(85085, 82944)}};
        const Kernel& k = airy(8);
        for (auto& [m, n, v] : listed)
            o.require(k(m, n) == v, "(" + std::to_string(m) + "," + std::to_string(n) + ")");
        int nonzero = 0;
        for (int m = 0; m <= 8; ++m)
            for (int n = 0; m + n <= 8; ++n) nonzero += !k(m, n).is_zero();
        o.require(nonzero == static_cast<int>(listed.size()), "no other nonzero entries with m+n <= 8");
        o.note << listed.size() << " entries exact; ";
    });

    criterion(3, "diagonal one-point series", [](Outcome& o) {
        Series1 d = kernel_diagonal(16);
        const Rational expect[] = {Rational(1, 8), Rational(105, 128), Rational(25025, 1024)};
        for (long g = 1; g <= 3; ++g) {
            Rational formula = Rational(double_factorial(6 * g - 3)) /
                               (pow(Rational(24), static_cast<unsigned>(g)) * Rational(factorial(g)));
            Rational got = d.coeff(-(6 * g - 2));
            o.require(got == expect[g - 1] && got == formula, "g = " + std::to_string(g));
            o.note << "xi^-" << 6 * g - 2 << " " << got.str() << " ";
        }
        o.require(diagonal_from_kernel(airy(16)).agrees_with(d, 16), "diagonal from kernel entries");
    });

    criterion(4, "Faber-Zagier identity through xi^-24", [](Outcome& o) {
        o.require(faber_zagier_identity_check(24), "identity");
        o.note << "exact through xi^-24; ";
    });

    criterion(5, "intersection numbers, genus-zero values, puncture equation", [](Outcome& o) {
        const Kernel& K = airy(30);
        o.require(intersection_number(CorrelatorKey({0, 0, 0}), K) == Rational(1), "<tau_0^3>");
        o.require(intersection_number(CorrelatorKey({1}), K) == Rational(1, 24), "<tau_1>");
        o.require(intersection_number(CorrelatorKey({4}), K) == Rational(1, 1152), "<tau_4>");
        o.require(intersection_number(CorrelatorKey({7}), K) == Rational(1, 82944), "<tau_7>");
        int g0 = 0;
        for (int n = 3; n <= 5; ++n) {
            auto r = genus0_check(n, K);
            o.require(r.ok, "genus zero " + r.first_failure);
            g0 += r.checked;
        }
        std::vector<CorrelatorKey> pool;
        for (auto& k : valid_keys(5, 9))
            if (k.indices().front() == 0 && k != CorrelatorKey({0, 0, 0})) pool.push_back(k);
        std::mt19937 rng(20240501);
        auto picked = sample(pool, 20, rng);
        for (auto& k : picked) o.require(puncture_check(k, K), "puncture " + k.str());
        o.require(picked.size() == 20, "20 puncture keys available");
        o.note << "4 listed values, " << g0 << " genus-zero keys, " << picked.size() << " puncture keys; ";
    });

    criterion(6, "connected two-point coefficients vs recursion oracle, m1+m2 <= 8", [](Outcome& o) {
        const Kernel& K = airy(30);
        oracle::Dvv dvv;
        int pairs = 0, nonzero = 0;
        for (int m1 = 0; m1 <= 8; ++m1)
            for (int m2 = m1; m1 + m2 <= 8; ++m2) {
                Rational raw = connected_npoint_coeff(K, {2 * m1 + 1, 2 * m2 + 1}).value;
                mpq_class expect = dvv({m1, m2}) * oracle::dfact(2 * m1 + 1) * oracle::dfact(2 * m2 + 1);
                o.require(raw.raw() == expect, "<" + std::to_string(m1) + "," + std::to_string(m2) + ">");
                ++pairs;
                nonzero += expect != 0;
            }
        o.note << pairs << " pairs (" << nonzero << " nonzero); ";
    });

    criterion(7, "Schur machinery", [](Outcome& o) {
        int hooks = 0;
        for (int m = 0; m <= 8; ++m)
            for (int n = 0; n <= 8; ++n, ++hooks) o.require(hook_spec_identity_check(m, n), "hook");
        std::vector<Partition> pool;
        for (auto& mu : partitions_up_to(10))
            if (mu.length() > 2) pool.push_back(mu);
        std::mt19937 rng(7);
        auto picked = sample(pool, 30, rng);
        // p_k = y^-k + (-x)^-k: two variables, so every l(mu) > 2 vanishes
        PowerSumSpec<Series2> spec{{Series2("x", "y")}, Series2("x", "y"), Series2::constant("x", "y", 1)};
        for (int k = 1; k <= 10; ++k) {
            Series2 pk("x", "y");
            pk.add_to(-k, 0, Rational(k % 2 ? -1 : 1));
            pk.add_to(0, -k, 1);
            spec.p.push_back(pk);
        }
        for (auto& mu : picked) o.require(schur_at(mu, spec).empty(), "vanishing " + mu.str());
        std::uniform_int_distribution<int> d(-9, 9);
        std::vector<Rational> p;
        for (int k = 1; k <= 10; ++k) p.push_back(Rational(d(rng), 1 + std::abs(d(rng))));
        auto rs = rational_spec(p);
        int jt = 0;
        for (auto& mu : partitions_up_to(10)) {
            o.require(schur_h(mu, rs) == schur_e(mu, rs), "Jacobi-Trudi " + mu.str());
            ++jt;
        }
        o.note << hooks << " hooks, " << picked.size() << " vanishing shapes, " << jt << " Jacobi-Trudi pairs; ";
    });

    criterion(8, "tau at p_k = x^-k + y^-k reproduces the listed expansion", [](Outcome& o) {
        AffineCoords a(airy(12));
        Series2 pp = tau_two_point_specialization(a, 12, TwoPointVariant::PlusPlus);
        Series2 w("x", "y");
        w.add_to(-1, 0, 1);
        w.add_to(0, -1, -1);
        Series2 lhs = pp * w;  // tau * (x^-1 - y^-1)
        Series2 expect("x", "y");
        auto anti = [&](long i, long j, const Rational& c) {  // c (x^i y^j - x^j y^i)
            expect.add_to(i, j, c);
            expect.add_to(j, i, -c);
        };
        const Rational a1(5, 24), a2(385, 1152), a3(85085, 82944), a4(37182145, 7962624);
        const Rational b1(-7, 24), b2(-455, 1152), b3(-95095, 82944), b4(-40415375, 7962624);
        anti(-1, 0, 1);
        anti(-4, 0, a1);
        anti(-1, -3, b1);
        anti(-7, 0, a2);
        anti(-4, -3, a1 * b1);
        anti(-1, -6, b2);
        anti(-10, 0, a3);
        anti(-7, -3, a2 * b1);
        anti(-4, -6, a1 * b2);
        anti(-1, -9, b3);
        anti(-13, 0, a4);
        anti(-10, -3, a3 * b1);
        anti(-7, -6, a2 * b2);
        anti(-4, -9, a1 * b3);
        anti(-1, -12, b4);
        int compared = 0;
        for (long i = 0; i >= -13; --i)
            for (long j = 0; i + j >= -13; --j) {
                o.require(lhs.coeff(i, j) == expect.coeff(i, j),
                          "x^" + std::to_string(i) + " y^" + std::to_string(j));
                ++compared;
            }
        o.note << compared << " coefficients through total degree 13, x^-13 " << lhs.coeff(-13, 0).str()
               << ", x^-1 y^-12 " << lhs.coeff(-1, -12).str() << "; ";
    });

    criterion(9, "KdV wave layer", [](Outcome& o) {
        TruncatedTau tau = TruncatedTau::airy_schur(12, 12);
        Series1 w0 = wave_at_zero(tau);
        for (long m = 0; 3 * m <= 12; ++m)
            o.require(w0.coeff(-3 * m).raw() == oracle::airy_alpha(m) * (m % 2 ? -1 : 1), "w(0) coefficient");
        for (long e = 0; e >= -12; --e)
            if (e % 3) o.require(w0.coeff(e).is_zero(), "w(0) support");

        auto wr = wronskian_check(TruncatedTau::airy_schur(9, 3));
        o.require(wr.ok, "{w, w*} at caps (9,3)");
        auto forms = one_point_forms_check(tau);
        o.require(forms.ok(), "Wronskian forms of the one-point function");
        auto fay = differential_fay_check(TruncatedTau::airy_schur(9, 9), 3);
        o.require(fay.ok(), "differential Fay");

        o.require(bdy_one_point_check(tau).ok, "Theta one-point identity");
        Series1 z = bdy_one_point_at_zero(tau);
        const Kernel& K = airy(30);
        for (int g = 1; g <= 2; ++g) {
            Rational expect = intersection_number(CorrelatorKey({0, 3 * g - 1}), K) *
                              Rational(double_factorial(6 * g - 1));
            o.require(z.coeff(-6 * g) == expect, "Theta one-point at xi^-" + std::to_string(6 * g));
        }

        // Two-point: (z1^2 - z2^2)^2 sum <tau_a tau_b> (2a+1)!! (2b+1)!! u1^{2a+2} u2^{2b+2}, u = 1/z.
        auto sides = bdy_two_point(tau);
        const WaveRing& R = sides.ring;
        int u1 = R.aux(0), u2 = R.aux(1);
        long cap = sides.theta_side.cap();
        MultiPoly nn(R.grades());
        for (int a = 0; 2 * a + 2 <= cap + 4; ++a)
            for (int b = 0; 2 * a + 2 * b + 4 <= cap + 4; ++b) {
                CorrelatorKey key({a, b});
                if (!key.valid()) continue;
                Rational v = intersection_number(key, K) * Rational(double_factorial(2 * a + 1)) *
                             Rational(double_factorial(2 * b + 1));
                MultiPoly::Exps e(R.grades().size(), 0);
                e[static_cast<std::size_t>(u1)] = 2 * a + 2;
                e[static_cast<std::size_t>(u2)] = 2 * b + 2;
                nn.add_term(e, v);
            }
        MultiPoly delta = R.monomial(u1, -2) - R.monomial(u2, -2);
        auto two = compare(sides.theta_side, delta * delta * nn, "Theta two-point");
        o.require(two.ok, "Theta two-point vs intersection numbers");
        o.require(!sides.theta_side.empty(), "Theta two-point side nonempty");

        o.note << "w(0) through xi^-12, {w,w*} weight " << wr.weight << ", one-point forms weight "
               << std::min({forms.first.weight, forms.second.weight, forms.third.weight}) << ", Fay weight "
               << fay.plain.weight << ", Theta one-point " << z.coeff(-6).str() << " and " << z.coeff(-12).str()
               << ", Theta two-point weight " << two.weight << "; ";
    });

    criterion(10, "property suites: symmetry, truncation stability, cycle vs determinant, Mobius", [](Outcome& o) {
        const Kernel& K = airy(30);
        std::mt19937 rng(31337);
        auto keys = sample(valid_keys(4, 8), 20, rng);
        for (auto& key : keys) {
            std::vector<int> js;
            for (int m : key.indices()) js.push_back(2 * m + 1);
            Rational base = connected_npoint_coeff(K, js).value;
            std::vector<int> perm = js;
            std::sort(perm.begin(), perm.end());
            do {
                o.require(connected_npoint_coeff(K, perm).value == base, "symmetry " + key.str());
            } while (std::next_permutation(perm.begin(), perm.end()));
            auto d = npoint_demand(js);
            Rational a = connected_npoint_raw(K.restricted(d.cutoff), js, d.window);
            Rational b = connected_npoint_raw(K.restricted(d.cutoff + 3), js, d.window + 3);
            o.require(a == b && a == base, "stability " + key.str());
        }
        int cycles = 0;
        std::uniform_int_distribution<int> jd(1, 4);
        for (int trial = 0; trial < 12; ++trial) {
            Kernel rk = random_kernel(6, rng);
            int n = 2 + trial % 3;
            std::vector<int> js;
            for (int i = 0; i < n; ++i) js.push_back(jd(rng));
            o.require(connected_npoint_raw(rk, js, 14) == connected_via_determinants(rk, js, 14), "cycle vs determinant");
            ++cycles;
        }
        int families = 0;
        std::uniform_int_distribution<int> vd(-9, 9);
        for (int n = 1; n <= 4; ++n) {
            SubsetFamily f;
            for (unsigned s = 1; s < (1u << n); ++s) f[s] = Rational(vd(rng), 1 + std::abs(vd(rng)));
            SubsetFamily back = mobius_disconnect(mobius_connect(f));
            for (auto& [s, v] : f) o.require(back.at(s) == v, "Mobius round trip n = " + std::to_string(n));
            SubsetFamily fwd = mobius_connect(mobius_disconnect(f));
            for (auto& [s, v] : f) o.require(fwd.at(s) == v, "Mobius inverse round trip");
            ++families;
        }
        o.note << keys.size() << " keys, " << cycles << " random kernels, " << families << " subset families; ";
    });

    std::cout << (failures ? "ACCEPTANCE FAILED: " + std::to_string(failures) + " criteria" : "ACCEPTANCE PASSED")
              << std::endl;
    return failures ? 1 : 0;
}
