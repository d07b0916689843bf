#pragma once

#include "wk/series1.hpp"

#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wk {

// Sparse multivariate (Laurent) polynomial over Rational with a grading.
// Variable k has grade grades[k]; a monomial's grade is the dot product of its
// exponent vector with the grades. Every monomial with grade <= cap is exact,
// nothing above cap is stored. The default grading (all ones) is total degree.
class MultiPoly {
public:
    using Exps = std::vector<int>;
    using Terms = std::map<Exps, Rational>;

    MultiPoly() = default;
    explicit MultiPoly(std::vector<int> grades, long cap = kExact) : grades_(std::move(grades)), cap_(cap) {}
    // Variables T_1..T_J with total-degree cap D.
    MultiPoly(int J, long D) : grades_(static_cast<std::size_t>(J), 1), cap_(D) {}

    static MultiPoly constant(std::vector<int> grades, Rational c, long cap = kExact) {
        MultiPoly p(std::move(grades), cap);
        p.add_term(Exps(p.nvars(), 0), c);
        return p;
    }
    static MultiPoly variable(std::vector<int> grades, int k, Rational c = 1, long cap = kExact) {
        MultiPoly p(std::move(grades), cap);
        Exps e(p.nvars(), 0);
        e[static_cast<std::size_t>(k)] = 1;
        p.add_term(e, c);
        return p;
    }
    MultiPoly zero_like() const { return MultiPoly(grades_, kExact); }
    MultiPoly one_like() const { return constant(grades_, 1); }

    std::size_t nvars() const { return grades_.size(); }
    const std::vector<int>& grades() const { return grades_; }
    long cap() const { return cap_; }
    const Terms& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    long grade(const Exps& e) const {
        long g = 0;
        for (std::size_t k = 0; k < e.size(); ++k) g += static_cast<long>(e[k]) * grades_[k];
        return g;
    }

    // Smallest grade present; for an empty polynomial, cap+1 (or +inf if exact).
    long min_grade() const {
        long m = cap_ >= kExact ? kExact : cap_ + 1;
        for (auto& [e, c] : terms_) m = std::min(m, grade(e));
        return m;
    }

    Rational coeff(const Exps& e) const {
        check_exps(e);
        if (grade(e) > cap_) throw SeriesError("monomial above reliable grade cap");
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    Rational constant_term() const { return coeff(Exps(nvars(), 0)); }

    void add_term(const Exps& e, const Rational& c) {
        check_exps(e);
        if (c.is_zero() || grade(e) > cap_) return;
        auto [it, fresh] = terms_.try_emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    MultiPoly capped(long cap) const {
        MultiPoly r(grades_, std::min(cap_, cap));
        for (auto& [e, c] : terms_)
            if (grade(e) <= r.cap_) r.terms_.emplace(e, c);
        return r;
    }

    MultiPoly& operator+=(const MultiPoly& o) {
        check_compat(o);
        lower_cap(o.cap_);
        for (auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    MultiPoly& operator-=(const MultiPoly& o) {
        check_compat(o);
        lower_cap(o.cap_);
        for (auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator-(MultiPoly a) {
        for (auto& [e, c] : a.terms_) c = -c;
        return a;
    }
    friend MultiPoly operator*(MultiPoly a, const Rational& k) {
        if (k.is_zero()) { a.terms_.clear(); return a; }
        for (auto& [e, c] : a.terms_) c *= k;
        return a;
    }
    friend MultiPoly operator*(const Rational& k, MultiPoly a) { return std::move(a) * k; }

    // Missing terms of a have grade > cap_a, so they pollute grades > cap_a + min_grade(b).
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        a.check_compat(b);
        bool a_zero = a.cap_ >= kExact && a.empty(), b_zero = b.cap_ >= kExact && b.empty();
        if (a_zero || b_zero) return a.zero_like();
        long cap = std::min(sat_add(a.cap_, b.min_grade()), sat_add(b.cap_, a.min_grade()));
        MultiPoly r(a.grades_, cap);
        Exps e(a.nvars());
        for (auto& [ea, ca] : a.terms_) {
            long ga = a.grade(ea);
            for (auto& [eb, cb] : b.terms_) {
                if (ga + a.grade(eb) > cap) continue;
                for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }

    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

    // d/dx_k; lowers the cap by grade_k.
    MultiPoly derivative(int k) const {
        auto uk = static_cast<std::size_t>(k);
        MultiPoly r(grades_, cap_ >= kExact ? kExact : cap_ - grades_.at(uk));
        for (auto& [e, c] : terms_) {
            if (e[uk] == 0) continue;
            Exps f = e;
            f[uk] -= 1;
            r.add_term(f, c * Rational(e[uk]));
        }
        return r;
    }

    // Multiply by the monomial x^e; shifts grades by grade(e).
    MultiPoly times_monomial(const Exps& m, const Rational& c = 1) const {
        check_exps(m);
        long g = grade(m);
        MultiPoly r(grades_, cap_ >= kExact ? kExact : cap_ + g);
        Exps f(nvars());
        for (auto& [e, v] : terms_) {
            for (std::size_t k = 0; k < f.size(); ++k) f[k] = e[k] + m[k];
            r.add_term(f, v * c);
        }
        return r;
    }

    // exp(p) for p with zero constant term and every term of positive grade.
    MultiPoly exp() const {
        require_nilpotent("exp");
        MultiPoly result = one_like().capped(cap_);
        MultiPoly power = one_like().capped(cap_);
        long g = min_grade();
        for (long k = 1; !empty() && k * g <= cap_; ++k) {
            power = power * *this * Rational(1, k);
            result += power;
        }
        return result;
    }

    // log(1 + q) for the same kind of q.
    static MultiPoly log1p(const MultiPoly& q) {
        q.require_nilpotent("log1p");
        MultiPoly result = q.zero_like().capped(q.cap_);
        MultiPoly power = q.one_like().capped(q.cap_);
        long g = q.min_grade();
        for (long k = 1; !q.empty() && k * g <= q.cap_; ++k) {
            power = power * q;
            result += power * Rational(k % 2 ? 1 : -1, k);
        }
        return result;
    }

    // 1/(1 + q) as a geometric series.
    static MultiPoly inverse_1p(const MultiPoly& q) {
        q.require_nilpotent("inverse");
        MultiPoly result = q.one_like().capped(q.cap_);
        MultiPoly power = q.one_like().capped(q.cap_);
        long g = q.min_grade();
        for (long k = 1; !q.empty() && k * g <= q.cap_; ++k) {
            power = power * q * Rational(-1);
            result += power;
        }
        return result;
    }

    // Inverse of a polynomial with constant term c != 0 and otherwise positive grades.
    MultiPoly inverse() const {
        Rational c = constant_term();
        if (c.is_zero()) throw SeriesError("inverse of polynomial with zero constant term");
        MultiPoly q = *this * (Rational(1) / c);
        q.add_term(Exps(nvars(), 0), Rational(-1));
        return inverse_1p(q) * (Rational(1) / c);
    }

    // Substitute x_{v_n} <- x_{v_n} + sign * x_s^n / n for n = 1..vars.size(),
    // where vars[n-1] is the index of the variable being shifted.
    // Exact up to the current cap provided grade(x_s^n) >= grade(x_{v_n}).
    MultiPoly shift_substitute(const std::vector<int>& vars, int s, int sign) const {
        auto us = static_cast<std::size_t>(s);
        for (std::size_t n = 1; n <= vars.size(); ++n)
            if (static_cast<long>(n) * grades_.at(us) < grades_.at(static_cast<std::size_t>(vars[n - 1])))
                throw SeriesError("shift substitution would lower grades");
        MultiPoly r(grades_, cap_);
        for (auto& [e, c] : terms_) {
            // Expand prod_n (x_{v_n} + sign s^n/n)^{e_{v_n}} term by term.
            MultiPoly acc = MultiPoly(grades_, cap_);
            acc.add_term(e, c);
            for (std::size_t n = 1; n <= vars.size(); ++n) {
                auto v = static_cast<std::size_t>(vars[n - 1]);
                if (e[v] == 0) continue;
                MultiPoly next(grades_, cap_);
                Rational step = Rational(sign) / Rational(static_cast<long>(n));
                for (auto& [f, a] : acc.terms_) {
                    int pw = f[v];
                    Rational sc = 1;
                    for (int i = 0; i <= pw; ++i) {
                        // choose i factors of (sign s^n / n)
                        Exps h = f;
                        h[v] = pw - i;
                        h[us] += i * static_cast<int>(n);
                        next.add_term(h, a * Rational(binomial(pw, i)) * sc);
                        sc *= step;
                    }
                }
                acc = std::move(next);
            }
            for (auto& [f, a] : acc.terms_) r.add_term(f, a);
        }
        return r;
    }

    // Set the listed variables to zero.
    MultiPoly at_zero(const std::vector<int>& vars) const {
        MultiPoly r(grades_, cap_);
        for (auto& [e, c] : terms_) {
            bool keep = true;
            for (int v : vars) keep = keep && e[static_cast<std::size_t>(v)] == 0;
            if (keep) r.terms_.emplace(e, c);
        }
        return r;
    }

    // Equal on all monomials of grade <= g.
    bool agrees_with(const MultiPoly& o, long g) const {
        if (g > cap_ || g > o.cap_) throw SeriesError("comparison grade exceeds cap");
        return capped(g).terms_ == o.capped(g).terms_;
    }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.grades_ == b.grades_ && a.cap_ == b.cap_ && a.terms_ == b.terms_;
    }

private:
    void check_exps(const Exps& e) const {
        if (e.size() != nvars()) throw SeriesError("exponent vector has wrong length");
    }
    void check_compat(const MultiPoly& o) const {
        if (grades_ != o.grades_) throw SeriesError("polynomial rings differ");
    }
    void lower_cap(long cap) {
        if (cap >= cap_) return;
        cap_ = cap;
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (grade(it->first) > cap_) it = terms_.erase(it);
            else ++it;
        }
    }
    void require_nilpotent(const char* what) const {
        for (auto& [e, c] : terms_)
            if (grade(e) <= 0) throw SeriesError(std::string(what) + " needs every term of positive grade");
        if (!empty() && cap_ >= kExact) throw SeriesError(std::string(what) + " needs a finite cap");
    }

    std::vector<int> grades_;
    Terms terms_;
    long cap_ = kExact;
};

} // namespace wk
