#pragma once

#include "wk/series1.hpp"

#include <array>
#include <map>
#include <string>
#include <utility>

namespace wk {

// Truncated bivariate Laurent series. Terms (i, j) stand for x^i y^j.
// reliable = (Nx, Ny, D): every coefficient with i >= -Nx, j >= -Ny and
// total depth -(i + j) <= D is exact; nothing outside that region is stored.
// Products propagate the two kinds of bound independently, which is sound when
// unknown terms have nonpositive exponents (series in x^{-1}, y^{-1}).
class Series2 {
public:
    using Key = std::pair<long, long>;
    using Terms = std::map<Key, Rational>;

    Series2() = default;
    Series2(std::string x, std::string y, long rx = kExact, long ry = kExact)
        : tags_{std::move(x), std::move(y)}, rel_{rx, ry} {}

    static Series2 constant(const std::string& x, const std::string& y, Rational c) {
        Series2 s(x, y);
        s.set(0, 0, std::move(c));
        return s;
    }
    static Series2 monomial(const std::string& x, const std::string& y, long i, long j, Rational c = 1) {
        Series2 s(x, y);
        s.set(i, j, std::move(c));
        return s;
    }

    const std::array<std::string, 2>& tags() const { return tags_; }
    long reliable_x() const { return rel_[0]; }
    long reliable_y() const { return rel_[1]; }
    long reliable_depth() const { return depth_; }
    const Terms& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    bool in_reliable(long i, long j) const { return i >= -rel_[0] && j >= -rel_[1] && -(i + j) <= depth_; }

    // Restrict to total depth -(i + j) <= D.
    Series2 depth_truncated(long D) const {
        Series2 r = *this;
        r.shrink(rel_[0], rel_[1], D);
        return r;
    }

    // Stored exponent window: {xlo, xhi, ylo, yhi}; zero series gives an empty window.
    std::array<long, 4> window() const {
        std::array<long, 4> w{kExact, -kExact, kExact, -kExact};
        for (auto& [k, c] : terms_) {
            w[0] = std::min(w[0], k.first);
            w[1] = std::max(w[1], k.first);
            w[2] = std::min(w[2], k.second);
            w[3] = std::max(w[3], k.second);
        }
        return w;
    }

    Rational coeff(long i, long j) const {
        if (!in_reliable(i, j))
            throw SeriesError("bivariate coefficient outside reliable window");
        auto it = terms_.find({i, j});
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void set(long i, long j, Rational c) {
        if (!in_reliable(i, j)) return;
        if (c.is_zero()) terms_.erase({i, j});
        else terms_[{i, j}] = std::move(c);
    }

    void add_to(long i, long j, const Rational& c) {
        if (!in_reliable(i, j) || c.is_zero()) return;
        auto [it, fresh] = terms_.try_emplace({i, j}, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Series2 truncated(long nx, long ny) const {
        Series2 r(tags_[0], tags_[1], std::min(rel_[0], nx), std::min(rel_[1], ny));
        r.depth_ = depth_;
        for (auto& [k, c] : terms_)
            if (r.in_reliable(k.first, k.second)) r.terms_.emplace(k, c);
        return r;
    }

    Series2& operator+=(const Series2& o) {
        check_tags(o);
        shrink(o.rel_[0], o.rel_[1], o.depth_);
        for (auto& [k, c] : o.terms_) add_to(k.first, k.second, c);
        return *this;
    }
    Series2& operator-=(const Series2& o) {
        check_tags(o);
        shrink(o.rel_[0], o.rel_[1], o.depth_);
        for (auto& [k, c] : o.terms_) add_to(k.first, k.second, -c);
        return *this;
    }
    friend Series2 operator+(Series2 a, const Series2& b) { return a += b; }
    friend Series2 operator-(Series2 a, const Series2& b) { return a -= b; }
    friend Series2 operator-(Series2 a) {
        for (auto& [k, c] : a.terms_) c = -c;
        return a;
    }

    // Per-variable Cauchy-product reliability, as for Series1.
    friend Series2 operator*(const Series2& a, const Series2& b) {
        a.check_tags(b);
        bool a_zero = a.exact() && a.empty(), b_zero = b.exact() && b.empty();
        if (a_zero || b_zero) return Series2(a.tags_[0], a.tags_[1]);
        auto wa = a.max_exps(), wb = b.max_exps();
        long rx = std::min(sat_add(a.rel_[0], -wb[0]), sat_add(b.rel_[0], -wa[0]));
        long ry = std::min(sat_add(a.rel_[1], -wb[1]), sat_add(b.rel_[1], -wa[1]));
        Series2 r(a.tags_[0], a.tags_[1], rx, ry);
        r.depth_ = std::min(sat_add(a.depth_, b.min_depth()), sat_add(b.depth_, a.min_depth()));
        for (auto& [ka, ca] : a.terms_)
            for (auto& [kb, cb] : b.terms_) r.add_to(ka.first + kb.first, ka.second + kb.second, ca * cb);
        return r;
    }
    friend Series2 operator*(Series2 a, const Rational& k) {
        if (k.is_zero()) { a.terms_.clear(); return a; }
        for (auto& [key, c] : a.terms_) c *= k;
        return a;
    }
    friend Series2 operator*(const Rational& k, Series2 a) { return std::move(a) * k; }

    // Multiply by x^i y^j.
    Series2 shifted(long i, long j) const {
        Series2 r(tags_[0], tags_[1], exact_x() ? kExact : rel_[0] - i, exact_y() ? kExact : rel_[1] - j);
        r.depth_ = depth_ >= kExact ? kExact : depth_ - i - j;
        for (auto& [k, c] : terms_) r.terms_.emplace(Key{k.first + i, k.second + j}, c);
        return r;
    }

    Series2 swapped() const {
        Series2 r(tags_[1], tags_[0], rel_[1], rel_[0]);
        r.depth_ = depth_;
        for (auto& [k, c] : terms_) r.terms_.emplace(Key{k.second, k.first}, c);
        return r;
    }

    Series2 negate_var(int which) const {
        Series2 r = *this;
        for (auto& [k, c] : r.terms_) {
            long e = which == 0 ? k.first : k.second;
            if (e % 2 != 0) c = -c;
        }
        return r;
    }

    // Tensor product f(x) g(y).
    static Series2 outer(const Series1& f, const Series1& g) {
        Series2 r(f.tag(), g.tag(), f.reliable(), g.reliable());
        for (auto& [i, a] : f.terms())
            for (auto& [j, b] : g.terms()) r.terms_.emplace(Key{i, j}, a * b);
        return r;
    }

    bool agrees_with(const Series2& o, long nx, long ny) const {
        if (nx > rel_[0] || nx > o.rel_[0] || ny > rel_[1] || ny > o.rel_[1])
            throw SeriesError("comparison window exceeds reliable window");
        return truncated(nx, ny).terms_ == o.truncated(nx, ny).terms_;
    }

    // Equal on every term of total depth <= D (both must be reliable there).
    bool agrees_to_depth(const Series2& o, long D) const {
        if (D > depth_ || D > o.depth_) throw SeriesError("comparison depth exceeds reliable depth");
        return depth_truncated(D).terms_ == o.depth_truncated(D).terms_;
    }

    bool exact() const { return exact_x() && exact_y() && depth_ >= kExact; }

    friend bool operator==(const Series2& a, const Series2& b) {
        return a.tags_ == b.tags_ && a.rel_ == b.rel_ && a.depth_ == b.depth_ && a.terms_ == b.terms_;
    }

private:
    bool exact_x() const { return rel_[0] >= kExact; }
    bool exact_y() const { return rel_[1] >= kExact; }

    std::array<long, 2> max_exps() const {
        std::array<long, 2> m{exact_x() ? -kExact : -(rel_[0] + 1), exact_y() ? -kExact : -(rel_[1] + 1)};
        for (auto& [k, c] : terms_) {
            m[0] = std::max(m[0], k.first);
            m[1] = std::max(m[1], k.second);
        }
        return m;
    }
    // Smallest total depth -(i + j) that could carry a nonzero term.
    long min_depth() const {
        long m = depth_ >= kExact ? kExact : depth_ + 1;
        for (auto& [k, c] : terms_) m = std::min(m, -(k.first + k.second));
        return m;
    }
    void shrink(long nx, long ny, long d) {
        rel_[0] = std::min(rel_[0], nx);
        rel_[1] = std::min(rel_[1], ny);
        depth_ = std::min(depth_, d);
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (!in_reliable(it->first.first, it->first.second)) it = terms_.erase(it);
            else ++it;
        }
    }
    void check_tags(const Series2& o) const {
        if (tags_ != o.tags_) throw SeriesError("bivariate series variable mismatch");
    }

    std::array<std::string, 2> tags_{"x", "y"};
    Terms terms_;
    std::array<long, 2> rel_{kExact, kExact};
    long depth_ = kExact;
};

} // namespace wk
