#pragma once

#include "wk/rational.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wk {

// Reliability sentinel: "exact everywhere".
inline constexpr long kExact = LONG_MAX / 4;

inline long sat_add(long a, long b) {
    if (a >= kExact || b >= kExact) return kExact;
    if (a <= -kExact || b <= -kExact) return -kExact;
    return a + b;
}

struct SeriesError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Truncated Laurent series in one variable, exponents descending.
// reliable = N means every coefficient with exponent >= -N is exact;
// nothing below -N is stored.
class Series1 {
public:
    using Terms = std::map<long, Rational, std::greater<long>>;

    Series1() = default;
    explicit Series1(std::string tag, long reliable = kExact) : tag_(std::move(tag)), reliable_(reliable) {}

    static Series1 monomial(std::string tag, long e, Rational c = 1, long reliable = kExact) {
        Series1 s(std::move(tag), reliable);
        s.set(e, std::move(c));
        return s;
    }

    const std::string& tag() const { return tag_; }
    long reliable() const { return reliable_; }
    bool exact() const { return reliable_ >= kExact; }
    const Terms& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    // Largest exponent present, or -(reliable+1) for an empty series.
    long max_exp() const {
        if (!terms_.empty()) return terms_.begin()->first;
        return exact() ? -kExact : -(reliable_ + 1);
    }

    Rational coeff(long e) const {
        if (e < -reliable_) throw SeriesError("coefficient at exponent " + std::to_string(e) +
                                              " is outside the reliable window of " + tag_);
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    // Coefficient without reliability check (zero if absent).
    Rational raw_coeff(long e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void set(long e, Rational c) {
        if (e < -reliable_) return;
        if (c.is_zero()) terms_.erase(e);
        else terms_[e] = std::move(c);
    }

    void add_to(long e, const Rational& c) {
        if (e < -reliable_ || c.is_zero()) return;
        auto [it, fresh] = terms_.try_emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Series1 truncated(long order) const {
        Series1 r(tag_, std::min(reliable_, order));
        for (auto& [e, c] : terms_)
            if (e >= -r.reliable_) r.terms_.emplace(e, c);
        return r;
    }

    Series1& operator+=(const Series1& o) {
        check_tag(o);
        reliable_ = std::min(reliable_, o.reliable_);
        drop_unreliable();
        for (auto& [e, c] : o.terms_) add_to(e, c);
        return *this;
    }
    Series1& operator-=(const Series1& o) {
        check_tag(o);
        reliable_ = std::min(reliable_, o.reliable_);
        drop_unreliable();
        for (auto& [e, c] : o.terms_) add_to(e, -c);
        return *this;
    }
    friend Series1 operator+(Series1 a, const Series1& b) { return a += b; }
    friend Series1 operator-(Series1 a, const Series1& b) { return a -= b; }
    friend Series1 operator-(const Series1& a) { return a * Rational(-1); }

    friend Series1 operator*(const Series1& a, const Series1& b) {
        a.check_tag(b);
        bool a_zero = a.exact() && a.empty(), b_zero = b.exact() && b.empty();
        if (a_zero || b_zero) return Series1(a.tag_);
        long rel = std::min(sat_add(a.reliable_, -b.max_exp()), sat_add(b.reliable_, -a.max_exp()));
        Series1 r(a.tag_, rel);
        for (auto& [ea, ca] : a.terms_) {
            for (auto& [eb, cb] : b.terms_) {
                if (ea + eb < -rel) break;
                r.add_to(ea + eb, ca * cb);
            }
        }
        return r;
    }
    friend Series1 operator*(Series1 a, const Rational& k) {
        if (k.is_zero()) { a.terms_.clear(); return a; }
        for (auto& [e, c] : a.terms_) c *= k;
        return a;
    }
    friend Series1 operator*(const Rational& k, Series1 a) { return std::move(a) * k; }

    // Multiply by tag^k.
    Series1 shifted(long k) const {
        Series1 r(tag_, exact() ? kExact : reliable_ - k);
        for (auto& [e, c] : terms_) r.terms_.emplace(e + k, c);
        return r;
    }

    // d/d(tag); the reliable exponent bound moves down by one.
    Series1 derivative() const {
        Series1 r(tag_, exact() ? kExact : reliable_ + 1);
        for (auto& [e, c] : terms_)
            if (e != 0) r.terms_.emplace(e - 1, c * Rational(e));
        return r;
    }

    // tag -> -tag.
    Series1 negate_var() const {
        Series1 r = *this;
        for (auto& [e, c] : r.terms_)
            if (e % 2 != 0) c = -c;
        return r;
    }

    Series1 retagged(std::string tag) const {
        Series1 r = *this;
        r.tag_ = std::move(tag);
        return r;
    }

    // Equal on every exponent >= -order (both must be reliable there).
    bool agrees_with(const Series1& o, long order) const {
        if (order > reliable_ || order > o.reliable_)
            throw SeriesError("comparison window exceeds reliable order");
        auto lhs = truncated(order), rhs = o.truncated(order);
        return lhs.terms_ == rhs.terms_;
    }

    friend bool operator==(const Series1& a, const Series1& b) {
        return a.tag_ == b.tag_ && a.reliable_ == b.reliable_ && a.terms_ == b.terms_;
    }

private:
    void check_tag(const Series1& o) const {
        if (tag_ != o.tag_) throw SeriesError("series variable mismatch: " + tag_ + " vs " + o.tag_);
    }
    void drop_unreliable() {
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (it->first < -reliable_) it = terms_.erase(it);
            else ++it;
        }
    }

    std::string tag_ = "z";
    Terms terms_;
    long reliable_ = kExact;
};

} // namespace wk
