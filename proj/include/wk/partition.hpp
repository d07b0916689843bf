#pragma once

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wk {

// Integer partition; parts weakly decreasing and strictly positive.
class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i] <= 0) throw std::invalid_argument("partition parts must be positive");
            if (i && parts_[i] > parts_[i - 1]) throw std::invalid_argument("partition parts must be weakly decreasing");
        }
    }

    // Frobenius data (m_1..m_l | n_1..n_l), both strictly decreasing and nonnegative.
    static Partition from_frobenius(const std::vector<int>& m, const std::vector<int>& n) {
        if (m.size() != n.size()) throw std::invalid_argument("Frobenius arms and legs differ in length");
        const int l = static_cast<int>(m.size());
        for (int i = 0; i < l; ++i) {
            if (m[i] < 0 || n[i] < 0) throw std::invalid_argument("negative Frobenius coordinate");
            if (i && (m[i] >= m[i - 1] || n[i] >= n[i - 1]))
                throw std::invalid_argument("Frobenius coordinates must strictly decrease");
        }
        std::vector<int> parts;
        for (int i = 0; i < l; ++i) parts.push_back(m[i] + i + 1);
        for (int r = l + 1;; ++r) {
            int len = 0;
            for (int j = 0; j < l; ++j)
                if (n[j] + j + 1 >= r) ++len;
            if (len == 0) break;
            parts.push_back(len);
        }
        return Partition(std::move(parts));
    }

    static Partition hook(int m, int n) { return from_frobenius({m}, {n}); }

    // "3,1,1" or "" for the empty partition.
    static Partition parse(const std::string& s) {
        std::vector<int> parts;
        std::stringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty()) continue;
            std::size_t used = 0;
            int v = std::stoi(tok, &used);
            if (used != tok.size()) throw std::invalid_argument("bad partition part '" + tok + "'");
            parts.push_back(v);
        }
        return Partition(std::move(parts));
    }

    const std::vector<int>& parts() const { return parts_; }
    int length() const { return static_cast<int>(parts_.size()); }
    int weight() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }
    bool empty() const { return parts_.empty(); }
    int part(int i) const { return i < length() ? parts_[static_cast<std::size_t>(i)] : 0; }

    Partition conjugate() const {
        std::vector<int> c;
        if (parts_.empty()) return Partition();
        for (int j = 1; j <= parts_[0]; ++j) {
            int len = 0;
            for (int p : parts_)
                if (p >= j) ++len;
            c.push_back(len);
        }
        return Partition(std::move(c));
    }

    // Pairs (m_i, n_i) with m_i = mu_i - i, n_i = mu^t_i - i (1-based i).
    std::vector<std::pair<int, int>> frobenius() const {
        Partition t = conjugate();
        std::vector<std::pair<int, int>> f;
        for (int i = 0; i < length() && parts_[static_cast<std::size_t>(i)] > i; ++i)
            f.emplace_back(parts_[static_cast<std::size_t>(i)] - i - 1, t.part(i) - i - 1);
        return f;
    }

    std::string str() const {
        std::string s;
        for (std::size_t i = 0; i < parts_.size(); ++i) s += (i ? "," : "") + std::to_string(parts_[i]);
        return s;
    }

    std::string frobenius_str() const {
        auto f = frobenius();
        std::string a, b;
        for (std::size_t i = 0; i < f.size(); ++i) {
            a += (i ? "," : "") + std::to_string(f[i].first);
            b += (i ? "," : "") + std::to_string(f[i].second);
        }
        return "(" + a + "|" + b + ")";
    }

    friend bool operator==(const Partition&, const Partition&) = default;
    friend auto operator<=>(const Partition& a, const Partition& b) {
        if (a.weight() != b.weight()) return a.weight() <=> b.weight();
        return b.parts_ <=> a.parts_;
    }

private:
    std::vector<int> parts_;
};

// All partitions of n, in reverse lexicographic order.
inline std::vector<Partition> partitions_of(int n) {
    std::vector<Partition> out;
    if (n < 0) return out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int rest, int maxpart) -> void {
        if (rest == 0) { out.emplace_back(cur); return; }
        for (int p = std::min(rest, maxpart); p >= 1; --p) {
            cur.push_back(p);
            self(self, rest - p, p);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
    return out;
}

inline std::vector<Partition> partitions_up_to(int w) {
    std::vector<Partition> out;
    for (int n = 0; n <= w; ++n) {
        auto ps = partitions_of(n);
        out.insert(out.end(), ps.begin(), ps.end());
    }
    return out;
}

} // namespace wk
