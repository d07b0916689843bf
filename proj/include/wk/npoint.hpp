#pragma once

#include "wk/airy.hpp"
#include "wk/multipoly.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace wk {

struct CutoffError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InstabilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidKey : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Insertion indices of <tau_{m_1} ... tau_{m_n}>_g, kept sorted.
class CorrelatorKey {
public:
    CorrelatorKey() = default;
    explicit CorrelatorKey(std::vector<int> m) : m_(std::move(m)) {
        for (int v : m_)
            if (v < 0) throw InvalidKey("negative insertion index");
        std::sort(m_.begin(), m_.end());
    }

    const std::vector<int>& indices() const { return m_; }
    int size() const { return static_cast<int>(m_.size()); }
    int total() const { return std::accumulate(m_.begin(), m_.end(), 0); }

    // Selection rule sum m_i = 3g - 3 + n with g >= 0.
    bool valid() const {
        if (m_.empty()) return false;
        int d = total() - size();
        return d % 3 == 0 && d / 3 + 1 >= 0 && (d >= 0 || d == -3);
    }
    int genus() const {
        if (!valid()) throw InvalidKey("key " + str() + " violates the selection rule");
        return (total() - size()) / 3 + 1;
    }

    std::string str() const {
        std::string s;
        for (std::size_t i = 0; i < m_.size(); ++i) s += (i ? "," : "") + std::to_string(m_[i]);
        return s;
    }

    friend bool operator==(const CorrelatorKey&, const CorrelatorKey&) = default;
    friend auto operator<=>(const CorrelatorKey& a, const CorrelatorKey& b) {
        if (a.size() != b.size()) return a.size() <=> b.size();
        return a.m_ <=> b.m_;
    }

private:
    std::vector<int> m_;
};

// Coefficient of xi_i^p xi_j^q in A-hat(xi_i, xi_j), i != j: the kernel plus 1/(xi_i - xi_j)
// expanded with |xi_min(i,j)| > |xi_max(i,j)|, geometric series truncated at k <= window.
// Kernel entries beyond the cutoff count as zero.
inline Rational ahat_coeff(const Kernel& K, int i, int j, long p, long q, long window) {
    if (i == j) throw std::invalid_argument("ahat_coeff needs distinct labels");
    Rational c(0);
    if (p <= -1 && q <= -1 && -p - 1 <= K.cutoff() && -q - 1 <= K.cutoff())
        c = K(static_cast<int>(-p - 1), static_cast<int>(-q - 1));
    if (i < j) {
        if (q >= 0 && q <= window && p == -q - 1) c += Rational(1);
    } else {
        if (p >= 0 && p <= window && q == -p - 1) c -= Rational(1);
    }
    return c;
}

// A-hat(xi_i, xi_j) for i != j as a bivariate series in (xi_i, xi_j).
inline Series2 ahat(const Kernel& K, int i, int j, int window) {
    if (window > K.cutoff()) throw CutoffError("window exceeds kernel cutoff");
    std::string x = "xi" + std::to_string(i), y = "xi" + std::to_string(j);
    Series2 s(x, y, window + 1, window + 1);
    for (long k = 0; k <= window; ++k) {
        if (i < j) s.add_to(-1 - k, k, 1);
        else s.add_to(k, -1 - k, -1);
    }
    for (int m = 0; m <= window; ++m)
        for (int n = 0; n <= window; ++n) s.add_to(-m - 1, -n - 1, K(m, n));
    return s;
}

// Diagonal entry A(xi, xi): coefficient of xi^{-j-1} is sum_{m+n=j-1} K(m, n), entries
// beyond the cutoff counting as zero.
inline Rational diagonal_coeff(const Kernel& K, int j) {
    Rational s(0);
    for (int m = std::max(0, j - 1 - K.cutoff()); m <= std::min(j - 1, K.cutoff()); ++m) s += K(m, j - 1 - m);
    return s;
}

inline Series1 ahat_diagonal(const Kernel& K, int window) {
    Series1 s("xi", window + 1);
    for (int j = 1; j <= window && j - 1 <= K.cutoff(); ++j) s.set(-j - 1, diagonal_coeff(K, j));
    return s;
}

namespace detail {

// Nonzero kernel entries per row, for sparse transfer.
struct SparseKernel {
    std::vector<std::vector<std::pair<int, Rational>>> rows;
    explicit SparseKernel(const Kernel& K) : rows(static_cast<std::size_t>(K.cutoff() + 1)) {
        for (int m = 0; m <= K.cutoff(); ++m)
            for (int n = 0; n <= K.cutoff(); ++n)
                if (!K(m, n).is_zero()) rows[static_cast<std::size_t>(m)].emplace_back(n, K(m, n));
    }
};

// Sum over one directed n-cycle (order[0] -> order[1] -> ... -> order[0]) of the product of
// A-hat coefficients, with vertex v receiving total exponent e[v].
inline Rational cycle_coefficient(const SparseKernel& SK, int cutoff, const std::vector<int>& order,
                                  const std::vector<long>& e, long window, long S) {
    const int n = static_cast<int>(order.size());
    Rational total(0);
    // Prefix sums of targets along the cycle, for the depth bound.
    std::vector<long> Ecum(static_cast<std::size_t>(n), 0);
    for (int t = 1; t < n; ++t) Ecum[static_cast<std::size_t>(t)] = Ecum[static_cast<std::size_t>(t - 1)] + e[static_cast<std::size_t>(order[static_cast<std::size_t>(t)])];

    auto successors = [&](int s, int t, long p, auto&& emit) {
        if (p <= -1 && -p - 1 <= cutoff) {
            for (auto& [nn, v] : SK.rows[static_cast<std::size_t>(-p - 1)])
                if (nn + 1 <= window + 1) emit(static_cast<long>(-nn - 1), v);
        }
        if (s < t) {
            if (p <= -1 && -p - 1 <= window) emit(-p - 1, Rational(1));
        } else {
            if (p >= 0 && p <= window) emit(-p - 1, Rational(-1));
        }
    };

    const long e0 = e[static_cast<std::size_t>(order[0])];
    for (long p0 = -window - 1; p0 <= window; ++p0) {
        // After edge t, the state is the exponent q of xi_{order[t+1]}.
        std::map<long, Rational> cur;
        successors(order[0], order[static_cast<std::size_t>(1 % n)], p0, [&](long q, const Rational& v) {
            cur[q] += v;
        });
        for (int t = 1; t < n && !cur.empty(); ++t) {
            int s = order[static_cast<std::size_t>(t)], tt = order[static_cast<std::size_t>((t + 1) % n)];
            std::map<long, Rational> next;
            for (auto& [q, val] : cur) {
                if (val.is_zero()) continue;
                // Depth used so far: each remaining edge consumes at least one unit.
                long used = -(p0 + Ecum[static_cast<std::size_t>(t - 1)] + q);
                if (used > S - (n - t)) continue;
                long p = e[static_cast<std::size_t>(s)] - q;
                successors(s, tt, p, [&](long q2, const Rational& v) { next[q2] += val * v; });
            }
            cur = std::move(next);
        }
        auto it = cur.find(e0 - p0);
        if (it != cur.end()) total += it->second;
    }
    return total;
}

} // namespace detail

// Raw coefficient of prod xi_i^{-j_i-1} in (-1)^{n-1} sum_{n-cycles} prod A-hat, using
// kernel entries up to K.cutoff() and geometric expansions up to the window.
inline Rational connected_npoint_raw(const Kernel& K, const std::vector<int>& js, long window) {
    const int n = static_cast<int>(js.size());
    if (n == 0) throw std::invalid_argument("empty index list");
    for (int j : js)
        if (j < 1) throw std::invalid_argument("indices j must be positive");
    if (n == 1) return diagonal_coeff(K, js[0]);
    std::vector<long> e;
    long S = 0;
    for (int j : js) {
        e.push_back(-j - 1);
        S += j + 1;
    }
    detail::SparseKernel SK(K);
    std::vector<int> rest(static_cast<std::size_t>(n - 1));
    std::iota(rest.begin(), rest.end(), 1);
    Rational total(0);
    do {
        std::vector<int> order{0};
        order.insert(order.end(), rest.begin(), rest.end());
        total += detail::cycle_coefficient(SK, K.cutoff(), order, e, window, S);
    } while (std::next_permutation(rest.begin(), rest.end()));
    return n % 2 ? total : -total;
}

// Kernel indices and geometric orders needed: with S = sum (j_i + 1) every kernel index is
// at most S - n - 1 and every expansion order at most S.
struct NpointDemand {
    int cutoff;
    long window;
};
inline NpointDemand npoint_demand(const std::vector<int>& js) {
    long S = 0;
    for (int j : js) S += j + 1;
    const long n = static_cast<long>(js.size());
    if (n == 1) return {std::max(0, js[0] - 1), 0};
    return {static_cast<int>(std::max(0L, S - n - 1)), S};
}

struct CertifiedValue {
    Rational value;
    int cutoff = 0;  // kernel cutoff of the primary evaluation
    long window = 0;
};

// Evaluate at the demanded cutoff/window and again with both grown by 3; they must agree.
inline CertifiedValue connected_npoint_coeff(const Kernel& K, const std::vector<int>& js) {
    auto d = npoint_demand(js);
    if (K.cutoff() < d.cutoff + 3)
        throw CutoffError("kernel cutoff " + std::to_string(K.cutoff()) + " below required " + std::to_string(d.cutoff + 3));
    Rational v1 = connected_npoint_raw(K.restricted(d.cutoff), js, d.window);
    Rational v2 = connected_npoint_raw(K.restricted(d.cutoff + 3), js, d.window + 3);
    if (v1 != v2) throw InstabilityError("n-point coefficient unstable under truncation growth; increase cutoff");
    return {v1, d.cutoff, d.window};
}

// Coefficient of prod xi_i^{-j_i-1} in det(A-hat(xi_i, xi_j)), by enumerating permutations and
// every exponent assignment directly.
inline Rational determinant_npoint(const Kernel& K, const std::vector<int>& js, long window) {
    const int n = static_cast<int>(js.size());
    std::vector<long> e;
    for (int j : js) e.push_back(-j - 1);
    std::vector<int> sigma(static_cast<std::size_t>(n));
    std::iota(sigma.begin(), sigma.end(), 0);
    Rational total(0);
    do {
        // sign of sigma
        int sign = 1;
        std::vector<bool> seen(static_cast<std::size_t>(n), false);
        for (int i = 0; i < n; ++i) {
            if (seen[static_cast<std::size_t>(i)]) continue;
            int len = 0;
            for (int k = i; !seen[static_cast<std::size_t>(k)]; k = sigma[static_cast<std::size_t>(k)]) {
                seen[static_cast<std::size_t>(k)] = true;
                ++len;
            }
            if (len % 2 == 0) sign = -sign;
        }
        std::vector<int> inv(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) inv[static_cast<std::size_t>(sigma[static_cast<std::size_t>(i)])] = i;

        // Factor i is A-hat(xi_i, xi_sigma(i)); q[i] is the exponent of xi_sigma(i) in it.
        Rational prod_fixed(1);
        std::vector<int> moving;
        for (int i = 0; i < n; ++i) {
            if (sigma[static_cast<std::size_t>(i)] == i) prod_fixed *= diagonal_coeff(K, js[static_cast<std::size_t>(i)]);
            else moving.push_back(i);
        }
        if (prod_fixed.is_zero()) continue;
        std::vector<long> q(static_cast<std::size_t>(n), 0);
        std::vector<bool> assigned(static_cast<std::size_t>(n), false);
        Rational acc(0);
        std::function<void(std::size_t, Rational)> rec = [&](std::size_t idx, Rational val) {
            if (idx == moving.size()) { acc += val; return; }
            int i = moving[idx];
            for (long qi = -window - 1; qi <= window; ++qi) {
                q[static_cast<std::size_t>(i)] = qi;
                assigned[static_cast<std::size_t>(i)] = true;
                // Close every factor whose both exponents are now known.
                Rational v = val;
                // q_i enters factor i directly and factor sigma(i) through its first exponent.
                for (int f : {i, sigma[static_cast<std::size_t>(i)]}) {
                    int into = inv[static_cast<std::size_t>(f)];  // factor carrying xi_f as second argument
                    if (!assigned[static_cast<std::size_t>(f)] || !assigned[static_cast<std::size_t>(into)]) continue;
                    long p = e[static_cast<std::size_t>(f)] - q[static_cast<std::size_t>(into)];
                    v *= ahat_coeff(K, f, sigma[static_cast<std::size_t>(f)], p, q[static_cast<std::size_t>(f)], window);
                    if (v.is_zero()) break;
                }
                if (!v.is_zero()) rec(idx + 1, v);
                assigned[static_cast<std::size_t>(i)] = false;
            }
        };
        rec(0, prod_fixed);
        total += sign > 0 ? acc : -acc;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return total;
}

// Set partitions of the bits of mask.
inline void for_each_set_partition(unsigned mask, const std::function<void(const std::vector<unsigned>&)>& fn) {
    std::vector<unsigned> blocks;
    std::function<void(unsigned)> rec = [&](unsigned rest) {
        if (!rest) { fn(blocks); return; }
        unsigned low = rest & (~rest + 1);
        unsigned others = rest & ~low;
        // enumerate subsets of others to join low
        for (unsigned sub = others;; sub = (sub - 1) & others) {
            blocks.push_back(low | sub);
            rec(others & ~sub);
            blocks.pop_back();
            if (sub == 0) break;
        }
    };
    rec(mask);
}

// Family indexed by nonempty subsets (bitmask) of {0..n-1}.
using SubsetFamily = std::map<unsigned, Rational>;

// f^c(I) = sum_{pi} (-1)^{|pi|-1} (|pi|-1)! prod_{B in pi} f(B).
inline SubsetFamily mobius_connect(const SubsetFamily& f) {
    SubsetFamily out;
    for (auto& [mask, v] : f) {
        Rational total(0);
        for_each_set_partition(mask, [&](const std::vector<unsigned>& blocks) {
            long k = static_cast<long>(blocks.size());
            Rational term(factorial(k - 1));
            if (k % 2 == 0) term = -term;
            for (unsigned b : blocks) {
                auto it = f.find(b);
                if (it == f.end()) throw std::invalid_argument("family not closed under subsets");
                term *= it->second;
            }
            total += term;
        });
        out.emplace(mask, total);
    }
    return out;
}

// f(I) = sum_{pi} prod_{B in pi} f^c(B).
inline SubsetFamily mobius_disconnect(const SubsetFamily& fc) {
    SubsetFamily out;
    for (auto& [mask, v] : fc) {
        Rational total(0);
        for_each_set_partition(mask, [&](const std::vector<unsigned>& blocks) {
            Rational term(1);
            for (unsigned b : blocks) {
                auto it = fc.find(b);
                if (it == fc.end()) throw std::invalid_argument("family not closed under subsets");
                term *= it->second;
            }
            total += term;
        });
        out.emplace(mask, total);
    }
    return out;
}

// Determinant-route family on every subset of the labels, then connected by Mobius inversion.
inline Rational connected_via_determinants(const Kernel& K, const std::vector<int>& js, long window) {
    const unsigned n = static_cast<unsigned>(js.size());
    SubsetFamily f;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<int> sub;
        for (unsigned i = 0; i < n; ++i)
            if (mask >> i & 1u) sub.push_back(js[i]);
        f.emplace(mask, determinant_npoint(K, sub, window));
    }
    return mobius_connect(f).at((1u << n) - 1);
}

// <prod tau_{m_i}>_g = coefficient at j_i = 2 m_i + 1 divided by prod (2 m_i + 1)!!.
inline Rational intersection_number(const CorrelatorKey& key, const Kernel& K) {
    if (!key.valid()) return Rational(0);
    std::vector<int> js;
    Rational denom(1);
    for (int m : key.indices()) {
        js.push_back(2 * m + 1);
        denom *= Rational(double_factorial(2 * m + 1));
    }
    return connected_npoint_coeff(K, js).value / denom;
}

// Kernel cutoff sufficient for a key (including the +3 stability margin).
inline int required_cutoff(const CorrelatorKey& key) {
    std::vector<int> js;
    for (int m : key.indices()) js.push_back(2 * m + 1);
    return npoint_demand(js).cutoff + 3;
}

// Every genus-zero key of size n reproduces the multinomial (n-3)!/prod m_i!.
struct CheckReport {
    bool ok = true;
    int checked = 0;
    std::string first_failure;
};

inline std::vector<CorrelatorKey> keys_with(int n, int total) {
    std::vector<CorrelatorKey> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int rest, int maxv) {
        if (static_cast<int>(cur.size()) == n) {
            if (rest == 0) out.emplace_back(cur);
            return;
        }
        for (int v = std::min(rest, maxv); v >= 0; --v) {
            cur.push_back(v);
            rec(rest - v, v);
            cur.pop_back();
        }
    };
    rec(total, total);
    return out;
}

inline CheckReport genus0_check(int n, const Kernel& K) {
    if (n < 3) throw std::invalid_argument("genus-zero check needs n >= 3");
    CheckReport rep;
    for (auto& key : keys_with(n, n - 3)) {
        Rational expect(factorial(n - 3));
        for (int m : key.indices()) expect /= Rational(factorial(m));
        ++rep.checked;
        if (intersection_number(key, K) != expect) {
            rep.ok = false;
            rep.first_failure = key.str();
            return rep;
        }
    }
    return rep;
}

// <tau_0 prod tau_{m_i}> = sum_j <prod tau_{m_i - delta_ij}>.
inline bool puncture_check(const CorrelatorKey& key, const Kernel& K) {
    auto m = key.indices();
    auto it = std::find(m.begin(), m.end(), 0);
    if (it == m.end()) throw InvalidKey("puncture check needs a tau_0 insertion");
    if (!key.valid()) throw InvalidKey("key " + key.str() + " violates the selection rule");
    m.erase(it);
    if (m.empty() || (key.genus() == 0 && key.size() == 3))
        throw InvalidKey("puncture equation does not apply to " + key.str());
    Rational rhs(0);
    for (std::size_t j = 0; j < m.size(); ++j) {
        if (m[j] == 0) continue;
        auto r = m;
        r[j] -= 1;
        rhs += intersection_number(CorrelatorKey(r), K);
    }
    return intersection_number(key, K) == rhs;
}

// Keys of size <= maxN with indices m_i <= maxM whose monomial prod T_{2m_i+1}
// has grade <= cap (grade per T_k given by gradeOf(k)).
inline std::vector<CorrelatorKey> keys_for_truncation(int J, int D, long cap, const std::function<long(int)>& gradeOf) {
    std::vector<CorrelatorKey> out;
    const int maxM = (J - 1) / 2;
    std::vector<int> cur;
    std::function<void(int, long)> rec = [&](int minv, long grade) {
        if (!cur.empty()) {
            CorrelatorKey k(cur);
            if (k.valid()) out.push_back(k);
        }
        if (static_cast<int>(cur.size()) == D) return;
        for (int v = minv; v <= maxM; ++v) {
            long g = grade + gradeOf(2 * v + 1);
            if (g > cap) continue;
            cur.push_back(v);
            rec(v, g);
            cur.pop_back();
        }
    };
    rec(0, 0);
    return out;
}

enum class Grading { TotalDegree, Weight };

// F = sum_keys <prod tau_{m_i}> prod t_{m_i} / prod r_k!, t_m = (2m+1)!! T_{2m+1},
// as a polynomial in T_1..T_J (variable k-1 is T_k) with at most D factors per monomial.
inline MultiPoly free_energy_truncation(int J, int D, const Kernel& K, Grading grading = Grading::TotalDegree,
                                        long cap = -1) {
    std::vector<int> grades;
    for (int k = 1; k <= J; ++k) grades.push_back(grading == Grading::Weight ? k : 1);
    if (cap < 0) cap = grading == Grading::Weight ? kExact : D;
    auto gradeOf = [&](int k) { return static_cast<long>(grades[static_cast<std::size_t>(k - 1)]); };
    MultiPoly F(grades, cap);
    std::vector<std::string> missing;
    for (auto& key : keys_for_truncation(J, D, cap, gradeOf)) {
        if (K.cutoff() < required_cutoff(key)) {
            missing.push_back(key.str());
            continue;
        }
        Rational v = intersection_number(key, K);
        MultiPoly::Exps e(static_cast<std::size_t>(J), 0);
        for (int m : key.indices()) {
            e[static_cast<std::size_t>(2 * m)] += 1;
            v *= Rational(double_factorial(2 * m + 1));
        }
        for (int r : e) v /= Rational(factorial(r));
        F.add_term(e, v);
    }
    if (!missing.empty()) {
        std::string msg = "kernel cutoff " + std::to_string(K.cutoff()) + " too small for keys:";
        for (auto& s : missing) msg += " (" + s + ")";
        throw CutoffError(msg);
    }
    return F;
}

} // namespace wk
