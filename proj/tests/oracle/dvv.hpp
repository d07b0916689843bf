#pragma once

// Intersection numbers from the Virasoro (DVV) recursion, by plain mpq_class
// arithmetic and memoization. Shares no code with the library.

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <vector>

namespace oracle {

inline mpz_class dfact(long n) {
    mpz_class r = 1;
    for (long k = n; k > 1; k -= 2) r *= k;
    return r;
}

class Dvv {
public:
    mpq_class operator()(std::vector<int> d) {
        std::sort(d.begin(), d.end());
        if (!d.empty() && d.front() < 0) return 0;
        long s = 0;
        for (int x : d) s += x;
        long n = static_cast<long>(d.size());
        if (n == 0 || (s - n) % 3 != 0 || s - n < -3) return 0;
        if (auto it = memo_.find(d); it != memo_.end()) return it->second;
        mpq_class r = compute(d);
        memo_[d] = r;
        return r;
    }

private:
    mpq_class compute(std::vector<int> d) {
        if (d == std::vector<int>{0, 0, 0}) return 1;
        if (d == std::vector<int>{1}) return mpq_class(1, 24);
        // remove the largest index as tau_{k+1}
        int k = d.back() - 1;
        d.pop_back();
        const std::size_t n = d.size();
        mpq_class acc = 0;
        for (std::size_t j = 0; j < n; ++j) {
            auto e = d;
            e[j] += k;
            mpq_class w(dfact(2L * k + 2 * d[j] + 1), dfact(2L * d[j] - 1));
            w.canonicalize();
            acc += w * (*this)(e);
        }
        for (int r = 0; r + 1 <= k; ++r) {
            int s = k - 1 - r;
            mpq_class w = mpq_class(dfact(2L * r + 1) * dfact(2L * s + 1)) / 2;
            auto e = d;
            e.push_back(r);
            e.push_back(s);
            acc += w * (*this)(e);
            for (unsigned mask = 0; mask < (1u << n); ++mask) {
                std::vector<int> I{r}, J{s};
                for (std::size_t j = 0; j < n; ++j) (mask >> j & 1u ? I : J).push_back(d[j]);
                acc += w * (*this)(I) * (*this)(J);
            }
        }
        return acc / dfact(2L * k + 3);
    }

    std::map<std::vector<int>, mpq_class> memo_;
};

} // namespace oracle
