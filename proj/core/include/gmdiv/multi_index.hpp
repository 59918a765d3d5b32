#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace gmdiv {

/// Multi-index k = (k_1, ..., k_d) of nonnegative integers.
struct MultiIndex {
    std::vector<int> entries;

    int dim() const { return static_cast<int>(entries.size()); }
    int total_degree() const {
        int s = 0;
        for (int k : entries) s += k;
        return s;
    }
    double log_factorial() const;  // log(k!) = sum_j log(k_j!)

    bool operator==(const MultiIndex&) const = default;
};

inline double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

/// Number of multi-indices in d dimensions with total degree <= n: binom(n+d, d).
inline double multi_index_count(int n, int d) { return binomial(n + d, d); }

/// All multi-indices of total degree <= n in graded-lexicographic order.
/// Throws if the count exceeds `cap`.
std::vector<MultiIndex> enumerate_multi_indices(int n, int d,
                                                std::int64_t cap = 1000000);

inline double log_factorial(int k) {
    double s = 0.0;
    for (int i = 2; i <= k; ++i) s += std::log(static_cast<double>(i));
    return s;
}

inline double double_factorial(int k) {
    double r = 1.0;
    for (int i = k; i >= 2; i -= 2) r *= i;
    return r;
}

}  // namespace gmdiv
