#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "ellw2/elliptical.hpp"
#include "ellw2/errors.hpp"

namespace ellw2 {

/// Squared-Euclidean cost matrix between two equal-size point sets.
struct CostMatrix {
    std::size_t n = 0;
    std::vector<double> entries;  // row-major n x n

    double operator()(std::size_t i, std::size_t j) const { return entries[i * n + j]; }
};

/// A perfect matching row -> column and its total cost.
struct Assignment {
    std::vector<std::size_t> perm;
    double total_cost = 0.0;
};

inline CostMatrix cost_matrix(const SampleSet& x, const SampleSet& y) {
    if (x.n != y.n || x.dim != y.dim)
        throw SizeMismatch("sample sets disagree: " + std::to_string(x.n) + "x" +
                           std::to_string(x.dim) + " vs " + std::to_string(y.n) + "x" +
                           std::to_string(y.dim));
    CostMatrix c;
    c.n = x.n;
    c.entries.assign(x.n * x.n, 0.0);
    for (std::size_t i = 0; i < x.n; ++i) {
        for (std::size_t j = 0; j < y.n; ++j) {
            double s = 0.0;
            for (std::size_t d = 0; d < x.dim; ++d) {
                const double diff = x(i, d) - y(j, d);
                s += diff * diff;
            }
            c.entries[i * x.n + j] = s;
        }
    }
    return c;
}

namespace detail {

inline double assignment_cost(const CostMatrix& c, const std::vector<std::size_t>& perm) {
    double total = 0.0;
    for (std::size_t i = 0; i < c.n; ++i) total += c(i, perm[i]);
    return total;
}

}  // namespace detail

/// Globally optimal assignment via the Hungarian algorithm with dual
/// potentials (shortest augmenting paths), O(n^3). Deterministic: fixed
/// scan order, strict improvement comparisons.
inline Assignment assignment_min(const CostMatrix& cost) {
    const std::size_t n = cost.n;
    if (n == 0) return {};
    const double inf = std::numeric_limits<double>::infinity();

    // 1-based arrays; p[j] is the row matched to column j, p[0] the row
    // currently seeking a column.
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1, 0.0);
    std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
    std::vector<char> used(n + 1, 0);

    for (std::size_t i = 1; i <= n; ++i) {
        p[0] = i;
        std::size_t j0 = 0;
        std::fill(minv.begin(), minv.end(), inf);
        std::fill(used.begin(), used.end(), 0);
        do {
            used[j0] = 1;
            const std::size_t i0 = p[j0];
            double delta = inf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost((i0 - 1), (j - 1)) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    Assignment a;
    a.perm.assign(n, 0);
    for (std::size_t j = 1; j <= n; ++j) a.perm[p[j] - 1] = j - 1;
    a.total_cost = detail::assignment_cost(cost, a.perm);
    return a;
}

/// Exhaustive minimum over all n! permutations, n <= 8. Ties resolve to the
/// lexicographically smallest permutation.
inline Assignment brute_force_min(const CostMatrix& cost) {
    if (cost.n > 8)
        throw TooLarge("brute force capped at n = 8, got " + std::to_string(cost.n));
    std::vector<std::size_t> perm(cost.n);
    std::iota(perm.begin(), perm.end(), 0);

    Assignment best{perm, detail::assignment_cost(cost, perm)};
    while (std::next_permutation(perm.begin(), perm.end())) {
        const double c = detail::assignment_cost(cost, perm);
        if (c < best.total_cost) {
            best.perm = perm;
            best.total_cost = c;
        }
    }
    return best;
}

/// Exact W2 distance between the equal-weight empirical measures of two
/// same-size sample sets: sqrt(min assignment cost / n).
inline double empirical_w2(const SampleSet& x, const SampleSet& y) {
    if (x.n > 2048 || y.n > 2048)
        throw TooLarge("empirical W2 capped at n = 2048, got " + std::to_string(std::max(x.n, y.n)));
    if (x.n < 1) throw SizeMismatch("sample sets must be nonempty");
    const CostMatrix c = cost_matrix(x, y);
    return std::sqrt(assignment_min(c).total_cost / static_cast<double>(x.n));
}

}  // namespace ellw2
