#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ellw2/errors.hpp"
#include "ellw2/rng.hpp"
#include "ellw2/symmat.hpp"

namespace ellw2 {

/// Density-generator tag for the two supported elliptical families. Both
/// have finite covariance: Gaussian always, Student-t for df > 2.
struct Generator {
    enum class Kind { Gaussian, StudentT };

    Kind kind = Kind::Gaussian;
    double df = 0.0;  // StudentT only

    static Generator gaussian() { return {Kind::Gaussian, 0.0}; }

    static Generator student_t(double df) {
        if (!(df > 2.0))
            throw BadDf("Student-t degrees of freedom must exceed 2, got " + std::to_string(df));
        return {Kind::StudentT, df};
    }
};

/// A generator tag plus a positive definite covariance.
struct EllipticalSpec {
    Generator generator;
    SymMatrix covariance;

    EllipticalSpec(Generator g, SymMatrix cov) : generator(g), covariance(std::move(cov)) {
        if (!is_positive_definite(covariance))
            throw NotPD("elliptical covariance is not positive definite");
    }
};

/// n draws of an m-dimensional law, one realization per row.
struct SampleSet {
    std::size_t n = 0;
    std::size_t dim = 0;
    std::vector<double> rows;  // row-major n x dim
    std::uint64_t seed = 0;

    double operator()(std::size_t i, std::size_t d) const { return rows[i * dim + d]; }
};

/// Draws n rows from the elliptical law. Gaussian rows are z (Sigma^{1/2})^T
/// with z standard normal; Student-t(nu) rows are z (S^{1/2})^T / sqrt(g/nu)
/// with g chi-square(nu) and S = ((nu-2)/nu) Sigma, so the population
/// covariance is exactly Sigma. Deterministic for fixed (spec, n, seed).
inline SampleSet sample(const EllipticalSpec& spec, std::size_t n, std::uint64_t seed) {
    if (n < 1) throw TooFewSamples("sample count must be >= 1");
    const std::size_t m = spec.covariance.dim();
    const bool student = spec.generator.kind == Generator::Kind::StudentT;
    const double nu = spec.generator.df;
    if (student && !(nu > 2.0))
        throw BadDf("Student-t degrees of freedom must exceed 2, got " + std::to_string(nu));

    SymMatrix color = matrix_power_psd(spec.covariance, 0.5);
    if (student) {
        std::vector<double> scaled = color.entries();
        const double f = std::sqrt((nu - 2.0) / nu);
        for (double& v : scaled) v *= f;
        color = SymMatrix(m, std::move(scaled));
    }

    Rng rng(seed);
    SampleSet out;
    out.n = n;
    out.dim = m;
    out.seed = seed;
    out.rows.assign(n * m, 0.0);

    std::vector<double> z(m);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t d = 0; d < m; ++d) z[d] = rng.next_normal();
        const double radial = student ? 1.0 / std::sqrt(rng.next_chi_square(nu) / nu) : 1.0;
        for (std::size_t d = 0; d < m; ++d) {
            double x = 0.0;
            for (std::size_t k = 0; k < m; ++k) x += z[k] * color(k, d);
            out.rows[i * m + d] = x * radial;
        }
    }
    return out;
}

/// Second-moment matrix (1/n) sum_k x_k x_k^T, optionally after subtracting
/// the sample mean (divisor stays n).
inline SymMatrix sample_covariance(const SampleSet& s, bool center) {
    if (s.n < (center ? 2u : 1u))
        throw TooFewSamples("need at least " + std::string(center ? "2" : "1") + " samples");
    const std::size_t m = s.dim;

    std::vector<double> mean(m, 0.0);
    if (center) {
        for (std::size_t i = 0; i < s.n; ++i)
            for (std::size_t d = 0; d < m; ++d) mean[d] += s(i, d);
        for (double& v : mean) v /= static_cast<double>(s.n);
    }

    std::vector<double> acc(m * m, 0.0);
    for (std::size_t i = 0; i < s.n; ++i) {
        for (std::size_t a = 0; a < m; ++a) {
            const double xa = s(i, a) - mean[a];
            for (std::size_t b = a; b < m; ++b) acc[a * m + b] += xa * (s(i, b) - mean[b]);
        }
    }
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = a; b < m; ++b) {
            const double v = acc[a * m + b] / static_cast<double>(s.n);
            acc[a * m + b] = v;
            acc[b * m + a] = v;
        }
    }
    return SymMatrix(m, std::move(acc));
}

namespace detail {

/// Random orthogonal matrix: Gaussian entries, then twice-iterated
/// Gram-Schmidt on the columns. Row-major, column k is the k-th basis
/// vector.
inline std::vector<double> random_orthogonal(std::size_t m, Rng& rng) {
    std::vector<double> u(m * m);
    for (double& v : u) v = rng.next_normal();

    for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t c = 0; c < m; ++c) {
            for (std::size_t p = 0; p < c; ++p) {
                double dot = 0.0;
                for (std::size_t r = 0; r < m; ++r) dot += u[r * m + c] * u[r * m + p];
                for (std::size_t r = 0; r < m; ++r) u[r * m + c] -= dot * u[r * m + p];
            }
            double norm = 0.0;
            for (std::size_t r = 0; r < m; ++r) norm += u[r * m + c] * u[r * m + c];
            norm = std::sqrt(norm);
            for (std::size_t r = 0; r < m; ++r) u[r * m + c] /= norm;
        }
    }
    return u;
}

}  // namespace detail

/// Random PD test matrix: U diag(lambda) U^T with U random orthogonal and
/// lambda log-uniform in [1/condition_cap, 1] (floored at 1e-9 so the
/// result always passes is_positive_definite, even for extreme caps).
inline SymMatrix random_pd(std::size_t m, std::uint64_t seed, double condition_cap) {
    if (m < 1) throw NotSquare("dimension must be >= 1");
    if (!(condition_cap >= 1.0)) throw NumericError("condition_cap must be >= 1");
    Rng rng(seed);
    const std::vector<double> u = detail::random_orthogonal(m, rng);
    const double floor_log = std::log(std::max(1.0 / condition_cap, 1e-9));
    std::vector<double> lam(m);
    for (std::size_t i = 0; i < m; ++i) lam[i] = std::exp(floor_log * rng.next_unit());
    return detail::congruence_diag(u, lam, m);
}

/// Random PD matrix with unit diagonal: random_pd rescaled by
/// D^{-1/2} A D^{-1/2} with D = diag(A). Diagonal entries are exactly 1.
inline SymMatrix random_correlation(std::size_t m, std::uint64_t seed) {
    const SymMatrix a = random_pd(m, seed, 100.0);
    std::vector<double> inv_sqrt(m);
    for (std::size_t i = 0; i < m; ++i) inv_sqrt[i] = 1.0 / std::sqrt(a(i, i));
    std::vector<double> c(m * m);
    for (std::size_t i = 0; i < m; ++i) {
        c[i * m + i] = 1.0;
        for (std::size_t j = i + 1; j < m; ++j) {
            const double v = a(i, j) * inv_sqrt[i] * inv_sqrt[j];
            c[i * m + j] = v;
            c[j * m + i] = v;
        }
    }
    return SymMatrix(m, std::move(c));
}

}  // namespace ellw2
