#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ellw2/errors.hpp"
#include "ellw2/symmat.hpp"

namespace ellw2 {

/// Per-coordinate variances sigma^2_(1..m). Entries of user-supplied vectors
/// must be strictly positive; vectors produced by the library (rotated
/// diagonals of PSD matrices) may contain zeros.
struct VarianceVector {
    std::vector<double> values;

    static VarianceVector checked(std::vector<double> v) {
        if (v.empty()) throw DimMismatch("variance vector must have length >= 1");
        for (double x : v) {
            if (!std::isfinite(x) || x <= 0.0)
                throw NonPositiveVariance("variance entry " + std::to_string(x) +
                                          " is not strictly positive");
        }
        return VarianceVector{std::move(v)};
    }

    std::size_t size() const { return values.size(); }
};

namespace detail {

inline void require_same_dim(const SymMatrix& a, const SymMatrix& b) {
    if (a.dim() != b.dim())
        throw DimMismatch("operand dimensions differ: " + std::to_string(a.dim()) + " vs " +
                          std::to_string(b.dim()));
}

inline void require_pd(const SymMatrix& a, const char* name) {
    if (!is_positive_definite(a))
        throw NotPD(std::string(name) + " is not positive definite");
}

inline void require_psd(const SymMatrix& a, const char* name) {
    const SpectralDecomposition d = eigh(a);
    if (d.eigenvalues.back() < -1e-10 * std::max(d.eigenvalues.front(), 1.0))
        throw NotPSD(std::string(name) + " is not positive semidefinite");
}

/// tr[Sx + Sy - 2 (Sx^{1/2} Sy Sx^{1/2})^{1/2}], the argument of the
/// Bures-Wasserstein square root. PSD is enforced by the fractional powers.
inline double bw_trace_argument(const SymMatrix& sx, const SymMatrix& sy) {
    const SymMatrix sx_half = matrix_power_psd(sx, 0.5);
    const std::size_t m = sx.dim();
    const auto inner = mat_mul(sx_half.entries(), mat_mul(sy.entries(), sx_half.entries(), m), m);
    const double cross = trace_power(SymMatrix(m, inner), 0.5);
    return sx.trace() + sy.trace() - 2.0 * cross;
}

/// The exact value is nonnegative; roundoff within (-1e-9, 0) is clamped.
inline double sqrt_clamped(double trace_arg) {
    if (trace_arg < 0.0) {
        if (trace_arg <= -1e-9)
            throw NumericError("trace argument " + std::to_string(trace_arg) +
                               " is negative beyond roundoff tolerance");
        trace_arg = 0.0;
    }
    return std::sqrt(trace_arg);
}

}  // namespace detail

/// W2 distance between two same-generator elliptical laws with covariances
/// sx and sy: sqrt(tr[Sx + Sy - 2 (Sx^{1/2} Sy Sx^{1/2})^{1/2}]). Requires
/// both covariances positive definite.
inline double w2_closed(const SymMatrix& sx, const SymMatrix& sy) {
    detail::require_same_dim(sx, sy);
    detail::require_pd(sx, "first covariance");
    detail::require_pd(sy, "second covariance");
    return detail::sqrt_clamped(detail::bw_trace_argument(sx, sy));
}

/// Same expression as w2_closed, used as a certified lower bound on W2
/// between ANY two distributions with these covariances. Accepts PSD input.
inline double gelbrich_bound(const SymMatrix& sx, const SymMatrix& sy) {
    detail::require_same_dim(sx, sy);
    detail::require_psd(sx, "first covariance");
    detail::require_psd(sy, "second covariance");
    return detail::sqrt_clamped(detail::bw_trace_argument(sx, sy));
}

/// sum_i sqrt(Sigma_ii) - tr(Sigma^{1/2}). Nonnegative, and zero exactly
/// when Sigma is diagonal.
inline double trace_sqrt_gap(const SymMatrix& sigma) {
    detail::require_pd(sigma, "covariance");
    double diag_sum = 0.0;
    for (std::size_t i = 0; i < sigma.dim(); ++i) diag_sum += std::sqrt(sigma(i, i));
    return diag_sum - trace_power(sigma, 0.5);
}

/// sum_i Sigma_ii^q - tr(Sigma^q) for 0 < q < 1; the q = 1/2 case is
/// trace_sqrt_gap.
inline double trace_power_gap(const SymMatrix& sigma, double q) {
    if (!(q > 0.0) || !(q < 1.0))
        throw BadExponent("exponent q = " + std::to_string(q) + " outside (0, 1)");
    detail::require_pd(sigma, "covariance");
    double diag_sum = 0.0;
    for (std::size_t i = 0; i < sigma.dim(); ++i) diag_sum += std::pow(sigma(i, i), q);
    return diag_sum - trace_power(sigma, q);
}

/// Both sides of the Klein-inequality step behind trace_sqrt_gap, with
/// Lambda = diag(Sigma):
///   lhs = tr(Lambda^{1/2} - Sigma^{1/2})
///   rhs = tr[(Sigma - Lambda) (-1/2 Lambda^{-1/2})]
/// The rhs cancels to zero because Sigma - Lambda has a zero diagonal.
struct KleinResidual {
    double lhs;
    double rhs;
};

inline KleinResidual klein_residual(const SymMatrix& sigma) {
    detail::require_pd(sigma, "covariance");
    const std::size_t m = sigma.dim();

    double lhs = 0.0;
    for (std::size_t i = 0; i < m; ++i) lhs += std::sqrt(sigma(i, i));
    lhs -= trace_power(sigma, 0.5);

    std::vector<double> diff = sigma.entries();  // Sigma - Lambda
    std::vector<double> grad(m * m, 0.0);        // -1/2 Lambda^{-1/2}
    for (std::size_t i = 0; i < m; ++i) {
        diff[i * m + i] -= sigma(i, i);
        grad[i * m + i] = -0.5 / std::sqrt(sigma(i, i));
    }
    const auto prod = detail::mat_mul(diff, grad, m);
    double rhs = 0.0;
    for (std::size_t i = 0; i < m; ++i) rhs += prod[i * m + i];
    return {lhs, rhs};
}

/// sqrt(sum_i (sqrt(dx_i) - sqrt(dy_i))^2): lower bound on W2 between any
/// law with covariance diag(dx) and any law whose covariance has diagonal
/// dy. Pairing is positional.
inline double diag_bound(const VarianceVector& dx, const VarianceVector& dy) {
    if (dx.size() != dy.size())
        throw DimMismatch("variance vectors have lengths " + std::to_string(dx.size()) + " vs " +
                          std::to_string(dy.size()));
    double s = 0.0;
    for (std::size_t i = 0; i < dx.size(); ++i) {
        const double d = std::sqrt(dx.values[i]) - std::sqrt(dy.values[i]);
        s += d * d;
    }
    return std::sqrt(s);
}

/// Lower bound on W2 obtained by rotating sy into the eigenbasis of sx and
/// keeping only the rotated diagonal: with eigh(sx) = (lambda, U) and
/// rotated = diag(U^T sy U),
///   bound = sqrt(sum_i (sqrt(lambda_i) - sqrt(rotated_i))^2).
/// With repeated eigenvalues of sx the eigenbasis is not unique; the
/// deterministic eigh convention fixes the reported value, which remains a
/// valid lower bound for any orthonormal choice.
struct EigenbasisBound {
    double bound;
    VarianceVector rotated_diag;
};

inline EigenbasisBound eigenbasis_bound(const SymMatrix& sx, const SymMatrix& sy) {
    detail::require_same_dim(sx, sy);
    detail::require_pd(sx, "first covariance");
    const std::size_t m = sx.dim();

    detail::require_psd(sy, "second covariance");
    const SpectralDecomposition dx = eigh(sx);

    std::vector<double> rotated(m);
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        double quad = 0.0;  // u_i^T sy u_i
        for (std::size_t r = 0; r < m; ++r) {
            double row = 0.0;
            for (std::size_t c = 0; c < m; ++c) row += sy(r, c) * dx.vec(c, i);
            quad += dx.vec(r, i) * row;
        }
        rotated[i] = std::max(quad, 0.0);
        const double d = std::sqrt(dx.eigenvalues[i]) - std::sqrt(rotated[i]);
        s += d * d;
    }
    return {std::sqrt(s), VarianceVector{std::move(rotated)}};
}

/// U_x diag(target) U_x^T: the covariance of the W2-minimizing law with
/// prescribed variances in the eigenbasis of sx. Attains equality between
/// gelbrich_bound and eigenbasis_bound.
inline SymMatrix minimizer_covariance(const SymMatrix& sx, const VarianceVector& target) {
    detail::require_pd(sx, "covariance");
    if (target.size() != sx.dim())
        throw DimMismatch("target has length " + std::to_string(target.size()) +
                          ", covariance has dimension " + std::to_string(sx.dim()));
    for (double t : target.values) {
        if (!std::isfinite(t) || t <= 0.0)
            throw NonPositiveVariance("target entry " + std::to_string(t) +
                                      " is not strictly positive");
    }
    const SpectralDecomposition d = eigh(sx);
    return detail::congruence_diag(d.eigenvectors, target.values, sx.dim());
}

/// Aggregate of every bound for one covariance pair. closed_form is present
/// only under the same-generator assumption; diag_bound only when sx is
/// diagonal (off-diagonal max <= 1e-12).
struct BoundReport {
    std::optional<double> closed_form;
    double gelbrich = 0.0;
    double eigenbasis = 0.0;
    std::optional<double> diag = std::nullopt;
    VarianceVector rotated_diag;
};

inline BoundReport full_report(const SymMatrix& sx, const SymMatrix& sy, bool same_generator) {
    detail::require_same_dim(sx, sy);
    detail::require_pd(sx, "first covariance");

    BoundReport report;
    report.gelbrich = gelbrich_bound(sx, sy);
    if (same_generator) report.closed_form = report.gelbrich;

    EigenbasisBound eb = eigenbasis_bound(sx, sy);
    report.eigenbasis = eb.bound;
    report.rotated_diag = std::move(eb.rotated_diag);

    if (sx.off_diag_max_abs() <= 1e-12)
        report.diag = diag_bound(VarianceVector::checked(sx.diag()),
                                 VarianceVector::checked(sy.diag()));
    return report;
}

}  // namespace ellw2
