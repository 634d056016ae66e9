#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

#include "ellw2/errors.hpp"

namespace ellw2 {

/// Dense real symmetric matrix, row-major. Mirrored entries are bit-exact
/// equal after construction; instances are immutable.
class SymMatrix {
public:
    SymMatrix() = default;

    /// Validating constructor. Accepts a square row-major buffer whose skew
    /// max|a_ij - a_ji| is at most 1e-8 * (1 + max|a|); mirrored entries are
    /// averaged so the stored matrix is exactly symmetric.
    SymMatrix(std::size_t dim, std::vector<double> entries) : dim_(dim), a_(std::move(entries)) {
        if (dim_ == 0) throw NotSquare("matrix must have dimension >= 1");
        if (a_.size() != dim_ * dim_)
            throw NotSquare("entry count does not match a square " + std::to_string(dim_) + "x" +
                            std::to_string(dim_) + " matrix");
        double max_abs = 0.0;
        for (double v : a_) {
            if (!std::isfinite(v)) throw NonFinite("matrix entry is NaN or infinite");
            max_abs = std::max(max_abs, std::abs(v));
        }
        const double tol = 1e-8 * (1.0 + max_abs);
        for (std::size_t i = 0; i < dim_; ++i) {
            for (std::size_t j = i + 1; j < dim_; ++j) {
                const double upper = a_[i * dim_ + j];
                const double lower = a_[j * dim_ + i];
                if (std::abs(upper - lower) > tol)
                    throw AsymmetricInput("skew " + std::to_string(std::abs(upper - lower)) +
                                          " at (" + std::to_string(i) + "," + std::to_string(j) +
                                          ") exceeds tolerance " + std::to_string(tol));
                const double avg = (upper + lower) / 2.0;
                a_[i * dim_ + j] = avg;
                a_[j * dim_ + i] = avg;
            }
        }
    }

    static SymMatrix identity(std::size_t dim) {
        std::vector<double> e(dim * dim, 0.0);
        for (std::size_t i = 0; i < dim; ++i) e[i * dim + i] = 1.0;
        return SymMatrix(dim, std::move(e));
    }

    static SymMatrix diagonal(const std::vector<double>& d) {
        std::vector<double> e(d.size() * d.size(), 0.0);
        for (std::size_t i = 0; i < d.size(); ++i) e[i * d.size() + i] = d[i];
        return SymMatrix(d.size(), std::move(e));
    }

    std::size_t dim() const { return dim_; }

    double operator()(std::size_t i, std::size_t j) const { return a_[i * dim_ + j]; }

    const std::vector<double>& entries() const { return a_; }

    double trace() const {
        double t = 0.0;
        for (std::size_t i = 0; i < dim_; ++i) t += a_[i * dim_ + i];
        return t;
    }

    std::vector<double> diag() const {
        std::vector<double> d(dim_);
        for (std::size_t i = 0; i < dim_; ++i) d[i] = a_[i * dim_ + i];
        return d;
    }

    double max_abs() const {
        double m = 0.0;
        for (double v : a_) m = std::max(m, std::abs(v));
        return m;
    }

    double off_diag_max_abs() const {
        double m = 0.0;
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j)
                if (i != j) m = std::max(m, std::abs(a_[i * dim_ + j]));
        return m;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (double v : a_) s += v * v;
        return std::sqrt(s);
    }

private:
    std::size_t dim_ = 0;
    std::vector<double> a_;
};

/// Builds a SymMatrix from untrusted row data (e.g. a parsed CSV file).
inline SymMatrix validate_symmetric(const std::vector<std::vector<double>>& raw) {
    if (raw.empty()) throw NotSquare("matrix must have dimension >= 1");
    const std::size_t m = raw.size();
    std::vector<double> flat;
    flat.reserve(m * m);
    for (const auto& row : raw) {
        if (row.size() != m)
            throw NotSquare("row has " + std::to_string(row.size()) + " entries, expected " +
                            std::to_string(m));
        flat.insert(flat.end(), row.begin(), row.end());
    }
    return SymMatrix(m, std::move(flat));
}

/// Eigendecomposition of a symmetric matrix. Eigenvalues are sorted
/// descending; eigenvector i is column i of `eigenvectors` (row-major).
/// Sign convention: in each column the entry of largest magnitude is
/// positive, ties broken by lowest row index.
struct SpectralDecomposition {
    std::size_t dim = 0;
    std::vector<double> eigenvalues;
    std::vector<double> eigenvectors;

    double vec(std::size_t row, std::size_t col) const { return eigenvectors[row * dim + col]; }
};

namespace detail {

/// Plain dense product C = A * B of row-major dim x dim buffers.
inline std::vector<double> mat_mul(const std::vector<double>& a, const std::vector<double>& b,
                                   std::size_t m) {
    std::vector<double> c(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t k = 0; k < m; ++k) {
            const double aik = a[i * m + k];
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < m; ++j) c[i * m + j] += aik * b[k * m + j];
        }
    }
    return c;
}

/// U diag(d) U^T with each (i,j) entry computed once and mirrored, so the
/// result is exactly symmetric.
inline SymMatrix congruence_diag(const std::vector<double>& u, const std::vector<double>& d,
                                 std::size_t m) {
    std::vector<double> c(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i; j < m; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < m; ++k) s += u[i * m + k] * d[k] * u[j * m + k];
            c[i * m + j] = s;
            c[j * m + i] = s;
        }
    }
    return SymMatrix(m, std::move(c));
}

}  // namespace detail

/// Cyclic Jacobi eigensolver. Converged when every off-diagonal magnitude is
/// at most 1e-12 * ||A||_F; at most 100 sweeps. Deterministic: fixed sweep
/// order, no data-dependent pivoting.
inline SpectralDecomposition eigh(const SymMatrix& a) {
    const std::size_t m = a.dim();
    std::vector<double> w = a.entries();
    std::vector<double> v(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i) v[i * m + i] = 1.0;

    const double off_tol = 1e-12 * a.frobenius_norm();
    const int max_sweeps = 100;

    auto max_off = [&]() {
        double mx = 0.0;
        for (std::size_t p = 0; p < m; ++p)
            for (std::size_t q = p + 1; q < m; ++q) mx = std::max(mx, std::abs(w[p * m + q]));
        return mx;
    };

    int sweep = 0;
    while (max_off() > off_tol) {
        if (++sweep > max_sweeps)
            throw NoConvergence("Jacobi eigensolver did not converge in " +
                                std::to_string(max_sweeps) + " sweeps");
        for (std::size_t p = 0; p < m; ++p) {
            for (std::size_t q = p + 1; q < m; ++q) {
                const double apq = w[p * m + q];
                if (std::abs(apq) <= off_tol) continue;
                const double app = w[p * m + p];
                const double aqq = w[q * m + q];
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                for (std::size_t k = 0; k < m; ++k) {
                    const double wkp = w[k * m + p];
                    const double wkq = w[k * m + q];
                    w[k * m + p] = c * wkp - s * wkq;
                    w[k * m + q] = s * wkp + c * wkq;
                }
                for (std::size_t k = 0; k < m; ++k) {
                    const double wpk = w[p * m + k];
                    const double wqk = w[q * m + k];
                    w[p * m + k] = c * wpk - s * wqk;
                    w[q * m + k] = s * wpk + c * wqk;
                }
                for (std::size_t k = 0; k < m; ++k) {
                    const double vkp = v[k * m + p];
                    const double vkq = v[k * m + q];
                    v[k * m + p] = c * vkp - s * vkq;
                    v[k * m + q] = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return w[i * m + i] > w[j * m + j];
    });

    SpectralDecomposition out;
    out.dim = m;
    out.eigenvalues.resize(m);
    out.eigenvectors.resize(m * m);
    for (std::size_t c = 0; c < m; ++c) {
        const std::size_t src = order[c];
        out.eigenvalues[c] = w[src * m + src];
        std::size_t lead = 0;
        double lead_abs = -1.0;
        for (std::size_t r = 0; r < m; ++r) {
            const double av = std::abs(v[r * m + src]);
            if (av > lead_abs) {
                lead_abs = av;
                lead = r;
            }
        }
        const double sign = v[lead * m + src] < 0.0 ? -1.0 : 1.0;
        for (std::size_t r = 0; r < m; ++r) out.eigenvectors[r * m + c] = sign * v[r * m + src];
    }
    return out;
}

/// True iff lambda_min > 1e-10 * max(lambda_max, 1).
inline bool is_positive_definite(const SymMatrix& a) {
    const SpectralDecomposition d = eigh(a);
    const double lam_max = d.eigenvalues.front();
    const double lam_min = d.eigenvalues.back();
    return lam_min > 1e-10 * std::max(lam_max, 1.0);
}

namespace detail {

inline void require_q_in_unit_interval(double q) {
    if (!(q > 0.0) || !(q <= 1.0))
        throw BadExponent("exponent q = " + std::to_string(q) + " outside (0, 1]");
}

/// Eigenvalues of a PSD-up-to-roundoff matrix, negatives clamped to zero.
/// Throws NotPSD when lambda_min < -1e-10 * max(lambda_max, 1).
inline SpectralDecomposition eigh_psd_clamped(const SymMatrix& a) {
    SpectralDecomposition d = eigh(a);
    const double lam_max = d.eigenvalues.front();
    const double lam_min = d.eigenvalues.back();
    if (lam_min < -1e-10 * std::max(lam_max, 1.0))
        throw NotPSD("matrix has eigenvalue " + std::to_string(lam_min) +
                     " below the PSD tolerance");
    for (double& lam : d.eigenvalues) lam = std::max(lam, 0.0);
    return d;
}

}  // namespace detail

/// Fractional matrix power U diag(lambda^q) U^T for PSD input, q in (0, 1].
/// Tiny negative eigenvalues from roundoff are clamped to zero.
inline SymMatrix matrix_power_psd(const SymMatrix& a, double q) {
    detail::require_q_in_unit_interval(q);
    SpectralDecomposition d = detail::eigh_psd_clamped(a);
    std::vector<double> powed(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) powed[i] = std::pow(d.eigenvalues[i], q);
    return detail::congruence_diag(d.eigenvectors, powed, a.dim());
}

/// Sum of lambda_i^q over the clamped spectrum, q in (0, 1].
inline double trace_power(const SymMatrix& a, double q) {
    detail::require_q_in_unit_interval(q);
    const SpectralDecomposition d = detail::eigh_psd_clamped(a);
    double s = 0.0;
    for (double lam : d.eigenvalues) s += std::pow(lam, q);
    return s;
}

}  // namespace ellw2
