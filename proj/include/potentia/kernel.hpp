#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "potentia/types.hpp"

namespace potentia {

/// Riesz kernel family (|x-y|^2 + eps^2)^((alpha-n)/2); alpha = 2 is Newtonian.
struct KernelSpec {
    double alpha = 2.0;
    int dim = 3;
    double epsilon = 0.0;

    void validate() const {
        if (!(alpha > 0.0 && alpha <= 2.0))
            throw validation_error("kernel: alpha must lie in (0, 2], got " + std::to_string(alpha));
        if (dim < 3)
            throw validation_error("kernel: dim must be >= 3, got " + std::to_string(dim));
        if (!(epsilon >= 0.0))
            throw validation_error("kernel: epsilon must be >= 0");
    }
};

inline double eval_kernel(const KernelSpec& k, const Point& x, const Point& y) {
    if (static_cast<int>(x.size()) != k.dim || static_cast<int>(y.size()) != k.dim)
        throw validation_error("eval_kernel: point dimension mismatch");
    double r2 = 0.0;
    for (int j = 0; j < k.dim; ++j) {
        double d = x[static_cast<std::size_t>(j)] - y[static_cast<std::size_t>(j)];
        r2 += d * d;
    }
    double base = r2 + k.epsilon * k.epsilon;
    if (base == 0.0) return std::numeric_limits<double>::infinity();
    return std::pow(base, 0.5 * (k.alpha - k.dim));
}

namespace detail {
inline double kernel_from_r2(const KernelSpec& k, double r2) {
    double base = r2 + k.epsilon * k.epsilon;
    if (base == 0.0) return std::numeric_limits<double>::infinity();
    return std::pow(base, 0.5 * (k.alpha - k.dim));
}
}  // namespace detail

/// M[i][j] = kernel(rows[i], cols[j]). When rows and cols are the same set the
/// upper triangle is computed and mirrored, so M is bitwise symmetric.
inline Eigen::MatrixXd assemble_gram(const KernelSpec& k, const PointSet& rows,
                                     const PointSet& cols) {
    k.validate();
    if ((!rows.empty() && rows.dim() != k.dim) || (!cols.empty() && cols.dim() != k.dim))
        throw validation_error("assemble_gram: point set dimension mismatch");
    const Eigen::MatrixXd& R = rows.coords();
    const Eigen::MatrixXd& C = cols.coords();
    Eigen::MatrixXd M(R.rows(), C.rows());
    const bool same = rows.id() == cols.id();
    for (Eigen::Index i = 0; i < R.rows(); ++i) {
        Eigen::Index j0 = same ? i : 0;
        for (Eigen::Index j = j0; j < C.rows(); ++j) {
            double r2 = (R.row(i) - C.row(j)).squaredNorm();
            double v = detail::kernel_from_r2(k, r2);
            if (!std::isfinite(v))
                throw numeric_error("assemble_gram: infinite entry at (" + std::to_string(i) + "," +
                                    std::to_string(j) + "); epsilon > 0 required when point sets overlap");
            M(i, j) = v;
            if (same) M(j, i) = v;
        }
    }
    return M;
}

/// Lower-triangular Cholesky factor of a kernel matrix, with the diagonal
/// jitter that was needed to make the factorization go through.
struct GramFactor {
    Eigen::MatrixXd lower;
    double jitter = 0.0;          // absolute shift added to the diagonal
    double smallest_pivot = 0.0;  // min diagonal entry of the factor

    Eigen::Index size() const { return lower.rows(); }

    Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const {
        Eigen::VectorXd y = lower.triangularView<Eigen::Lower>().solve(rhs);
        return lower.transpose().triangularView<Eigen::Upper>().solve(y);
    }
};

namespace detail {

// In-place lower Cholesky. Returns true on success; on failure reports the
// offending pivot value.
inline bool cholesky_lower(Eigen::MatrixXd& a, double& bad_pivot) {
    const Eigen::Index n = a.rows();
    for (Eigen::Index j = 0; j < n; ++j) {
        double d = a(j, j);
        if (j > 0) d -= a.row(j).head(j).squaredNorm();
        if (!(d > 0.0) || !std::isfinite(d)) {
            bad_pivot = d;
            return false;
        }
        double ljj = std::sqrt(d);
        a(j, j) = ljj;
        if (j + 1 < n) {
            auto tail = a.col(j).segment(j + 1, n - j - 1);
            if (j > 0)
                tail.noalias() -= a.block(j + 1, 0, n - j - 1, j) * a.row(j).head(j).transpose();
            tail /= ljj;
        }
    }
    a.triangularView<Eigen::StrictlyUpper>().setZero();
    return true;
}

}  // namespace detail

inline constexpr std::array<double, 4> kJitterLadder = {0.0, 1e-12, 1e-10, 1e-8};

inline GramFactor factor_gram(const Eigen::MatrixXd& gram) {
    if (gram.rows() != gram.cols())
        throw validation_error("factor_gram: matrix must be square");
    if (!gram.allFinite())
        throw numeric_error("factor_gram: matrix has non-finite entries");
    const Eigen::Index n = gram.rows();
    const double scale = n > 0 ? gram.trace() / static_cast<double>(n) : 0.0;
    double last_pivot = 0.0;
    for (double delta : kJitterLadder) {
        double shift = delta * scale;
        Eigen::MatrixXd a = gram;
        a.diagonal().array() += shift;
        double bad = 0.0;
        if (detail::cholesky_lower(a, bad)) {
            GramFactor f;
            f.lower = std::move(a);
            f.jitter = shift;
            f.smallest_pivot = n > 0 ? f.lower.diagonal().minCoeff() : 0.0;
            return f;
        }
        last_pivot = bad;
    }
    throw numeric_error("factor_gram: matrix not positive definite after jitter ladder; "
                        "smallest pivot " + std::to_string(last_pivot));
}

/// Smallest nearest-neighbor spacing of a point set (the grid scale h).
inline double min_spacing(const PointSet& pts) {
    const Eigen::MatrixXd& P = pts.coords();
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < P.rows(); ++i)
        for (Eigen::Index j = i + 1; j < P.rows(); ++j)
            best = std::min(best, (P.row(i) - P.row(j)).norm());
    return best;
}

}  // namespace potentia
