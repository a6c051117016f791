#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "potentia/kernel.hpp"
#include "potentia/types.hpp"

namespace potentia {

enum class MassConstraint { none, at_most, exactly };

struct NnlsOptions {
    double tolerance = 1e-9;  // on KKT residuals, relative to 1 + ||b||_inf
    int max_iterations = 0;   // 0 -> 10 * n
};

struct NnlsSolution {
    Eigen::VectorXd w;
    double lambda = 0.0;   // multiplier of the mass constraint; 0 when absent or slack
    bool cap_active = false;
    int iterations = 0;
    int active_size = 0;
};

namespace detail {

// Cholesky factor of K restricted to an active set, maintained in insertion
// order. Appending a coordinate is an O(p^2) update; removals refactor.
class ActiveSetCholesky {
public:
    explicit ActiveSetCholesky(const Eigen::MatrixXd& K)
        : K_(K), L_(K.rows(), K.rows()) {}

    const std::vector<Eigen::Index>& active() const { return P_; }
    Eigen::Index size() const { return static_cast<Eigen::Index>(P_.size()); }
    bool contains(Eigen::Index i) const {
        return std::find(P_.begin(), P_.end(), i) != P_.end();
    }

    void append(Eigen::Index i) {
        const Eigen::Index p = size();
        Eigen::VectorXd col(p);
        for (Eigen::Index r = 0; r < p; ++r) col[r] = K_(P_[static_cast<std::size_t>(r)], i);
        Eigen::VectorXd l = L_.topLeftCorner(p, p).triangularView<Eigen::Lower>().solve(col);
        double d = K_(i, i) - l.squaredNorm();
        if (!(d > 0.0) || !std::isfinite(d))
            throw numeric_error("active-set solve: loss of positive definiteness (pivot " +
                                std::to_string(d) + ")");
        L_.row(p).head(p) = l.transpose();
        L_(p, p) = std::sqrt(d);
        P_.push_back(i);
    }

    // Drop the given positions within the active set and refactor.
    void remove_positions(const std::vector<Eigen::Index>& positions) {
        std::vector<Eigen::Index> keep;
        keep.reserve(P_.size());
        for (Eigen::Index r = 0; r < size(); ++r)
            if (std::find(positions.begin(), positions.end(), r) == positions.end())
                keep.push_back(P_[static_cast<std::size_t>(r)]);
        P_.clear();
        for (Eigen::Index i : keep) append(i);
    }

    Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const {
        const Eigen::Index p = size();
        auto Lv = L_.topLeftCorner(p, p);
        Eigen::VectorXd y = Lv.triangularView<Eigen::Lower>().solve(rhs);
        return Lv.transpose().triangularView<Eigen::Upper>().solve(y);
    }

private:
    const Eigen::MatrixXd& K_;
    Eigen::MatrixXd L_;
    std::vector<Eigen::Index> P_;
};

}  // namespace detail

/// Active-set solver for  min 1/2 w'Kw - b'w  s.t.  w >= 0  and optionally
/// sum(w) <= m or sum(w) = m.  K must be symmetric positive definite.
/// Ties in the dual screening break to the lowest index.
inline NnlsSolution solve_nnls_core(const Eigen::MatrixXd& K, const Eigen::VectorXd& b,
                                    MassConstraint constraint, double mass,
                                    const NnlsOptions& opts = {}) {
    const Eigen::Index n = K.rows();
    if (K.cols() != n || b.size() != n)
        throw validation_error("solve_nnls_core: shape mismatch");
    if (constraint != MassConstraint::none && !(mass >= 0.0))
        throw validation_error("solve_nnls_core: mass bound must be >= 0");

    NnlsSolution sol;
    sol.w = Eigen::VectorXd::Zero(n);
    if (n == 0) return sol;

    const double scale = 1.0 + (b.size() ? b.cwiseAbs().maxCoeff() : 0.0);
    const double tol = opts.tolerance * scale;
    const int max_iter = opts.max_iterations > 0 ? opts.max_iterations
                                                 : std::max<int>(50, 10 * static_cast<int>(n));

    // "at most" reduces to the unconstrained solve when the cap is slack.
    if (constraint == MassConstraint::at_most) {
        NnlsSolution free = solve_nnls_core(K, b, MassConstraint::none, 0.0, opts);
        if (free.w.sum() <= mass * (1.0 + 1e-14) + 1e-300) return free;
        NnlsSolution capped = solve_nnls_core(K, b, MassConstraint::exactly, mass, opts);
        capped.iterations += free.iterations;
        capped.cap_active = true;
        if (capped.lambda < 0.0) capped.lambda = 0.0;  // roundoff at the boundary
        return capped;
    }

    const bool pinned = (constraint == MassConstraint::exactly);
    if (pinned && mass == 0.0) {
        sol.lambda = std::max(0.0, b.maxCoeff());
        sol.cap_active = true;
        return sol;
    }

    detail::ActiveSetCholesky chol(K);
    std::vector<char> active(static_cast<std::size_t>(n), 0);
    double lambda = 0.0;
    int iter = 0;

    if (pinned) {
        // Feasible single-atom start: the best objective among w = m * e_j.
        Eigen::Index best = 0;
        double best_obj = std::numeric_limits<double>::infinity();
        for (Eigen::Index j = 0; j < n; ++j) {
            double obj = 0.5 * K(j, j) * mass * mass - b[j] * mass;
            if (obj < best_obj) { best_obj = obj; best = j; }
        }
        chol.append(best);
        active[static_cast<std::size_t>(best)] = 1;
        sol.w[best] = mass;
        lambda = b[best] - mass * K(best, best);
    }

    Eigen::VectorXd ones;
    auto restricted_solve = [&](double& lam_out) -> Eigen::VectorXd {
        const Eigen::Index p = chol.size();
        Eigen::VectorXd bp(p);
        for (Eigen::Index r = 0; r < p; ++r) bp[r] = b[chol.active()[static_cast<std::size_t>(r)]];
        if (!pinned) {
            lam_out = 0.0;
            return chol.solve(bp);
        }
        Eigen::VectorXd y1 = chol.solve(bp);
        Eigen::VectorXd y2 = chol.solve(Eigen::VectorXd::Ones(p));
        lam_out = (y1.sum() - mass) / y2.sum();
        return y1 - lam_out * y2;
    };

    while (true) {
        // Dual screening over inactive coordinates.
        Eigen::VectorXd g = K.selfadjointView<Eigen::Lower>() * sol.w - b;
        Eigen::Index enter = -1;
        double worst = -tol;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (active[static_cast<std::size_t>(i)]) continue;
            double dual = g[i] + lambda;
            if (dual < worst) { worst = dual; enter = i; }
        }
        if (enter < 0) break;
        if (++iter > max_iter)
            throw convergence_error("solve_nnls_core: iteration budget exhausted", sol.w,
                                    -worst, iter);
        chol.append(enter);
        active[static_cast<std::size_t>(enter)] = 1;

        // Restore primal feasibility on the active set.
        while (true) {
            double lam_new = 0.0;
            Eigen::VectorXd z = restricted_solve(lam_new);
            const Eigen::Index p = chol.size();
            bool interior = true;
            for (Eigen::Index r = 0; r < p; ++r)
                if (!(z[r] > 0.0)) { interior = false; break; }
            if (interior) {
                for (Eigen::Index r = 0; r < p; ++r)
                    sol.w[chol.active()[static_cast<std::size_t>(r)]] = z[r];
                lambda = lam_new;
                break;
            }
            double alpha = 1.0;
            for (Eigen::Index r = 0; r < p; ++r) {
                if (z[r] <= 0.0) {
                    double wr = sol.w[chol.active()[static_cast<std::size_t>(r)]];
                    double denom = wr - z[r];
                    double step = denom > 0.0 ? wr / denom : 0.0;
                    alpha = std::min(alpha, step);
                }
            }
            std::vector<Eigen::Index> drop;
            for (Eigen::Index r = 0; r < p; ++r) {
                Eigen::Index i = chol.active()[static_cast<std::size_t>(r)];
                double wnew = sol.w[i] + alpha * (z[r] - sol.w[i]);
                if (z[r] <= 0.0 && wnew <= 1e-14 * std::abs(z[r] - sol.w[i]) + 0.0) wnew = 0.0;
                sol.w[i] = std::max(0.0, wnew);
                if (sol.w[i] == 0.0) drop.push_back(r);
            }
            if (drop.empty())
                throw convergence_error("solve_nnls_core: stalled ratio step", sol.w, alpha, iter);
            chol.remove_positions(drop);
            std::fill(active.begin(), active.end(), 0);
            for (Eigen::Index i : chol.active()) active[static_cast<std::size_t>(i)] = 1;
            if (++iter > max_iter)
                throw convergence_error("solve_nnls_core: iteration budget exhausted", sol.w,
                                        alpha, iter);
        }
    }

    sol.lambda = pinned ? lambda : 0.0;
    sol.cap_active = pinned;
    sol.iterations = iter;
    sol.active_size = static_cast<int>(chol.size());
    return sol;
}

}  // namespace potentia
