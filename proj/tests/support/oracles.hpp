#pragma once

// Brute-force reference solvers for small instances. These stay independent of
// the active-set implementation they are used to check: every candidate active
// set is enumerated and the feasible solution of minimal objective wins.

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace oracles {

inline double qp_objective(const Eigen::MatrixXd& K, const Eigen::VectorXd& b,
                           const Eigen::VectorXd& w) {
    return 0.5 * w.dot(K * w) - b.dot(w);
}

// argmin 1/2 w'Kw - b'w over {w >= 0} (optionally intersected with
// {sum w <= cap}) by exhaustive enumeration of support subsets. n <= ~16.
inline Eigen::VectorXd enumerate_projection(const Eigen::MatrixXd& K, const Eigen::VectorXd& b,
                                            std::optional<double> cap = std::nullopt) {
    const int n = static_cast<int>(K.rows());
    Eigen::VectorXd best = Eigen::VectorXd::Zero(n);
    double best_obj = 0.0;  // empty support
    if (cap && *cap < 0.0) throw std::invalid_argument("negative cap");

    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<int> idx;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) idx.push_back(i);
        const int m = static_cast<int>(idx.size());
        Eigen::MatrixXd Ks(m, m);
        Eigen::VectorXd bs(m);
        for (int r = 0; r < m; ++r) {
            bs[r] = b[idx[r]];
            for (int c = 0; c < m; ++c) Ks(r, c) = K(idx[r], idx[c]);
        }

        auto consider = [&](const Eigen::VectorXd& ws) {
            for (int r = 0; r < m; ++r)
                if (!(ws[r] >= 0.0)) return;
            if (cap && ws.sum() > *cap * (1.0 + 1e-12) + 1e-300) return;
            Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
            for (int r = 0; r < m; ++r) w[idx[r]] = ws[r];
            double obj = qp_objective(K, b, w);
            if (obj < best_obj) {
                best_obj = obj;
                best = w;
            }
        };

        // unconstrained stationary point on this support
        consider(Ks.ldlt().solve(bs));

        if (cap) {
            // cap-active stationary point: bordered KKT system
            Eigen::MatrixXd A(m + 1, m + 1);
            A.setZero();
            A.topLeftCorner(m, m) = Ks;
            A.topRightCorner(m, 1).setOnes();
            A.bottomLeftCorner(1, m).setOnes();
            Eigen::VectorXd rhs(m + 1);
            rhs.head(m) = bs;
            rhs[m] = *cap;
            Eigen::VectorXd sol = A.fullPivLu().solve(rhs);
            consider(sol.head(m));
        }
    }
    return best;
}

// argmin w'Kw over {w >= 0, Kw >= 1 on all coordinates}, by enumeration of the
// equality set. Returns the full-length weight vector.
inline Eigen::VectorXd enumerate_equilibrium(const Eigen::MatrixXd& K, double feas_tol = 1e-9) {
    const int n = static_cast<int>(K.rows());
    Eigen::VectorXd best = Eigen::VectorXd::Zero(n);
    double best_obj = std::numeric_limits<double>::infinity();
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<int> idx;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) idx.push_back(i);
        const int m = static_cast<int>(idx.size());
        Eigen::MatrixXd Ks(m, m);
        for (int r = 0; r < m; ++r)
            for (int c = 0; c < m; ++c) Ks(r, c) = K(idx[r], idx[c]);
        Eigen::VectorXd ws = Ks.ldlt().solve(Eigen::VectorXd::Ones(m));
        bool ok = true;
        for (int r = 0; r < m && ok; ++r) ok = ws[r] >= 0.0;
        if (!ok) continue;
        Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
        for (int r = 0; r < m; ++r) w[idx[r]] = ws[r];
        Eigen::VectorXd pot = K * w;
        for (int i = 0; i < n && ok; ++i) ok = pot[i] >= 1.0 - feas_tol;
        if (!ok) continue;
        double obj = w.dot(K * w);
        if (obj < best_obj) {
            best_obj = obj;
            best = w;
        }
    }
    return best;
}

}  // namespace oracles
