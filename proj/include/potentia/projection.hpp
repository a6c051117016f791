#pragma once

#include <cmath>
#include <optional>

#include <Eigen/Dense>

#include "potentia/energy.hpp"
#include "potentia/nnls.hpp"
#include "potentia/types.hpp"

namespace potentia {

struct ProjectionProblem {
    DiscreteMeasure source;
    Region region;
    std::optional<double> mass_cap;  // absolute bound on the swept total mass
    double tolerance = 1e-9;
    int max_iterations = 0;  // 0 -> solver default
};

struct KktCertificate {
    double stationarity = 0.0;       // max over active coords of |(Kw-b)_i + lambda|
    double dual_feasibility = 0.0;   // max over all coords of (-(Kw-b)_i - lambda)_+
    double complementarity = 0.0;    // |w'(Kw-b) + lambda * sum(w)|
    double lambda = 0.0;
    double b_scale = 1.0;            // 1 + ||b||_inf, the residual normalizer
    int iterations = 0;
    bool cap_active = false;
};

struct ProjectionOutput {
    Eigen::VectorXd weights;  // one per region point
    KktCertificate certificate;
};

inline KktCertificate make_certificate(const Eigen::MatrixXd& K, const Eigen::VectorXd& b,
                                       const NnlsSolution& sol) {
    KktCertificate cert;
    cert.lambda = sol.lambda;
    cert.iterations = sol.iterations;
    cert.cap_active = sol.cap_active;
    cert.b_scale = 1.0 + (b.size() ? b.cwiseAbs().maxCoeff() : 0.0);
    if (b.size() == 0) return cert;
    Eigen::VectorXd g = K.selfadjointView<Eigen::Lower>() * sol.w - b;
    for (Eigen::Index i = 0; i < b.size(); ++i) {
        double dual = g[i] + sol.lambda;
        if (sol.w[i] > 0.0) cert.stationarity = std::max(cert.stationarity, std::abs(dual));
        cert.dual_feasibility = std::max(cert.dual_feasibility, -dual);
    }
    cert.dual_feasibility = std::max(0.0, cert.dual_feasibility);
    cert.complementarity = std::abs(sol.w.dot(g) + sol.lambda * sol.w.sum());
    return cert;
}

/// Orthogonal projection of the source measure, in the energy norm of ctx,
/// onto the cone of positive measures on the region (optionally intersected
/// with a total-mass cap). Minimizes 1/2 w'Kw - b'w with b the source
/// potential at the region points.
inline ProjectionOutput project(const EnergyContext& ctx, const ProjectionProblem& p) {
    if (p.mass_cap && *p.mass_cap < 0.0)
        throw validation_error("project: mass_cap must be >= 0");
    if (!(p.tolerance > 0.0))
        throw validation_error("project: tolerance must be > 0");

    ProjectionOutput out;
    const Eigen::Index n = static_cast<Eigen::Index>(p.region.size());
    out.weights = Eigen::VectorXd::Zero(n);
    if (n == 0) return out;  // sweeping onto the empty region gives the zero measure

    if (p.source.is_zero() && !(p.mass_cap && *p.mass_cap == 0.0)) return out;

    auto Kp = ctx.gram(p.region.points(), p.region.points());
    Eigen::VectorXd b = ctx.potential(p.source, p.region.points());

    NnlsOptions opts;
    opts.tolerance = p.tolerance;
    opts.max_iterations = p.max_iterations;
    MassConstraint mode = p.mass_cap ? MassConstraint::at_most : MassConstraint::none;
    NnlsSolution sol = solve_nnls_core(*Kp, b, mode, p.mass_cap.value_or(0.0), opts);

    out.weights = sol.w;
    out.certificate = make_certificate(*Kp, b, sol);
    return out;
}

}  // namespace potentia
