#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

#include <Eigen/Dense>

#include "potentia/kernel.hpp"
#include "potentia/types.hpp"

namespace potentia {

/// The discrete pre-Hilbert space of measures under one kernel: potentials,
/// mutual energies, and norms, with Gram blocks cached per point-set identity.
class EnergyContext {
public:
    explicit EnergyContext(KernelSpec kernel) : kernel_(kernel) { kernel_.validate(); }

    const KernelSpec& kernel() const { return kernel_; }

    // Cached kernel block kernel(rows[i], cols[j]). Two workers racing on the
    // same key compute bitwise-equal blocks, so last-write-wins is safe.
    std::shared_ptr<const Eigen::MatrixXd> gram(const PointSet& rows, const PointSet& cols) const {
        const auto key = std::make_pair(rows.id(), cols.id());
        {
            std::lock_guard<std::mutex> lock(mutex_);
            auto it = cache_.find(key);
            if (it != cache_.end()) return it->second;
        }
        auto block = std::make_shared<Eigen::MatrixXd>(assemble_gram(kernel_, rows, cols));
        std::lock_guard<std::mutex> lock(mutex_);
        cache_[key] = block;
        return block;
    }

    Eigen::VectorXd potential(const DiscreteMeasure& mu, const PointSet& probes) const {
        if (mu.size() == 0 || probes.empty())
            return Eigen::VectorXd::Zero(static_cast<Eigen::Index>(probes.size()));
        auto block = gram(probes, mu.atoms());
        return (*block) * mu.weights();
    }

    double potential_at(const DiscreteMeasure& mu, const Point& x) const {
        double out = 0.0;
        for (std::size_t i = 0; i < mu.size(); ++i)
            out += mu.weights()[static_cast<Eigen::Index>(i)] *
                   eval_kernel(kernel_, x, mu.atoms().point(i));
        return out;
    }

    double mutual_energy(const DiscreteMeasure& mu, const DiscreteMeasure& nu) const {
        if (mu.size() == 0 || nu.size() == 0) return 0.0;
        auto block = gram(mu.atoms(), nu.atoms());
        double e = mu.weights().dot((*block) * nu.weights());
        if (!std::isfinite(e))
            throw numeric_error("mutual_energy: infinite energy; epsilon > 0 required when supports meet");
        return e;
    }

    double norm_squared(const DiscreteMeasure& mu) const { return mutual_energy(mu, mu); }

    // ||mu - nu||^2. Measures sharing one support evaluate the quadratic form
    // on the weight difference directly, which avoids the cancellation the
    // bilinear expansion suffers when the two measures nearly coincide.
    double distance_squared(const DiscreteMeasure& mu, const DiscreteMeasure& nu) const {
        if (mu.size() > 0 && mu.atoms().id() == nu.atoms().id()) {
            auto block = gram(mu.atoms(), nu.atoms());
            Eigen::VectorXd d = mu.weights() - nu.weights();
            return std::max(0.0, d.dot((*block) * d));
        }
        double mm = norm_squared(mu);
        double nn = norm_squared(nu);
        double mn = mutual_energy(mu, nu);
        double rad = mm - 2.0 * mn + nn;
        if (rad < 0.0) {
            double guard = -1e-12 * std::max(mm, nn);
            if (rad < guard)
                throw numeric_error("energy_distance: negative radicand beyond floating-point guard");
            rad = 0.0;
        }
        return rad;
    }

    double energy_distance(const DiscreteMeasure& mu, const DiscreteMeasure& nu) const {
        return std::sqrt(distance_squared(mu, nu));
    }

private:
    KernelSpec kernel_;
    mutable std::mutex mutex_;
    mutable std::map<std::pair<std::uint64_t, std::uint64_t>,
                     std::shared_ptr<const Eigen::MatrixXd>> cache_;
};

}  // namespace potentia
