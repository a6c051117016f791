#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace potentia {

struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct convergence_error : std::runtime_error {
    convergence_error(const std::string& what, Eigen::VectorXd best, double residual,
                      int iterations)
        : std::runtime_error(what),
          best_iterate(std::move(best)),
          worst_residual(residual),
          iterations(iterations) {}

    Eigen::VectorXd best_iterate;
    double worst_residual = 0.0;
    int iterations = 0;
};

using Point = std::vector<double>;

inline bool point_equal(const Point& a, const Point& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return false;
    return true;
}

/// Immutable, identity-tagged set of points in R^n. The identity is used as a
/// cache key for Gram blocks, so two sets built from equal coordinates are
/// still distinct cache entries.
class PointSet {
public:
    PointSet() : PointSet(std::vector<Point>{}, 0) {}

    explicit PointSet(const std::vector<Point>& pts, int dim_hint = 0) {
        int dim = dim_hint;
        if (!pts.empty()) dim = static_cast<int>(pts.front().size());
        if (dim != 0 && dim < 3)
            throw validation_error("ambient dimension must be >= 3, got " + std::to_string(dim));
        auto m = std::make_shared<Eigen::MatrixXd>(pts.size(), dim);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (static_cast<int>(pts[i].size()) != dim)
                throw validation_error("point dimension mismatch at index " + std::to_string(i));
            for (int j = 0; j < dim; ++j) {
                if (!std::isfinite(pts[i][j]))
                    throw validation_error("non-finite coordinate at point " + std::to_string(i));
                (*m)(static_cast<Eigen::Index>(i), j) = pts[i][j];
            }
        }
        coords_ = std::move(m);
        id_ = next_id();
    }

    const Eigen::MatrixXd& coords() const { return *coords_; }
    std::size_t size() const { return static_cast<std::size_t>(coords_->rows()); }
    bool empty() const { return size() == 0; }
    int dim() const { return static_cast<int>(coords_->cols()); }
    std::uint64_t id() const { return id_; }

    Point point(std::size_t i) const {
        Point p(static_cast<std::size_t>(coords_->cols()));
        for (int j = 0; j < coords_->cols(); ++j) p[j] = (*coords_)(static_cast<Eigen::Index>(i), j);
        return p;
    }

    std::vector<Point> points() const {
        std::vector<Point> out;
        out.reserve(size());
        for (std::size_t i = 0; i < size(); ++i) out.push_back(point(i));
        return out;
    }

    // Exact (bitwise) coordinate match; -1 if absent.
    std::ptrdiff_t find(const Point& p) const {
        if (static_cast<int>(p.size()) != dim()) return -1;
        for (Eigen::Index i = 0; i < coords_->rows(); ++i) {
            bool same = true;
            for (Eigen::Index j = 0; j < coords_->cols(); ++j)
                if ((*coords_)(i, j) != p[static_cast<std::size_t>(j)]) { same = false; break; }
            if (same) return i;
        }
        return -1;
    }

    bool contains(const Point& p) const { return find(p) >= 0; }

private:
    static std::uint64_t next_id() {
        static std::atomic<std::uint64_t> counter{1};
        return counter.fetch_add(1, std::memory_order_relaxed);
    }

    std::shared_ptr<const Eigen::MatrixXd> coords_;
    std::uint64_t id_ = 0;
};

/// Finite atomic positive measure: pairwise-distinct atoms with weights >= 0.
/// Zero-weight atoms are kept; the support is the set of positive-weight atoms.
class DiscreteMeasure {
public:
    DiscreteMeasure() = default;
    DiscreteMeasure(PointSet atoms, Eigen::VectorXd weights)
        : atoms_(std::move(atoms)), weights_(std::move(weights)) {
        if (static_cast<std::size_t>(weights_.size()) != atoms_.size())
            throw validation_error("measure: points/weights length mismatch");
        for (Eigen::Index i = 0; i < weights_.size(); ++i) {
            if (!std::isfinite(weights_[i]))
                throw validation_error("measure: non-finite weight");
            if (weights_[i] < 0.0)
                throw validation_error("measure: negative weight at atom " + std::to_string(i));
        }
    }

    const PointSet& atoms() const { return atoms_; }
    const Eigen::VectorXd& weights() const { return weights_; }
    std::size_t size() const { return atoms_.size(); }
    int dim() const { return atoms_.dim(); }
    double mass() const { return weights_.size() == 0 ? 0.0 : weights_.sum(); }
    bool is_zero() const { return mass() == 0.0; }

    std::vector<std::size_t> support_indices() const {
        std::vector<std::size_t> idx;
        for (Eigen::Index i = 0; i < weights_.size(); ++i)
            if (weights_[i] > 0.0) idx.push_back(static_cast<std::size_t>(i));
        return idx;
    }

private:
    PointSet atoms_;
    Eigen::VectorXd weights_;
};

/// Duplicate atoms are merged by summing weights; order of first occurrence wins.
inline DiscreteMeasure make_measure(const std::vector<Point>& points,
                                    const std::vector<double>& weights) {
    if (points.size() != weights.size())
        throw validation_error("make_measure: points/weights length mismatch");
    std::vector<Point> merged_pts;
    std::vector<double> merged_w;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!std::isfinite(weights[i]) || weights[i] < 0.0)
            throw validation_error("make_measure: weight must be finite and >= 0");
        bool merged = false;
        for (std::size_t j = 0; j < merged_pts.size(); ++j) {
            if (point_equal(merged_pts[j], points[i])) {
                merged_w[j] += weights[i];
                merged = true;
                break;
            }
        }
        if (!merged) {
            merged_pts.push_back(points[i]);
            merged_w.push_back(weights[i]);
        }
    }
    PointSet atoms(merged_pts);
    Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(merged_w.data(),
                                                          static_cast<Eigen::Index>(merged_w.size()));
    return DiscreteMeasure(std::move(atoms), std::move(w));
}

/// Finite point cloud onto which measures are swept.
class Region {
public:
    Region() = default;
    Region(PointSet points, std::string label)
        : points_(std::move(points)), label_(std::move(label)) {
        check_distinct();
    }
    Region(const std::vector<Point>& points, std::string label)
        : points_(points), label_(std::move(label)) {
        check_distinct();
    }

    const PointSet& points() const { return points_; }
    const std::string& label() const { return label_; }
    std::size_t size() const { return points_.size(); }
    bool empty() const { return points_.empty(); }
    int dim() const { return points_.dim(); }

private:
    void check_distinct() const {
        for (std::size_t i = 0; i < points_.size(); ++i) {
            Point pi = points_.point(i);
            for (std::size_t j = i + 1; j < points_.size(); ++j)
                if (point_equal(pi, points_.point(j)))
                    throw validation_error("region '" + label_ + "': duplicate point at indices " +
                                           std::to_string(i) + "," + std::to_string(j));
        }
    }

    PointSet points_;
    std::string label_;
};

inline bool region_subset(const Region& b, const Region& q) {
    if (!b.empty() && !q.empty() && b.dim() != q.dim())
        throw validation_error("region_subset: ambient dimension mismatch");
    for (std::size_t i = 0; i < b.size(); ++i)
        if (!q.points().contains(b.points().point(i))) return false;
    return true;
}

/// Swept measure plus its numerical certificate.
struct SweepResult {
    DiscreteMeasure swept;
    double energy_distance = 0.0;
    double kkt_stationarity = 0.0;
    double kkt_dual_feasibility = 0.0;
    double kkt_complementarity = 0.0;
    double lambda = 0.0;
    double source_mass = 0.0;
    double swept_mass = 0.0;
    bool mass_cap_active = false;
    int iterations = 0;
};

struct EquilibriumResult {
    DiscreteMeasure gamma;
    double capacity = 0.0;
    double min_potential_on_region = 0.0;
    double max_potential_on_support = 0.0;
};

}  // namespace potentia
