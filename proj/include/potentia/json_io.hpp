#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "potentia/kernel.hpp"
#include "potentia/report.hpp"
#include "potentia/types.hpp"

namespace potentia {

using json = nlohmann::ordered_json;

inline json to_json(const DiscreteMeasure& mu) {
    json j;
    j["points"] = json::array();
    j["weights"] = json::array();
    for (std::size_t i = 0; i < mu.size(); ++i) {
        j["points"].push_back(mu.atoms().point(i));
        j["weights"].push_back(mu.weights()[static_cast<Eigen::Index>(i)]);
    }
    return j;
}

inline DiscreteMeasure measure_from_json(const json& j) {
    if (!j.contains("points") || !j.contains("weights"))
        throw validation_error("measure json: 'points' and 'weights' are required");
    std::vector<Point> pts = j.at("points").get<std::vector<Point>>();
    std::vector<double> w = j.at("weights").get<std::vector<double>>();
    return make_measure(pts, w);
}

inline json to_json(const Region& r) {
    json j;
    j["points"] = json::array();
    for (std::size_t i = 0; i < r.size(); ++i) j["points"].push_back(r.points().point(i));
    j["label"] = r.label();
    return j;
}

inline Region region_from_json(const json& j) {
    if (!j.contains("points"))
        throw validation_error("region json: 'points' is required");
    std::vector<Point> pts = j.at("points").get<std::vector<Point>>();
    return Region(pts, j.value("label", std::string{}));
}

inline json to_json(const KernelSpec& k) {
    return json{{"alpha", k.alpha}, {"dim", k.dim}, {"epsilon", k.epsilon}};
}

inline KernelSpec kernel_from_json(const json& j) {
    KernelSpec k;
    k.alpha = j.value("alpha", 2.0);
    k.dim = j.value("dim", 3);
    k.epsilon = j.value("epsilon", 0.0);
    k.validate();
    return k;
}

inline json to_json(const SweepResult& s) {
    json j;
    j["swept"] = to_json(s.swept);
    j["energy_distance"] = s.energy_distance;
    j["kkt_stationarity"] = s.kkt_stationarity;
    j["kkt_dual_feasibility"] = s.kkt_dual_feasibility;
    j["kkt_complementarity"] = s.kkt_complementarity;
    j["lambda"] = s.lambda;
    j["source_mass"] = s.source_mass;
    j["swept_mass"] = s.swept_mass;
    j["mass_cap_active"] = s.mass_cap_active;
    j["iterations"] = s.iterations;
    return j;
}

inline json to_json(const EquilibriumResult& e) {
    json j;
    j["gamma"] = to_json(e.gamma);
    j["capacity"] = e.capacity;
    j["mass"] = e.gamma.mass();
    j["min_potential_on_region"] = e.min_potential_on_region;
    j["max_potential_on_support"] = e.max_potential_on_support;
    return j;
}

inline json to_json(const TheoremReport& r) {
    json j;
    j["theorem_id"] = r.theorem_id;
    j["pass"] = r.pass;
    j["worst_residual"] = r.worst_residual;
    j["tolerance"] = r.tolerance;
    json details = json::array();
    for (const auto& [name, value] : r.details)
        details.push_back(json{{"name", name}, {"value", value}});
    j["details"] = details;
    return j;
}

/// One CSV row per report: theorem_id, pass, worst_residual, tolerance.
inline std::string report_csv_row(const TheoremReport& r) {
    char buf[128];
    std::snprintf(buf, sizeof buf, ",%d,%.17g,%.17g", r.pass ? 1 : 0, r.worst_residual,
                  r.tolerance);
    return r.theorem_id + buf;
}

}  // namespace potentia
