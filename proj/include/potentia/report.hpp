#pragma once

#include <string>
#include <utility>
#include <vector>

namespace potentia {

/// Outcome of one numerical theorem check. pass <=> worst_residual <= tolerance.
struct TheoremReport {
    std::string theorem_id;
    bool pass = false;
    double worst_residual = 0.0;
    double tolerance = 0.0;
    std::vector<std::pair<std::string, double>> details;

    void note(const std::string& name, double value) { details.emplace_back(name, value); }

    void record(const std::string& name, double residual) {
        details.emplace_back(name, residual);
        worst_residual = std::max(worst_residual, residual);
    }

    TheoremReport& finalize() {
        pass = worst_residual <= tolerance;
        return *this;
    }
};

}  // namespace potentia
