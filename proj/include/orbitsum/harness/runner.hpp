#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "orbitsum/caristi.hpp"
#include "orbitsum/harness/config.hpp"
#include "orbitsum/orbit.hpp"

namespace orbitsum::harness {

struct RunReport {
    std::string name;
    std::string scheme;
    nlohmann::json config;

    OrbitTrace trace;
    SummabilityCertificate certificate;
    std::optional<CaristiReport> caristi;

    std::optional<double> km_functional;
    std::optional<double> km_identity_defect;
    std::optional<Point> shadow;
    /// contraction scheme: max_n d(x_n, p) - c^n/(1-c) gap_0
    std::optional<double> apriori_excess;

    std::vector<std::string> warnings;
    double wall_seconds = 0.0;

    bool has_expectations = false;
    /// One line per expectation that failed its tolerance.
    std::vector<std::string> mismatches;

    bool passed() const noexcept { return mismatches.empty(); }
};

/// Deterministic given the config (wall time aside). Errors from the inner
/// modules are rethrown with the problem name prefixed.
RunReport run_problem(const ProblemConfig& cfg);

/// Same problem started from another point; expectations are not checked.
RunReport run_problem_from(const ProblemConfig& cfg, const Point& x0);

/// Compares the report against cfg.expected and fills mismatches.
void check_expectations(const ProblemConfig& cfg, RunReport& report);

nlohmann::json report_to_json(const RunReport& report);
std::string report_to_text(const RunReport& report);

}  // namespace orbitsum::harness
