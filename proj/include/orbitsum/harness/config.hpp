#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "orbitsum/caristi.hpp"
#include "orbitsum/convex_set.hpp"
#include "orbitsum/map_spec.hpp"
#include "orbitsum/metric.hpp"
#include "orbitsum/orbit.hpp"
#include "orbitsum/prox.hpp"
#include "orbitsum/relaxation.hpp"

namespace orbitsum::harness {

using json = nlohmann::json;

namespace scheme {
/// Plain orbit of a map.
struct Iterate {
    MapSpec map;
};
struct Contraction {
    MapSpec map;
};
struct KrasnoselskiiMann {
    MapSpec op;
    RelaxationSchedule schedule;
};
struct AlternatingProjections {
    ConvexSet a;
    ConvexSet b;
};
struct ProximalPoint {
    ProxSpec prox;
    double lambda;
};
struct ForwardBackward {
    QuadraticSmooth smooth;
    ProxSpec g;
    double step;
};
struct DouglasRachford {
    ProxSpec a;
    ProxSpec b;
    double lambda;
};
}  // namespace scheme

using Algorithm = std::variant<scheme::Iterate, scheme::Contraction, scheme::KrasnoselskiiMann,
                               scheme::AlternatingProjections, scheme::ProximalPoint,
                               scheme::ForwardBackward, scheme::DouglasRachford>;

std::string_view scheme_name(const Algorithm& algo);

struct PotentialConfig {
    PotentialSpec spec;
    std::size_t steps = 50;
    double tol = 1e-12;
};

/// Regression baseline. Each value carries its own tolerance.
struct Expected {
    std::optional<Verdict> verdict;
    std::optional<Point> fixed_point;
    double fixed_point_tol = 0.0;
    std::optional<double> total_displacement;
    double total_displacement_tol = 0.0;
    std::optional<double> ratio;
    double ratio_tol = 0.0;
    std::optional<bool> caristi_holds;
    std::optional<Point> shadow_point;
    double shadow_point_tol = 0.0;

    bool empty() const noexcept {
        return !verdict && !fixed_point && !total_displacement && !ratio && !caristi_holds && !shadow_point;
    }
};

struct ProblemConfig {
    std::string name;
    std::size_t dimension = 1;
    MetricSpec metric;
    Algorithm algorithm;
    Point x0;
    std::optional<PotentialConfig> potential;
    RunOptions run;
    CertifyPolicy policy;
    Expected expected;
    /// The document the config was parsed from.
    json source;
};

/// Parses and validates one problem. Throws ConfigError naming the offending
/// field (and line/column for syntax errors).
ProblemConfig load_problem_text(std::string_view text);
ProblemConfig load_problem_json(const json& doc);
ProblemConfig load_problem(const std::filesystem::path& path);

/// A batch file is {"batch": ["a.json", ...]}; paths resolve relative to it.
bool is_batch(const json& doc);
std::vector<std::filesystem::path> load_batch(const std::filesystem::path& path);

/// The autonomous step map of the problem, when it has one.
std::optional<MapSpec> step_map(const ProblemConfig& cfg);

/// Residual whose zeros are the fixed points the problem is after: d(p, f(p))
/// for autonomous schemes, d(p, T p) for KM, and max(d(p, P_A p), d(p, P_B p))
/// for alternating projections.
ResidualFn fixed_point_residual_fn(const ProblemConfig& cfg);

}  // namespace orbitsum::harness
