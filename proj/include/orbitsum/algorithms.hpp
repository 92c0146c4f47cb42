#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "orbitsum/convex_set.hpp"
#include "orbitsum/map_spec.hpp"
#include "orbitsum/metric.hpp"
#include "orbitsum/orbit.hpp"
#include "orbitsum/prox.hpp"
#include "orbitsum/relaxation.hpp"
#include "orbitsum/splitting.hpp"

namespace orbitsum {

struct ContractionResult {
    OrbitTrace trace;
    SummabilityCertificate certificate;
    Point fixed_point;
    double modulus = 0.0;
    /// d(x_0, f(x_0))
    double initial_gap = 0.0;
    /// max over retained n of d(x_n, p) - apriori_bound(n); <= 0 when the
    /// bound dominates.
    double max_bound_excess = 0.0;

    /// c^n / (1 - c) * d(x_0, f(x_0))
    double apriori_bound(std::size_t n) const;
};

/// Iterates a map declared strong-contraction(c). Throws ConfigError without
/// such a declaration and MisdeclaredContraction when some step has
/// gap_{n+1} > (c + 1e-9) gap_n + 1e-12 (1 + |x_{n+1}|).
ContractionResult contraction_solve(const MapSpec& map, const MetricSpec& metric, const Point& x0,
                                    const RunOptions& opts, const CertifyPolicy& policy);

/// x + alpha (T(x) - x). Throws ConfigError unless 0 < alpha < 1.
Point km_step(const MapSpec& op, const Point& x, double alpha);

struct KmResult {
    OrbitTrace trace;
    SummabilityCertificate certificate;
    /// sum_n alpha_n ||T(x_n) - x_n||
    double km_functional = 0.0;
    /// max_n |gap_n - alpha_n ||T x_n - x_n|| | / (1 + ||x_n||)
    double max_identity_defect = 0.0;
};

/// Non-autonomous KM orbit; the certificate's residual is taken against T.
/// Requires a Hilbert metric. Throws ConfigError when an explicit schedule runs
/// out before termination and NumericError when the gap identity breaks by
/// more than 1e-12 (1 + ||x_n||).
KmResult km_run(const MapSpec& op, const Point& x0, const RelaxationSchedule& schedule,
                const MetricSpec& metric, const RunOptions& opts, const CertifyPolicy& policy);

struct PointPair {
    Point x;
    Point y;
};

struct NonexpansiveViolation {
    std::size_t pair_index;
    double ratio;  ///< ||T x - T y|| / ||x - y||
};

struct NonexpansiveReport {
    std::size_t pairs_checked = 0;
    double max_ratio = 0.0;
    std::vector<NonexpansiveViolation> violations;

    bool ok() const noexcept { return violations.empty(); }
};

/// Flags pairs with ||T x - T y|| > ||x - y|| + tol (Euclidean norm).
NonexpansiveReport nonexpansiveness_check(const MapSpec& op, const std::vector<PointPair>& samples,
                                          double tol);

struct AlternatingProjectionsResult {
    OrbitTrace trace;
    SummabilityCertificate certificate;
};

/// Orbit x_{2k+1} = P_A(x_{2k}), x_{2k+2} = P_B(x_{2k+1}); one gap per
/// projection. The fixed-point residual of p is max(d(p, P_A p), d(p, P_B p)).
AlternatingProjectionsResult alternating_projections_run(const ConvexSet& a, const ConvexSet& b,
                                                         const Point& x0, const MetricSpec& metric,
                                                         const RunOptions& opts,
                                                         const CertifyPolicy& policy);

struct DouglasRachfordResult {
    OrbitTrace trace;
    SummabilityCertificate certificate;
    /// prox_A of the limit estimate when converged.
    std::optional<Point> shadow;
};

DouglasRachfordResult douglas_rachford_run(const ProxSpec& a, const ProxSpec& b, double lambda,
                                           const Point& x0, const MetricSpec& metric,
                                           const RunOptions& opts, const CertifyPolicy& policy);

}  // namespace orbitsum
