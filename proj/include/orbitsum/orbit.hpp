#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "orbitsum/map_spec.hpp"
#include "orbitsum/metric.hpp"
#include "orbitsum/point.hpp"

namespace orbitsum {

struct RunOptions {
    std::size_t max_iters = 100000;
    double residual_tol = 1e-10;
    double displacement_budget = 1e6;
    /// Iterates with index <= thin_after are all kept; past it only every
    /// thin_stride-th one (and always the last). Gaps are never thinned.
    std::size_t thin_after = 10000;
    std::size_t thin_stride = 1;

    /// Throws ConfigError when a field is out of range.
    void validate() const;
};

enum class TerminationReason {
    residual_below_tol,
    max_iterations,
    displacement_budget_exceeded,
    gap_exactly_zero,
    numeric_overflow,
};

std::string_view to_string(TerminationReason reason);

/// Forward orbit x_0, x_1, ... with its gap series at full resolution.
struct OrbitTrace {
    /// Retained iterates and their orbit indices (both ascending).
    std::vector<Point> iterates;
    std::vector<std::size_t> iterate_index;

    /// gaps[n] = d(x_n, x_{n+1})
    std::vector<double> gaps;
    /// partial_sums[N] = gaps[0] + ... + gaps[N]
    std::vector<double> partial_sums;
    /// ratios[n] = gaps[n+1] / gaps[n]; empty when gaps[n] == 0.
    std::vector<std::optional<double>> ratios;
    /// residuals[n] = distance from x_n to its image under the operator whose
    /// fixed points are sought. Equal to gaps[n] for an autonomous orbit.
    std::vector<double> residuals;

    TerminationReason reason = TerminationReason::max_iterations;
    /// Set with reason numeric_overflow.
    std::string failure;

    std::size_t steps() const noexcept { return gaps.size(); }
    double total_displacement() const noexcept {
        return partial_sums.empty() ? 0.0 : partial_sums.back();
    }
    const Point& first() const { return iterates.front(); }
    /// x_N, always retained.
    const Point& last() const { return iterates.back(); }
    /// The retained iterate with orbit index n, if kept.
    const Point* iterate_at(std::size_t n) const;
};

/// One step of a (possibly non-autonomous) orbit driver.
struct OrbitStep {
    Point next;
    /// d(x_n, Op(x_n)) for the operator whose fixed points are sought.
    double residual;
};

/// Produces x_{n+1} from (n, x_n). May throw NumericError on overflow.
using Stepper = std::function<OrbitStep(std::size_t n, const Point& x)>;

/// Drives x_{n+1} = step(n, x_n). Stops at the first of: gap and residual both
/// exactly zero, residual <= residual_tol, partial sum > displacement_budget,
/// max_iters steps. A NumericError inside step ends the run with
/// reason numeric_overflow; the trace up to that point is returned.
OrbitTrace run_orbit(const Stepper& step, const MetricSpec& metric, const Point& x0,
                     const RunOptions& opts);

/// Autonomous orbit x_{n+1} = f(x_n).
OrbitTrace run_orbit(const MapSpec& map, const MetricSpec& metric, const Point& x0,
                     const RunOptions& opts);

/// d(f^n(x), f^{n+1}(x)).
double orbit_gap(const MapSpec& map, const MetricSpec& metric, const Point& x, std::size_t n);

/// Sum of gaps[n .. m-1]; an upper bound on d(x_n, x_m). Requires
/// n < m <= trace.steps().
double cauchy_bound(const OrbitTrace& trace, std::size_t n, std::size_t m);

/// d(p, f(p)).
double fixed_point_residual(const MapSpec& map, const MetricSpec& metric, const Point& p);

enum class Verdict { converged, divergent, inconclusive };

std::string_view to_string(Verdict v);
/// Accepts CONVERGED / DIVERGENT / INCONCLUSIVE (case-insensitive).
Verdict verdict_from_string(std::string_view s);

struct CertifyPolicy {
    std::size_t ratio_window = 8;
    double ratio_ceiling = 0.999;
    double residual_tol = 1e-10;

    void validate() const;
};

struct SummabilityCertificate {
    Verdict verdict = Verdict::inconclusive;
    double total_displacement = 0.0;
    std::optional<double> tail_bound;
    std::optional<double> ratio_estimate;
    std::optional<Point> limit_estimate;
    std::optional<double> residual;
    std::string evidence;
};

/// Residual of a candidate fixed point: 0 exactly at a fixed point.
using ResidualFn = std::function<double(const Point&)>;

/// Decides summability from a finished trace. Rules, in order:
///  CONVERGED    terminated on residual/zero gap and residual(x_N) <= tol;
///  DIVERGENT    budget exceeded with gaps >= tol and no decay over the window;
///  INCONCLUSIVE otherwise.
SummabilityCertificate certify(const OrbitTrace& trace, const ResidualFn& residual,
                               const CertifyPolicy& policy);

/// certify() with residual(p) = d(p, f(p)).
SummabilityCertificate certify(const OrbitTrace& trace, const MapSpec& map,
                               const MetricSpec& metric, const CertifyPolicy& policy);

/// Largest defined ratio among the last `window` ratio slots.
std::optional<double> windowed_max_ratio(const OrbitTrace& trace, std::size_t window);

/// gap * r / (1 - r); 0 when gap is 0, empty when r >= 1.
std::optional<double> geometric_tail(double last_gap, double ratio);

}  // namespace orbitsum
