#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "orbitsum/map_spec.hpp"
#include "orbitsum/metric.hpp"
#include "orbitsum/point.hpp"

namespace orbitsum {

/// phi(x) = slope * x on R.
struct LinearScalarPotential {
    double slope = 1.0;
};

/// phi(x) = scale * d(x, target).
struct ScaledDistancePotential {
    Point target;
    double scale = 1.0;
    MetricSpec metric;
};

struct Truncation {
    std::size_t max_terms = 100000;
    /// Summation stops after the first term <= term_tol.
    double term_tol = 1e-12;
    std::size_t ratio_window = 8;
};

/// phi_f(x) = sum_n d(f^n x, f^{n+1} x), truncated.
struct OrbitPotentialRef {
    MapSpec map;
    MetricSpec metric;
    Truncation truncation;
};

/// Finite support; +inf elsewhere. Points match by exact coordinates.
struct TablePotential {
    std::vector<std::pair<Point, double>> entries;
};

/// An extended-real potential phi: R^d -> (-inf, +inf] with a declared
/// lower bound m and a witness point where it is finite.
class PotentialSpec {
public:
    using Form = std::variant<LinearScalarPotential, ScaledDistancePotential, OrbitPotentialRef,
                              TablePotential>;

    /// Throws ConfigError when m is not finite or phi(witness) is +inf.
    PotentialSpec(Form form, double lower_bound, Point proper_witness, double bound_tol = 1e-12);

    const Form& form() const noexcept { return form_; }
    double lower_bound() const noexcept { return lower_bound_; }
    const Point& proper_witness() const noexcept { return witness_; }
    double bound_tol() const noexcept { return bound_tol_; }
    std::string_view kind_name() const noexcept;

private:
    Form form_;
    double lower_bound_;
    Point witness_;
    double bound_tol_;
};

/// phi(x), possibly +inf. Throws InconsistentBound when the value falls below
/// the declared lower bound by more than bound_tol.
double eval_potential(const PotentialSpec& phi, const Point& x);

/// phi(x) - phi(f(x)) - d(x, f(x)); >= -tol iff Caristi's inequality holds
/// at x. Throws NotCheckable when phi(x) = +inf.
double check_caristi_step(const PotentialSpec& phi, const MapSpec& map, const MetricSpec& metric,
                          const Point& x);

struct CaristiReport {
    std::size_t steps_checked = 0;
    std::vector<double> slacks;
    std::vector<double> gaps;
    std::vector<double> potentials;  ///< phi(x_0) .. phi(x_steps)
    double min_slack = 0.0;
    /// phi(x_0) - m
    double telescoped_bound = 0.0;
    double total_displacement = 0.0;
    double tol = 0.0;
    bool holds = false;
    /// Displacement <= phi(x_0) - phi(x_N) + N tol and <= phi(x_0) - m + N tol.
    bool bound_confirmed = false;
    /// phi reached +inf mid-orbit; the report covers the finite prefix.
    bool truncated = false;
};

/// Checks the Caristi inequality at x_0, ..., x_{steps-1} of the orbit of x0.
/// Throws NotCheckable when phi(x0) = +inf.
CaristiReport verify_along_orbit(const PotentialSpec& phi, const MapSpec& map,
                                 const MetricSpec& metric, const Point& x0, std::size_t steps,
                                 double tol);

/// Plain-text report with the slack vector inline.
std::string to_text(const CaristiReport& report);

struct OrbitPotentialValue {
    double value = 0.0;
    std::size_t terms = 0;
    double last_term = 0.0;
    std::optional<double> truncation_error_bound;
    bool converged = false;
};

OrbitPotentialValue orbit_potential(const MapSpec& map, const MetricSpec& metric, const Point& x,
                                    const Truncation& trunc);

struct IdentityCheck {
    /// |phi_f(x) - phi_f(f x) - d(x, f x)|
    double residual = 0.0;
    /// Sum of both truncation bounds plus a rounding allowance.
    double bound = 0.0;
    OrbitPotentialValue at_x;
    OrbitPotentialValue at_fx;
};

/// The orbit potential satisfies Caristi's inequality with equality; this
/// measures how far the truncated sums are from it. Throws NotCheckable if
/// either orbit potential failed to converge.
IdentityCheck canonical_caristi_identity_check(const MapSpec& map, const MetricSpec& metric,
                                               const Point& x, const Truncation& trunc);

}  // namespace orbitsum
