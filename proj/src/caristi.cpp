#include "orbitsum/caristi.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "orbitsum/error.hpp"
#include "orbitsum/orbit.hpp"
#include "overloaded.hpp"

namespace orbitsum {

using detail::overloaded;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double raw_value(const PotentialSpec::Form& form, const Point& x) {
    return std::visit(
        overloaded{
            [&](const LinearScalarPotential& p) {
                if (x.dim() != 1) throw DimensionError(1, x.dim(), "linear-scalar potential");
                return p.slope * x[0];
            },
            [&](const ScaledDistancePotential& p) { return p.scale * distance(p.metric, x, p.target); },
            [&](const OrbitPotentialRef& p) {
                const auto v = orbit_potential(p.map, p.metric, x, p.truncation);
                return v.converged ? v.value : kInf;
            },
            [&](const TablePotential& t) {
                for (const auto& [pt, val] : t.entries)
                    if (pt == x) return val;
                return kInf;
            },
        },
        form);
}

}  // namespace

PotentialSpec::PotentialSpec(Form form, double lower_bound, Point proper_witness, double bound_tol)
    : form_(std::move(form)), lower_bound_(lower_bound), witness_(std::move(proper_witness)),
      bound_tol_(bound_tol) {
    if (!std::isfinite(lower_bound_)) throw ConfigError("potential lower bound must be finite");
    if (!(bound_tol_ >= 0.0)) throw ConfigError("potential bound tolerance must be >= 0");
    if (const auto* s = std::get_if<ScaledDistancePotential>(&form_); s && !(s->scale >= 0.0))
        throw ConfigError("scaled-distance potential needs a nonnegative scale");
    if (const auto* t = std::get_if<TablePotential>(&form_)) {
        for (const auto& [pt, v] : t->entries)
            if (std::isnan(v) || v == -kInf) throw ConfigError("table potential values must be > -inf");
    }
    if (eval_potential(*this, witness_) == kInf)
        throw ConfigError("potential is not proper: +inf at the declared witness");
}

std::string_view PotentialSpec::kind_name() const noexcept {
    return std::visit(overloaded{
                          [](const LinearScalarPotential&) { return std::string_view("linear-scalar"); },
                          [](const ScaledDistancePotential&) { return std::string_view("scaled-distance"); },
                          [](const OrbitPotentialRef&) { return std::string_view("orbit-potential"); },
                          [](const TablePotential&) { return std::string_view("table"); },
                      },
                      form_);
}

double eval_potential(const PotentialSpec& phi, const Point& x) {
    const double v = raw_value(phi.form(), x);
    if (v < phi.lower_bound() - phi.bound_tol()) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "potential value %.17g at %s is below the declared lower bound %.17g", v,
                      x.to_string().c_str(), phi.lower_bound());
        throw InconsistentBound(buf);
    }
    return v;
}

double check_caristi_step(const PotentialSpec& phi, const MapSpec& map, const MetricSpec& metric,
                          const Point& x) {
    const double px = eval_potential(phi, x);
    if (px == kInf) throw NotCheckable("potential is +inf at " + x.to_string() + "; Caristi step not checkable");
    const Point fx = eval_map(map, x);
    const double pfx = eval_potential(phi, fx);
    // pfx = +inf gives -inf slack: the inequality fails.
    return px - pfx - distance(metric, x, fx);
}

CaristiReport verify_along_orbit(const PotentialSpec& phi, const MapSpec& map,
                                 const MetricSpec& metric, const Point& x0, std::size_t steps,
                                 double tol) {
    if (steps < 1) throw ConfigError("Caristi verification needs at least one step");
    if (!(tol >= 0.0)) throw ConfigError("Caristi tolerance must be >= 0");

    CaristiReport r;
    r.tol = tol;
    double px = eval_potential(phi, x0);
    if (px == kInf) throw NotCheckable("potential is +inf at the start point; Caristi verification refused");
    r.potentials.push_back(px);
    r.telescoped_bound = px - phi.lower_bound();
    r.min_slack = kInf;

    Point x = x0;
    for (std::size_t j = 0; j < steps; ++j) {
        Point fx = eval_map(map, x);
        const double pfx = eval_potential(phi, fx);
        const double gap = distance(metric, x, fx);
        if (pfx == kInf) {
            r.truncated = true;
            r.slacks.push_back(-kInf);
            r.gaps.push_back(gap);
            r.min_slack = -kInf;
            ++r.steps_checked;
            break;
        }
        const double slack = px - pfx - gap;
        r.slacks.push_back(slack);
        r.gaps.push_back(gap);
        r.potentials.push_back(pfx);
        r.total_displacement += gap;
        r.min_slack = std::min(r.min_slack, slack);
        ++r.steps_checked;
        x = std::move(fx);
        px = pfx;
    }

    r.holds = !r.truncated && r.min_slack >= -tol;
    if (r.holds) {
        const double n_tol = static_cast<double>(r.steps_checked) * tol;
        const double phi0 = r.potentials.front();
        const double phiN = r.potentials.back();
        r.bound_confirmed = r.total_displacement <= phi0 - phiN + n_tol &&
                            r.total_displacement <= r.telescoped_bound + n_tol;
    }
    return r;
}

std::string to_text(const CaristiReport& r) {
    char buf[128];
    std::string out;
    out += "caristi.holds = " + std::string(r.holds ? "true" : "false") + "\n";
    out += "caristi.steps_checked = " + std::to_string(r.steps_checked) + "\n";
    std::snprintf(buf, sizeof buf, "caristi.min_slack = %.17g\n", r.min_slack);
    out += buf;
    std::snprintf(buf, sizeof buf, "caristi.total_displacement = %.17g\n", r.total_displacement);
    out += buf;
    std::snprintf(buf, sizeof buf, "caristi.telescoped_bound = %.17g\n", r.telescoped_bound);
    out += buf;
    out += "caristi.bound_confirmed = " + std::string(r.bound_confirmed ? "true" : "false") + "\n";
    out += "caristi.truncated = " + std::string(r.truncated ? "true" : "false") + "\n";
    out += "caristi.slacks = [";
    for (std::size_t i = 0; i < r.slacks.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%s%.17g", i ? ", " : "", r.slacks[i]);
        out += buf;
    }
    out += "]\n";
    return out;
}

OrbitPotentialValue orbit_potential(const MapSpec& map, const MetricSpec& metric, const Point& x,
                                    const Truncation& trunc) {
    if (trunc.max_terms < 1) throw ConfigError("orbit potential needs max_terms >= 1");
    if (!(trunc.term_tol > 0.0)) throw ConfigError("orbit potential term_tol must be > 0");

    RunOptions opts;
    opts.max_iters = trunc.max_terms;
    opts.residual_tol = trunc.term_tol;
    opts.displacement_budget = std::numeric_limits<double>::max();
    opts.thin_after = 0;
    opts.thin_stride = trunc.max_terms;
    const OrbitTrace t = run_orbit(map, metric, x, opts);
    if (t.reason == TerminationReason::numeric_overflow) throw NumericError(t.failure);

    OrbitPotentialValue v;
    v.value = t.total_displacement();
    v.terms = t.steps();
    v.last_term = t.gaps.back();
    const bool stopped_small = t.reason == TerminationReason::residual_below_tol ||
                               t.reason == TerminationReason::gap_exactly_zero;
    if (v.last_term == 0.0) {
        v.truncation_error_bound = 0.0;
    } else if (auto r = windowed_max_ratio(t, trunc.ratio_window); r && *r < 1.0) {
        v.truncation_error_bound = geometric_tail(v.last_term, *r);
    }
    v.converged = stopped_small && v.truncation_error_bound.has_value();
    return v;
}

IdentityCheck canonical_caristi_identity_check(const MapSpec& map, const MetricSpec& metric,
                                               const Point& x, const Truncation& trunc) {
    IdentityCheck c;
    c.at_x = orbit_potential(map, metric, x, trunc);
    const Point fx = eval_map(map, x);
    c.at_fx = orbit_potential(map, metric, fx, trunc);
    if (!c.at_x.converged || !c.at_fx.converged)
        throw NotCheckable("orbit potential did not converge; identity check refused");

    const double d = distance(metric, x, fx);
    c.residual = std::fabs(c.at_x.value - c.at_fx.value - d);
    // each summed term carries at most one rounding of the running total
    const double terms = static_cast<double>(c.at_x.terms + c.at_fx.terms + 1);
    const double rounding = 4.0 * terms * std::numeric_limits<double>::epsilon() *
                            (c.at_x.value + c.at_fx.value + d);
    c.bound = *c.at_x.truncation_error_bound + *c.at_fx.truncation_error_bound + c.at_x.last_term +
              c.at_fx.last_term + rounding;
    return c;
}

}  // namespace orbitsum
