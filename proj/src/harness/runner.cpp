#include "orbitsum/harness/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>

#include "../overloaded.hpp"
#include "orbitsum/algorithms.hpp"
#include "orbitsum/error.hpp"
#include "orbitsum/harness/trace_io.hpp"

namespace orbitsum::harness {

using detail::overloaded;

namespace {

std::string g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

nlohmann::json point_json(const Point& p) { return p.values(); }

void execute(const ProblemConfig& cfg, const Point& x0, RunReport& rep) {
    std::visit(
        overloaded{
            [&](const scheme::Iterate& s) {
                rep.trace = run_orbit(s.map, cfg.metric, x0, cfg.run);
                rep.certificate = certify(rep.trace, s.map, cfg.metric, cfg.policy);
            },
            [&](const scheme::Contraction& s) {
                auto r = contraction_solve(s.map, cfg.metric, x0, cfg.run, cfg.policy);
                rep.trace = std::move(r.trace);
                rep.certificate = std::move(r.certificate);
                rep.apriori_excess = r.max_bound_excess;
            },
            [&](const scheme::KrasnoselskiiMann& s) {
                auto r = km_run(s.op, x0, s.schedule, cfg.metric, cfg.run, cfg.policy);
                rep.trace = std::move(r.trace);
                rep.certificate = std::move(r.certificate);
                rep.km_functional = r.km_functional;
                rep.km_identity_defect = r.max_identity_defect;
            },
            [&](const scheme::AlternatingProjections& s) {
                auto r = alternating_projections_run(s.a, s.b, x0, cfg.metric, cfg.run, cfg.policy);
                rep.trace = std::move(r.trace);
                rep.certificate = std::move(r.certificate);
            },
            [&](const scheme::ProximalPoint& s) {
                const MapSpec m = MapSpec::prox(s.prox, s.lambda);
                rep.trace = run_orbit(m, cfg.metric, x0, cfg.run);
                rep.certificate = certify(rep.trace, m, cfg.metric, cfg.policy);
            },
            [&](const scheme::ForwardBackward& s) {
                if (!forward_backward_step_in_range(s.smooth, s.step))
                    rep.warnings.push_back("forward-backward step " + g(s.step) + " outside (0, 2/w) = (0, " +
                                           g(2.0 / s.smooth.weight) + "): nonexpansiveness not guaranteed");
                const MapSpec m = MapSpec::forward_backward(s.smooth, s.g, s.step);
                rep.trace = run_orbit(m, cfg.metric, x0, cfg.run);
                rep.certificate = certify(rep.trace, m, cfg.metric, cfg.policy);
            },
            [&](const scheme::DouglasRachford& s) {
                auto r = douglas_rachford_run(s.a, s.b, s.lambda, x0, cfg.metric, cfg.run, cfg.policy);
                rep.trace = std::move(r.trace);
                rep.certificate = std::move(r.certificate);
                rep.shadow = std::move(r.shadow);
            },
        },
        cfg.algorithm);

    if (cfg.potential) {
        const auto map = step_map(cfg);
        if (!map) throw ConfigError("potential given but the scheme has no autonomous step map");
        rep.caristi = verify_along_orbit(cfg.potential->spec, *map, cfg.metric, x0, cfg.potential->steps,
                                         cfg.potential->tol);
    }
}

RunReport run_impl(const ProblemConfig& cfg, const Point& x0) {
    RunReport rep;
    rep.name = cfg.name;
    rep.scheme = std::string(scheme_name(cfg.algorithm));
    rep.config = cfg.source;

    const auto t0 = std::chrono::steady_clock::now();
    try {
        execute(cfg, x0, rep);
    } catch (const ConfigError& e) {
        throw ConfigError(cfg.name + ": " + e.what());
    } catch (const Error& e) {
        throw NumericError(cfg.name + ": " + e.what());
    }
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace

void check_expectations(const ProblemConfig& cfg, RunReport& rep) {
    const Expected& e = cfg.expected;
    rep.has_expectations = !e.empty();
    rep.mismatches.clear();
    const auto& cert = rep.certificate;

    if (e.verdict && *e.verdict != cert.verdict)
        rep.mismatches.push_back("verdict: expected " + std::string(to_string(*e.verdict)) + ", got " +
                                 std::string(to_string(cert.verdict)));
    if (e.fixed_point) {
        if (!cert.limit_estimate) {
            rep.mismatches.push_back("fixed_point: no limit estimate (verdict " +
                                     std::string(to_string(cert.verdict)) + ")");
        } else {
            const double d = distance(cfg.metric, *cert.limit_estimate, *e.fixed_point);
            if (!(d <= e.fixed_point_tol))
                rep.mismatches.push_back("fixed_point: distance " + g(d) + " to " + e.fixed_point->to_string() +
                                         " exceeds tol " + g(e.fixed_point_tol));
        }
    }
    if (e.total_displacement) {
        const double d = std::fabs(cert.total_displacement - *e.total_displacement);
        if (!(d <= e.total_displacement_tol))
            rep.mismatches.push_back("total_displacement: " + g(cert.total_displacement) + " vs expected " +
                                     g(*e.total_displacement) + " (tol " + g(e.total_displacement_tol) + ")");
    }
    if (e.ratio) {
        if (!cert.ratio_estimate)
            rep.mismatches.push_back("ratio: no ratio estimate");
        else if (!(std::fabs(*cert.ratio_estimate - *e.ratio) <= e.ratio_tol))
            rep.mismatches.push_back("ratio: " + g(*cert.ratio_estimate) + " vs expected " + g(*e.ratio) +
                                     " (tol " + g(e.ratio_tol) + ")");
    }
    if (e.caristi_holds) {
        if (!rep.caristi)
            rep.mismatches.push_back("caristi_holds: no potential was checked");
        else if (rep.caristi->holds != *e.caristi_holds)
            rep.mismatches.push_back(std::string("caristi_holds: expected ") + (*e.caristi_holds ? "true" : "false"));
    }
    if (e.shadow_point) {
        if (!rep.shadow) {
            rep.mismatches.push_back("shadow_point: no shadow point produced");
        } else {
            const double d = distance(cfg.metric, *rep.shadow, *e.shadow_point);
            if (!(d <= e.shadow_point_tol))
                rep.mismatches.push_back("shadow_point: distance " + g(d) + " exceeds tol " + g(e.shadow_point_tol));
        }
    }
}

RunReport run_problem(const ProblemConfig& cfg) {
    RunReport rep = run_impl(cfg, cfg.x0);
    check_expectations(cfg, rep);
    return rep;
}

RunReport run_problem_from(const ProblemConfig& cfg, const Point& x0) {
    if (x0.dim() != cfg.dimension) throw DimensionError(cfg.dimension, x0.dim(), cfg.name + ": start point");
    return run_impl(cfg, x0);
}

nlohmann::json report_to_json(const RunReport& r) {
    using nlohmann::json;
    const auto& c = r.certificate;
    auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };

    json cert = {{"verdict", std::string(to_string(c.verdict))},
                 {"total_displacement", c.total_displacement},
                 {"tail_bound", opt(c.tail_bound)},
                 {"ratio_estimate", opt(c.ratio_estimate)},
                 {"limit_estimate", c.limit_estimate ? point_json(*c.limit_estimate) : json(nullptr)},
                 {"residual", opt(c.residual)},
                 {"evidence", c.evidence}};
    json out = {{"name", r.name},
                {"scheme", r.scheme},
                {"config", r.config},
                {"trace",
                 {{"steps", r.trace.steps()},
                  {"final_gap", r.trace.gaps.empty() ? 0.0 : r.trace.gaps.back()},
                  {"total_displacement", r.trace.total_displacement()},
                  {"terminated_reason", std::string(to_string(r.trace.reason))}}},
                {"certificate", cert},
                {"warnings", r.warnings},
                {"wall_seconds", r.wall_seconds}};
    if (r.caristi) {
        const auto& k = *r.caristi;
        out["caristi"] = {{"holds", k.holds},
                          {"steps_checked", k.steps_checked},
                          {"min_slack", k.min_slack},
                          {"telescoped_bound", k.telescoped_bound},
                          {"total_displacement", k.total_displacement},
                          {"bound_confirmed", k.bound_confirmed},
                          {"truncated", k.truncated},
                          {"slacks", k.slacks}};
    }
    if (r.km_functional) out["km_functional"] = *r.km_functional;
    if (r.km_identity_defect) out["km_identity_defect"] = *r.km_identity_defect;
    if (r.shadow) out["shadow"] = point_json(*r.shadow);
    if (r.apriori_excess) out["apriori_max_excess"] = *r.apriori_excess;
    if (r.has_expectations) out["expectations"] = {{"passed", r.passed()}, {"mismatches", r.mismatches}};
    return out;
}

std::string report_to_text(const RunReport& r) {
    const auto& c = r.certificate;
    std::string out;
    out += "problem:            " + r.name + " (" + r.scheme + ")\n";
    out += "verdict:            " + std::string(to_string(c.verdict)) + "\n";
    out += "steps:              " + std::to_string(r.trace.steps()) + " (" +
           std::string(to_string(r.trace.reason)) + ")\n";
    out += "total displacement: " + g(c.total_displacement) + "\n";
    if (c.tail_bound) out += "tail bound:         " + g(*c.tail_bound) + "\n";
    if (c.ratio_estimate) out += "ratio estimate:     " + g(*c.ratio_estimate) + "\n";
    if (c.limit_estimate) out += "limit estimate:     " + c.limit_estimate->to_string() + "\n";
    if (c.residual) out += "residual:           " + g(*c.residual) + "\n";
    if (r.km_functional) out += "km functional:      " + g(*r.km_functional) + "\n";
    if (r.shadow) out += "shadow point:       " + r.shadow->to_string() + "\n";
    if (r.apriori_excess) out += "a-priori excess:    " + g(*r.apriori_excess) + "\n";
    out += "evidence:           " + c.evidence + "\n";
    for (const auto& w : r.warnings) out += "warning:            " + w + "\n";
    if (r.caristi) out += to_text(*r.caristi);
    if (r.has_expectations) {
        out += std::string("expectations:       ") + (r.passed() ? "pass" : "FAIL") + "\n";
        for (const auto& m : r.mismatches) out += "  mismatch: " + m + "\n";
    }
    return out;
}

}  // namespace orbitsum::harness
