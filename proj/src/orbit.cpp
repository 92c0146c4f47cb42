#include "orbitsum/orbit.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>

#include "orbitsum/error.hpp"

namespace orbitsum {

void RunOptions::validate() const {
    if (max_iters < 1) throw ConfigError("max_iters must be >= 1");
    if (!(residual_tol > 0.0)) throw ConfigError("residual_tol must be > 0");
    if (!(displacement_budget > 0.0)) throw ConfigError("displacement_budget must be > 0");
    if (thin_stride < 1) throw ConfigError("thinning stride must be >= 1");
}

void CertifyPolicy::validate() const {
    if (ratio_window < 2) throw ConfigError("ratio_window must be >= 2");
    if (!(ratio_ceiling > 0.0 && ratio_ceiling < 1.0)) throw ConfigError("ratio_ceiling must lie in (0, 1)");
    if (!(residual_tol > 0.0)) throw ConfigError("residual_tol must be > 0");
}

std::string_view to_string(TerminationReason reason) {
    switch (reason) {
        case TerminationReason::residual_below_tol: return "residual-below-tol";
        case TerminationReason::max_iterations: return "max-iterations";
        case TerminationReason::displacement_budget_exceeded: return "displacement-budget-exceeded";
        case TerminationReason::gap_exactly_zero: return "gap-exactly-zero";
        case TerminationReason::numeric_overflow: return "numeric-overflow";
    }
    return "?";
}

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::converged: return "CONVERGED";
        case Verdict::divergent: return "DIVERGENT";
        case Verdict::inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

Verdict verdict_from_string(std::string_view s) {
    std::string up(s);
    for (auto& ch : up) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    if (up == "CONVERGED") return Verdict::converged;
    if (up == "DIVERGENT") return Verdict::divergent;
    if (up == "INCONCLUSIVE") return Verdict::inconclusive;
    throw ConfigError("unknown verdict '" + std::string(s) + "'");
}

const Point* OrbitTrace::iterate_at(std::size_t n) const {
    auto it = std::lower_bound(iterate_index.begin(), iterate_index.end(), n);
    if (it == iterate_index.end() || *it != n) return nullptr;
    return &iterates[static_cast<std::size_t>(it - iterate_index.begin())];
}

OrbitTrace run_orbit(const Stepper& step, const MetricSpec& metric, const Point& x0,
                     const RunOptions& opts) {
    opts.validate();

    OrbitTrace trace;
    trace.iterates.push_back(x0);
    trace.iterate_index.push_back(0);

    Point x = x0;
    double sum = 0.0;
    for (std::size_t n = 0;; ++n) {
        std::optional<OrbitStep> st;
        try {
            st.emplace(step(n, x));
        } catch (const NumericError& e) {
            trace.reason = TerminationReason::numeric_overflow;
            trace.failure = e.what();
            break;
        }
        require_same_dim(x, st->next, "orbit step");

        const double gap = distance(metric, x, st->next);
        if (!std::isfinite(gap) || !std::isfinite(sum + gap)) {
            trace.reason = TerminationReason::numeric_overflow;
            trace.failure = "orbit gap overflowed at step " + std::to_string(n);
            break;
        }
        sum += gap;
        if (!trace.gaps.empty()) {
            const double prev = trace.gaps.back();
            trace.ratios.push_back(prev > 0.0 ? std::optional<double>(gap / prev) : std::nullopt);
        }
        trace.gaps.push_back(gap);
        trace.partial_sums.push_back(sum);
        trace.residuals.push_back(st->residual);

        x = std::move(st->next);
        const std::size_t k = n + 1;
        if (k <= opts.thin_after || (k - opts.thin_after) % opts.thin_stride == 0) {
            trace.iterates.push_back(x);
            trace.iterate_index.push_back(k);
        }

        if (gap == 0.0 && st->residual == 0.0) {
            trace.reason = TerminationReason::gap_exactly_zero;
            break;
        }
        if (st->residual <= opts.residual_tol) {
            trace.reason = TerminationReason::residual_below_tol;
            break;
        }
        if (sum > opts.displacement_budget) {
            trace.reason = TerminationReason::displacement_budget_exceeded;
            break;
        }
        if (trace.gaps.size() >= opts.max_iters) {
            trace.reason = TerminationReason::max_iterations;
            break;
        }
    }

    if (trace.iterate_index.back() != trace.gaps.size()) {
        trace.iterates.push_back(x);
        trace.iterate_index.push_back(trace.gaps.size());
    }
    return trace;
}

OrbitTrace run_orbit(const MapSpec& map, const MetricSpec& metric, const Point& x0,
                     const RunOptions& opts) {
    if (map.dim() && *map.dim() != x0.dim()) throw DimensionError(*map.dim(), x0.dim(), "start point");
    return run_orbit(
        [&](std::size_t, const Point& x) {
            Point fx = eval_map(map, x);
            const double r = distance(metric, x, fx);
            return OrbitStep{std::move(fx), r};
        },
        metric, x0, opts);
}

double orbit_gap(const MapSpec& map, const MetricSpec& metric, const Point& x, std::size_t n) {
    Point y = x;
    for (std::size_t i = 0; i < n; ++i) y = eval_map(map, y);
    return distance(metric, y, eval_map(map, y));
}

double cauchy_bound(const OrbitTrace& trace, std::size_t n, std::size_t m) {
    if (!(n < m && m <= trace.gaps.size()))
        throw ConfigError("cauchy_bound requires n < m <= " + std::to_string(trace.gaps.size()) +
                          ", got n=" + std::to_string(n) + " m=" + std::to_string(m));
    double s = 0.0;
    for (std::size_t j = n; j < m; ++j) s += trace.gaps[j];
    return s;
}

double fixed_point_residual(const MapSpec& map, const MetricSpec& metric, const Point& p) {
    return distance(metric, p, eval_map(map, p));
}

namespace {

std::vector<double> window_ratios(const OrbitTrace& trace, std::size_t window) {
    std::vector<double> out;
    const std::size_t total = trace.ratios.size();
    const std::size_t begin = total > window ? total - window : 0;
    for (std::size_t i = begin; i < total; ++i)
        if (trace.ratios[i]) out.push_back(*trace.ratios[i]);
    return out;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

constexpr const char* kLscNote =
    "lower semicontinuity of the gap functions is assumed for this map, not verified";

}  // namespace

std::optional<double> windowed_max_ratio(const OrbitTrace& trace, std::size_t window) {
    const auto rs = window_ratios(trace, window);
    if (rs.empty()) return std::nullopt;
    return *std::max_element(rs.begin(), rs.end());
}

std::optional<double> geometric_tail(double last_gap, double ratio) {
    if (last_gap == 0.0) return 0.0;
    if (!(ratio < 1.0)) return std::nullopt;
    return last_gap * ratio / (1.0 - ratio);
}

SummabilityCertificate certify(const OrbitTrace& trace, const ResidualFn& residual,
                               const CertifyPolicy& policy) {
    policy.validate();
    if (trace.iterates.empty() || trace.partial_sums.size() != trace.gaps.size())
        throw ConfigError("malformed orbit trace");

    SummabilityCertificate cert;
    cert.total_displacement = trace.total_displacement();
    const double last_gap = trace.gaps.empty() ? 0.0 : trace.gaps.back();
    const auto ratio = windowed_max_ratio(trace, policy.ratio_window);
    cert.ratio_estimate = ratio;
    if (last_gap == 0.0)
        cert.tail_bound = 0.0;
    else if (ratio)
        cert.tail_bound = geometric_tail(last_gap, *ratio);

    try {
        cert.residual = residual(trace.last());
    } catch (const NumericError&) {
        cert.residual.reset();
    }

    std::string ev = std::to_string(trace.steps()) + " steps, stopped on " +
                     std::string(to_string(trace.reason)) + ", total displacement " +
                     fmt(cert.total_displacement);

    const bool stopped_small = trace.reason == TerminationReason::residual_below_tol ||
                               trace.reason == TerminationReason::gap_exactly_zero;
    if (stopped_small) {
        if (!cert.residual || *cert.residual > policy.residual_tol) {
            cert.evidence = ev + "; recomputed residual " +
                            (cert.residual ? fmt(*cert.residual) : std::string("unavailable")) +
                            " exceeds tol " + fmt(policy.residual_tol) + "; " + kLscNote;
            return cert;
        }
        if (last_gap > 0.0) {
            if (!ratio) {
                // a single step: no ratio to extrapolate from, use the ceiling
                cert.tail_bound = geometric_tail(last_gap, policy.ratio_ceiling);
                ev += "; no ratio observed, tail extrapolated at the ceiling " + fmt(policy.ratio_ceiling);
            } else if (*ratio > policy.ratio_ceiling) {
                cert.evidence = ev + "; windowed ratio " + fmt(*ratio) + " above ceiling " +
                                fmt(policy.ratio_ceiling) + ", tail not bounded; " + kLscNote;
                return cert;
            }
        }
        cert.verdict = Verdict::converged;
        cert.limit_estimate = trace.last();
        cert.evidence = ev + "; residual d(p, f(p)) = " + fmt(*cert.residual) + " <= tol " +
                        fmt(policy.residual_tol) + ", geometric tail bound " + fmt(*cert.tail_bound) +
                        "; " + kLscNote;
        return cert;
    }

    if (trace.reason == TerminationReason::displacement_budget_exceeded) {
        const std::size_t w = std::min(policy.ratio_window, trace.gaps.size());
        const double min_gap = *std::min_element(trace.gaps.end() - static_cast<std::ptrdiff_t>(w),
                                                 trace.gaps.end());
        const auto rs = window_ratios(trace, policy.ratio_window);
        const double min_ratio = rs.empty() ? 0.0 : *std::min_element(rs.begin(), rs.end());
        if (!rs.empty() && min_gap >= policy.residual_tol && min_ratio >= 1.0 - 1e-9) {
            cert.verdict = Verdict::divergent;
            cert.evidence = ev + "; displacement budget exceeded with gaps bounded below by " +
                            fmt(min_gap) + " and no decay over the last " + std::to_string(w) +
                            " steps (min ratio " + fmt(min_ratio) + "), consistent with constant gaps";
            return cert;
        }
        cert.evidence = ev + "; displacement budget exceeded but gaps still shrink (min gap " +
                        fmt(min_gap) + ", min ratio " + fmt(min_ratio) + "); summability undecided";
        return cert;
    }

    cert.evidence = ev + "; no rule fired";
    if (trace.reason == TerminationReason::numeric_overflow) cert.evidence += ": " + trace.failure;
    return cert;
}

SummabilityCertificate certify(const OrbitTrace& trace, const MapSpec& map,
                               const MetricSpec& metric, const CertifyPolicy& policy) {
    return certify(
        trace, [&](const Point& p) { return fixed_point_residual(map, metric, p); }, policy);
}

}  // namespace orbitsum
