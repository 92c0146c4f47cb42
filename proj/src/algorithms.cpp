#include "orbitsum/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "orbitsum/error.hpp"

namespace orbitsum {

double ContractionResult::apriori_bound(std::size_t n) const {
    return std::pow(modulus, static_cast<double>(n)) / (1.0 - modulus) * initial_gap;
}

ContractionResult contraction_solve(const MapSpec& map, const MetricSpec& metric, const Point& x0,
                                    const RunOptions& opts, const CertifyPolicy& policy) {
    const auto& cls = map.classification();
    if (cls.kind != Classification::Kind::strong_contraction)
        throw ConfigError("contraction_solve requires a map declared strong-contraction(c)");
    const double c = cls.modulus;

    OrbitTrace trace = run_orbit(map, metric, x0, opts);
    if (trace.reason == TerminationReason::numeric_overflow) throw NumericError(trace.failure);

    for (std::size_t n = 0; n + 1 < trace.gaps.size(); ++n) {
        const Point* next = trace.iterate_at(n + 1);
        const double scale = 1.0 + norm(metric, (next ? *next : trace.last()).coords());
        if (trace.gaps[n + 1] > (c + 1e-9) * trace.gaps[n] + 1e-12 * scale) {
            char buf[200];
            std::snprintf(buf, sizeof buf,
                          "gap ratio %.12g at step %zu exceeds the declared modulus c = %.12g",
                          trace.gaps[n + 1] / trace.gaps[n], n, c);
            throw MisdeclaredContraction(buf);
        }
    }

    ContractionResult out{std::move(trace), {}, x0, c, 0.0, 0.0};
    out.certificate = certify(out.trace, map, metric, policy);
    out.initial_gap = out.trace.gaps.empty() ? 0.0 : out.trace.gaps.front();
    out.fixed_point = out.certificate.limit_estimate.value_or(out.trace.last());

    double excess = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < out.trace.iterates.size(); ++i) {
        const double err = distance(metric, out.trace.iterates[i], out.fixed_point);
        excess = std::max(excess, err - out.apriori_bound(out.trace.iterate_index[i]));
    }
    out.max_bound_excess = excess;
    return out;
}

Point km_step(const MapSpec& op, const Point& x, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw ConfigError("KM relaxation alpha must lie in the open interval (0, 1)");
    const Point tx = eval_map(op, x);
    auto next = vec::lerp(x.coords(), tx.coords(), alpha);
    if (!all_finite(next)) throw NumericError("KM step overflowed");
    return Point(std::move(next));
}

KmResult km_run(const MapSpec& op, const Point& x0, const RelaxationSchedule& schedule,
                const MetricSpec& metric, const RunOptions& opts, const CertifyPolicy& policy) {
    if (!metric.is_hilbert())
        throw ConfigError("KM runs need a Hilbert-space norm (euclidean or weighted-euclidean)");
    if (op.dim() && *op.dim() != x0.dim()) throw DimensionError(*op.dim(), x0.dim(), "KM start point");

    KmResult out;
    out.trace = run_orbit(
        [&](std::size_t n, const Point& x) {
            const double alpha = schedule.at(n);
            const Point tx = eval_map(op, x);
            const double res = distance(metric, x, tx);
            auto coords = vec::lerp(x.coords(), tx.coords(), alpha);
            if (!all_finite(coords)) throw NumericError("KM step overflowed");
            Point next(std::move(coords));

            const double predicted = alpha * res;
            const double gap = distance(metric, x, next);
            out.km_functional += predicted;
            out.max_identity_defect = std::max(out.max_identity_defect,
                                               std::fabs(gap - predicted) / (1.0 + norm(metric, x.coords())));
            return OrbitStep{std::move(next), res};
        },
        metric, x0, opts);

    if (out.max_identity_defect > 1e-12) {
        char buf[120];
        std::snprintf(buf, sizeof buf, "KM gap identity violated by %.3g (relative)", out.max_identity_defect);
        throw NumericError(buf);
    }
    out.certificate = certify(out.trace, op, metric, policy);
    return out;
}

NonexpansiveReport nonexpansiveness_check(const MapSpec& op, const std::vector<PointPair>& samples,
                                          double tol) {
    const MetricSpec euclid(MetricKind::euclidean);
    NonexpansiveReport r;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& [x, y] = samples[i];
        require_same_dim(x, y, "nonexpansiveness sample");
        const double before = distance(euclid, x, y);
        const double after = distance(euclid, eval_map(op, x), eval_map(op, y));
        const double ratio = before > 0.0 ? after / before : (after > 0.0 ? INFINITY : 0.0);
        r.max_ratio = std::max(r.max_ratio, ratio);
        if (after > before + tol) r.violations.push_back({i, ratio});
        ++r.pairs_checked;
    }
    return r;
}

AlternatingProjectionsResult alternating_projections_run(const ConvexSet& a, const ConvexSet& b,
                                                         const Point& x0, const MetricSpec& metric,
                                                         const RunOptions& opts,
                                                         const CertifyPolicy& policy) {
    if (a.dim() != b.dim()) throw DimensionError(a.dim(), b.dim(), "alternating projection sets");
    if (x0.dim() != a.dim()) throw DimensionError(a.dim(), x0.dim(), "alternating projection start");

    // zero exactly on A ∩ B
    auto residual = [&](const Point& p) {
        return std::max(distance(metric, p, project(a, p)), distance(metric, p, project(b, p)));
    };

    AlternatingProjectionsResult out;
    out.trace = run_orbit(
        [&](std::size_t n, const Point& x) {
            Point pa = project(a, x);
            Point pb = project(b, x);
            const double res = std::max(distance(metric, x, pa), distance(metric, x, pb));
            return OrbitStep{n % 2 == 0 ? std::move(pa) : std::move(pb), res};
        },
        metric, x0, opts);
    out.certificate = certify(out.trace, residual, policy);
    return out;
}

DouglasRachfordResult douglas_rachford_run(const ProxSpec& a, const ProxSpec& b, double lambda,
                                           const Point& x0, const MetricSpec& metric,
                                           const RunOptions& opts, const CertifyPolicy& policy) {
    const MapSpec step = MapSpec::douglas_rachford(a, b, lambda);
    DouglasRachfordResult out;
    out.trace = run_orbit(step, metric, x0, opts);
    out.certificate = certify(out.trace, step, metric, policy);
    if (out.certificate.limit_estimate) out.shadow = prox_step(a, lambda, *out.certificate.limit_estimate);
    return out;
}

}  // namespace orbitsum
