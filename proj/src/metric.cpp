#include "orbitsum/metric.hpp"

#include <algorithm>
#include <cmath>

#include "orbitsum/error.hpp"

namespace orbitsum {

std::string_view to_string(MetricKind kind) {
    switch (kind) {
        case MetricKind::euclidean: return "euclidean";
        case MetricKind::l1: return "l1";
        case MetricKind::linf: return "linf";
        case MetricKind::weighted_euclidean: return "weighted-euclidean";
    }
    return "?";
}

MetricKind metric_kind_from_string(std::string_view name) {
    if (name == "euclidean") return MetricKind::euclidean;
    if (name == "l1") return MetricKind::l1;
    if (name == "linf") return MetricKind::linf;
    if (name == "weighted-euclidean") return MetricKind::weighted_euclidean;
    throw ConfigError("unknown metric kind '" + std::string(name) + "'");
}

MetricSpec::MetricSpec(MetricKind kind) : kind_(kind) {
    if (kind == MetricKind::weighted_euclidean)
        throw ConfigError("weighted-euclidean metric requires weights");
}

MetricSpec MetricSpec::weighted(std::vector<double> weights) {
    if (weights.empty()) throw ConfigError("weighted-euclidean metric requires weights");
    for (double w : weights) {
        if (!(std::isfinite(w) && w > 0.0))
            throw ConfigError("metric weights must be finite and strictly positive");
    }
    MetricSpec m;
    m.kind_ = MetricKind::weighted_euclidean;
    m.weights_ = std::move(weights);
    return m;
}

namespace {

// All formulas work on |x_i - y_i|, so swapping arguments cannot change a bit.
double norm_of_difference(const MetricSpec& metric, std::span<const double> x,
                          std::span<const double> y) {
    double acc = 0.0;
    switch (metric.kind()) {
        case MetricKind::euclidean:
            for (std::size_t i = 0; i < x.size(); ++i) {
                const double d = std::fabs(x[i] - y[i]);
                acc += d * d;
            }
            return std::sqrt(acc);
        case MetricKind::weighted_euclidean: {
            const auto& w = metric.weights();
            for (std::size_t i = 0; i < x.size(); ++i) {
                const double d = std::fabs(x[i] - y[i]);
                acc += w[i] * d * d;
            }
            return std::sqrt(acc);
        }
        case MetricKind::l1:
            for (std::size_t i = 0; i < x.size(); ++i) acc += std::fabs(x[i] - y[i]);
            return acc;
        case MetricKind::linf:
            for (std::size_t i = 0; i < x.size(); ++i) acc = std::max(acc, std::fabs(x[i] - y[i]));
            return acc;
    }
    return acc;
}

void check_weights(const MetricSpec& metric, std::size_t dim) {
    if (metric.kind() == MetricKind::weighted_euclidean && metric.weights().size() != dim)
        throw DimensionError(metric.weights().size(), dim, "metric weights vs point");
}

}  // namespace

double distance(const MetricSpec& metric, const Point& x, const Point& y) {
    require_same_dim(x, y, "distance");
    check_weights(metric, x.dim());
    return norm_of_difference(metric, x.coords(), y.coords());
}

double norm(const MetricSpec& metric, std::span<const double> x) {
    check_weights(metric, x.size());
    const std::vector<double> zero(x.size(), 0.0);
    return norm_of_difference(metric, x, zero);
}

AxiomReport check_metric_axioms(const MetricSpec& metric, const std::vector<PointTriple>& samples,
                                double tol) {
    if (!(tol > 0.0)) throw ConfigError("axiom check tolerance must be positive");
    AxiomReport report;
    report.triangle_slacks.reserve(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& [x, y, z] = samples[i];
        require_same_dim(x, y, "axiom sample");
        require_same_dim(x, z, "axiom sample");

        const double dxy = distance(metric, x, y);
        const double dyx = distance(metric, y, x);
        const double dyz = distance(metric, y, z);
        const double dxz = distance(metric, x, z);
        const double dxx = distance(metric, x, x);

        using K = AxiomViolation::Kind;
        if (dxy < 0.0 || dyz < 0.0 || dxz < 0.0)
            report.violations.push_back({i, K::negativity, -std::min({dxy, dyz, dxz})});
        if (dxx != 0.0) report.violations.push_back({i, K::identity, dxx});
        if (std::fabs(dxy - dyx) > tol)
            report.violations.push_back({i, K::symmetry, std::fabs(dxy - dyx) - tol});

        const double slack = dxy + dyz - dxz;
        report.triangle_slacks.push_back(slack);
        if (slack < -tol) report.violations.push_back({i, K::triangle, -slack - tol});
        ++report.triples_checked;
    }
    return report;
}

}  // namespace orbitsum
