#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "orbitsum/point.hpp"

namespace orbitsum {

enum class MetricKind { euclidean, l1, linf, weighted_euclidean };

std::string_view to_string(MetricKind kind);
/// Throws ConfigError for an unknown name.
MetricKind metric_kind_from_string(std::string_view name);

/// Which distance d(x, y) to use on R^d.
class MetricSpec {
public:
    MetricSpec() = default;
    explicit MetricSpec(MetricKind kind);

    /// Weights must all be strictly positive and finite.
    static MetricSpec weighted(std::vector<double> weights);

    MetricKind kind() const noexcept { return kind_; }
    const std::vector<double>& weights() const noexcept { return weights_; }

    /// Norm-induced metrics on R^d (all built-ins are).
    bool is_hilbert() const noexcept {
        return kind_ == MetricKind::euclidean || kind_ == MetricKind::weighted_euclidean;
    }

private:
    MetricKind kind_ = MetricKind::euclidean;
    std::vector<double> weights_;
};

/// d(x, y). Identical coordinate lists give exactly 0 and argument order does
/// not change the bits of the result.
double distance(const MetricSpec& metric, const Point& x, const Point& y);

/// The norm of x under the metric, i.e. d(x, 0).
double norm(const MetricSpec& metric, std::span<const double> x);

struct AxiomViolation {
    enum class Kind { symmetry, triangle, negativity, identity };
    std::size_t triple_index;
    Kind kind;
    double amount;  ///< size of the violation beyond tol
};

struct AxiomReport {
    std::size_t triples_checked = 0;
    /// d(x,y) + d(y,z) - d(x,z) per triple; 0 marks the equality case.
    std::vector<double> triangle_slacks;
    std::vector<AxiomViolation> violations;

    bool ok() const noexcept { return violations.empty(); }
};

struct PointTriple {
    Point x;
    Point y;
    Point z;
};

/// Sampled check of symmetry, identity, nonnegativity and the triangle
/// inequality. tol must be positive.
AxiomReport check_metric_axioms(const MetricSpec& metric, const std::vector<PointTriple>& samples,
                                double tol);

}  // namespace orbitsum
