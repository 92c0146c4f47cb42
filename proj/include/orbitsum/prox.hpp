#pragma once

#include <string_view>
#include <variant>
#include <vector>

#include "orbitsum/convex_set.hpp"
#include "orbitsum/point.hpp"

namespace orbitsum {

/// g(u) = weight/2 * ||u - center||^2
struct QuadraticProx {
    std::vector<double> center;
    double weight = 1.0;
};

/// g(u) = weight * ||u||_1
struct L1Prox {
    double weight = 1.0;
};

/// g = indicator of a closed convex set
struct IndicatorProx {
    ConvexSet set;
};

/// A proper closed convex function with a closed-form proximal operator.
class ProxSpec {
public:
    using Function = std::variant<QuadraticProx, L1Prox, IndicatorProx>;

    explicit ProxSpec(Function fn);

    const Function& function() const noexcept { return fn_; }
    /// 0 when the function places no constraint on the dimension (l1).
    std::size_t dim() const noexcept { return dim_; }
    std::string_view kind_name() const noexcept;

private:
    Function fn_;
    std::size_t dim_ = 0;
};

/// prox_{lambda g}(x) = argmin_u g(u) + ||u - x||^2 / (2 lambda).
/// Throws ConfigError for lambda <= 0.
Point prox_step(const ProxSpec& prox, double lambda, const Point& x);

}  // namespace orbitsum
