#pragma once

#include "orbitsum/point.hpp"
#include "orbitsum/prox.hpp"

namespace orbitsum {

/// Smooth part of a forward-backward split: f(x) = weight/2 ||x - center||^2,
/// so grad f(x) = weight (x - center) exactly.
struct QuadraticSmooth {
    std::vector<double> center;
    double weight = 1.0;
};

/// prox_{step g}(x - step * grad f(x)).
Point forward_backward_step(const QuadraticSmooth& smooth, const ProxSpec& g, double step,
                            const Point& x);

/// True when 0 < step < 2 / weight, where the forward operator is nonexpansive.
bool forward_backward_step_in_range(const QuadraticSmooth& smooth, double step) noexcept;

/// R = 2 prox - id
Point reflect(const ProxSpec& prox, double lambda, const Point& x);

/// x -> x/2 + R_B(R_A(x))/2.
Point douglas_rachford_step(const ProxSpec& a, const ProxSpec& b, double lambda, const Point& x);

}  // namespace orbitsum
