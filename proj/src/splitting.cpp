#include "orbitsum/splitting.hpp"

#include <cmath>

#include "orbitsum/error.hpp"

namespace orbitsum {

Point forward_backward_step(const QuadraticSmooth& smooth, const ProxSpec& g, double step,
                            const Point& x) {
    if (smooth.center.size() != x.dim())
        throw DimensionError(smooth.center.size(), x.dim(), "forward-backward smooth part");
    std::vector<double> forward(x.dim());
    for (std::size_t i = 0; i < forward.size(); ++i)
        forward[i] = x[i] - step * smooth.weight * (x[i] - smooth.center[i]);
    if (!all_finite(forward)) throw NumericError("forward step overflowed");
    return prox_step(g, step, Point(std::move(forward)));
}

bool forward_backward_step_in_range(const QuadraticSmooth& smooth, double step) noexcept {
    return step > 0.0 && step * smooth.weight < 2.0;
}

Point reflect(const ProxSpec& prox, double lambda, const Point& x) {
    const Point p = prox_step(prox, lambda, x);
    std::vector<double> out(x.dim());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = 2.0 * p[i] - x[i];
    if (!all_finite(out)) throw NumericError("reflection overflowed");
    return Point(std::move(out));
}

Point douglas_rachford_step(const ProxSpec& a, const ProxSpec& b, double lambda, const Point& x) {
    const Point rr = reflect(b, lambda, reflect(a, lambda, x));
    std::vector<double> out(x.dim());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = 0.5 * x[i] + 0.5 * rr[i];
    return Point(std::move(out));
}

}  // namespace orbitsum
