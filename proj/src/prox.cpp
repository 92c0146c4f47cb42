#include "orbitsum/prox.hpp"

#include <cmath>

#include "orbitsum/error.hpp"
#include "overloaded.hpp"

namespace orbitsum {

using detail::overloaded;

namespace {

void require_positive_weight(double w, const char* what) {
    if (!(std::isfinite(w) && w > 0.0)) throw ConfigError(std::string(what) + " weight must be > 0");
}

}  // namespace

ProxSpec::ProxSpec(Function fn) : fn_(std::move(fn)) {
    dim_ = std::visit(overloaded{
                          [](const QuadraticProx& q) -> std::size_t {
                              require_positive_weight(q.weight, "quadratic");
                              if (q.center.empty() || !all_finite(q.center))
                                  throw ConfigError("quadratic center must be nonempty and finite");
                              return q.center.size();
                          },
                          [](const L1Prox& l) -> std::size_t {
                              require_positive_weight(l.weight, "l1");
                              return 0;
                          },
                          [](const IndicatorProx& i) -> std::size_t { return i.set.dim(); },
                      },
                      fn_);
}

std::string_view ProxSpec::kind_name() const noexcept {
    return std::visit(overloaded{
                          [](const QuadraticProx&) { return std::string_view("quadratic"); },
                          [](const L1Prox&) { return std::string_view("l1"); },
                          [](const IndicatorProx&) { return std::string_view("indicator"); },
                      },
                      fn_);
}

Point prox_step(const ProxSpec& prox, double lambda, const Point& x) {
    if (!(std::isfinite(lambda) && lambda > 0.0)) throw ConfigError("prox step lambda must be > 0");
    if (prox.dim() != 0 && prox.dim() != x.dim()) throw DimensionError(prox.dim(), x.dim(), "prox");

    return std::visit(
        overloaded{
            [&](const QuadraticProx& q) {
                // argmin w/2 |u - z|^2 + |u - x|^2 / (2 lambda)
                const double lw = lambda * q.weight;
                std::vector<double> out(x.dim());
                for (std::size_t i = 0; i < out.size(); ++i)
                    out[i] = (x[i] + lw * q.center[i]) / (1.0 + lw);
                return Point(std::move(out));
            },
            [&](const L1Prox& l) {
                const double t = lambda * l.weight;
                std::vector<double> out(x.dim());
                for (std::size_t i = 0; i < out.size(); ++i) {
                    const double mag = std::fabs(x[i]) - t;
                    out[i] = mag > 0.0 ? std::copysign(mag, x[i]) : 0.0;
                }
                return Point(std::move(out));
            },
            [&](const IndicatorProx& ind) { return project(ind.set, x); },
        },
        prox.function());
}

}  // namespace orbitsum
