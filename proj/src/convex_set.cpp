#include "orbitsum/convex_set.hpp"

#include <algorithm>
#include <cmath>

#include "orbitsum/error.hpp"
#include "overloaded.hpp"

namespace orbitsum {

using detail::overloaded;

namespace {

void require_finite(std::span<const double> v, const char* what) {
    if (!all_finite(v)) throw ConfigError(std::string(what) + " must be finite");
}

void require_nonzero(std::span<const double> v, const char* what) {
    if (vec::dot(v, v) == 0.0) throw ConfigError(std::string(what) + " must be nonzero");
}

std::size_t validate(const Box& b) {
    if (b.lo.empty() || b.lo.size() != b.hi.size())
        throw ConfigError("box bounds must be nonempty and of equal length");
    require_finite(b.lo, "box lower bound");
    require_finite(b.hi, "box upper bound");
    for (std::size_t i = 0; i < b.lo.size(); ++i)
        if (b.lo[i] > b.hi[i]) throw ConfigError("box requires lo <= hi componentwise");
    return b.lo.size();
}

std::size_t validate(const Ball& b) {
    if (b.center.empty()) throw ConfigError("ball center must be nonempty");
    require_finite(b.center, "ball center");
    if (!(std::isfinite(b.radius) && b.radius > 0.0)) throw ConfigError("ball radius must be > 0");
    return b.center.size();
}

std::size_t validate(const Halfspace& h) {
    if (h.normal.empty()) throw ConfigError("halfspace normal must be nonempty");
    require_finite(h.normal, "halfspace normal");
    require_nonzero(h.normal, "halfspace normal");
    if (!std::isfinite(h.offset)) throw ConfigError("halfspace offset must be finite");
    return h.normal.size();
}

std::size_t validate(const Hyperplane& h) {
    if (h.normal.empty()) throw ConfigError("hyperplane normal must be nonempty");
    require_finite(h.normal, "hyperplane normal");
    require_nonzero(h.normal, "hyperplane normal");
    if (!std::isfinite(h.offset)) throw ConfigError("hyperplane offset must be finite");
    return h.normal.size();
}

std::size_t validate(const AffineSubspace& s) {
    if (s.anchor.empty()) throw ConfigError("affine subspace anchor must be nonempty");
    require_finite(s.anchor, "affine subspace anchor");
    const std::size_t d = s.anchor.size();
    if (s.basis.size() > d) throw ConfigError("affine subspace has more basis vectors than dimensions");
    for (std::size_t i = 0; i < s.basis.size(); ++i) {
        if (s.basis[i].size() != d) throw DimensionError(d, s.basis[i].size(), "affine subspace basis");
        require_finite(s.basis[i], "affine subspace basis");
        for (std::size_t j = 0; j <= i; ++j) {
            const double expected = i == j ? 1.0 : 0.0;
            if (std::fabs(vec::dot(s.basis[i], s.basis[j]) - expected) > 1e-12)
                throw ConfigError("affine subspace basis must be orthonormal");
        }
    }
    return d;
}

}  // namespace

ConvexSet::ConvexSet(Shape shape) : shape_(std::move(shape)) {
    dim_ = std::visit([](const auto& s) { return validate(s); }, shape_);
}

std::string_view ConvexSet::kind_name() const noexcept {
    return std::visit(overloaded{
                          [](const Box&) { return std::string_view("box"); },
                          [](const Ball&) { return std::string_view("ball"); },
                          [](const Halfspace&) { return std::string_view("halfspace"); },
                          [](const AffineSubspace&) { return std::string_view("affine-subspace"); },
                          [](const Hyperplane&) { return std::string_view("hyperplane"); },
                      },
                      shape_);
}

Point project(const ConvexSet& set, const Point& x) {
    if (x.dim() != set.dim()) throw DimensionError(set.dim(), x.dim(), "projection");
    const auto xs = x.coords();
    std::vector<double> out(xs.begin(), xs.end());

    std::visit(overloaded{
                   [&](const Box& b) {
                       for (std::size_t i = 0; i < out.size(); ++i)
                           out[i] = std::clamp(out[i], b.lo[i], b.hi[i]);
                   },
                   [&](const Ball& b) {
                       const auto diff = vec::sub(xs, b.center);
                       const double r = vec::norm2(diff);
                       if (r <= b.radius) return;
                       for (std::size_t i = 0; i < out.size(); ++i)
                           out[i] = b.center[i] + diff[i] * (b.radius / r);
                   },
                   [&](const Halfspace& h) {
                       const double excess = vec::dot(h.normal, xs) - h.offset;
                       if (excess <= 0.0) return;
                       const double t = excess / vec::dot(h.normal, h.normal);
                       for (std::size_t i = 0; i < out.size(); ++i) out[i] -= t * h.normal[i];
                   },
                   [&](const Hyperplane& h) {
                       const double excess = vec::dot(h.normal, xs) - h.offset;
                       if (excess == 0.0) return;
                       const double t = excess / vec::dot(h.normal, h.normal);
                       for (std::size_t i = 0; i < out.size(); ++i) out[i] -= t * h.normal[i];
                   },
                   [&](const AffineSubspace& s) {
                       const auto rel = vec::sub(xs, s.anchor);
                       out = s.anchor;
                       for (const auto& u : s.basis) {
                           const double c = vec::dot(rel, u);
                           for (std::size_t i = 0; i < out.size(); ++i) out[i] += c * u[i];
                       }
                   },
               },
               set.shape());
    return Point(std::move(out));
}

double membership_residual(const ConvexSet& set, const Point& x) {
    if (x.dim() != set.dim()) throw DimensionError(set.dim(), x.dim(), "membership");
    const auto xs = x.coords();
    return std::visit(
        overloaded{
            [&](const Box& b) {
                double acc = 0.0;
                for (std::size_t i = 0; i < xs.size(); ++i) {
                    const double out = std::max({b.lo[i] - xs[i], xs[i] - b.hi[i], 0.0});
                    acc += out * out;
                }
                return std::sqrt(acc);
            },
            [&](const Ball& b) {
                return std::max(vec::norm2(vec::sub(xs, b.center)) - b.radius, 0.0);
            },
            [&](const Halfspace& h) {
                return std::max(vec::dot(h.normal, xs) - h.offset, 0.0) / vec::norm2(h.normal);
            },
            [&](const Hyperplane& h) {
                return std::fabs(vec::dot(h.normal, xs) - h.offset) / vec::norm2(h.normal);
            },
            [&](const AffineSubspace& s) {
                // component of x - anchor orthogonal to the span
                auto rel = vec::sub(xs, s.anchor);
                for (const auto& u : s.basis) {
                    const double c = vec::dot(rel, u);
                    for (std::size_t i = 0; i < rel.size(); ++i) rel[i] -= c * u[i];
                }
                return vec::norm2(rel);
            },
        },
        set.shape());
}

}  // namespace orbitsum
