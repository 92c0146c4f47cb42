#include "orbitsum/point.hpp"

#include <cmath>
#include <cstdio>

#include "orbitsum/error.hpp"

namespace orbitsum {

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) {
    if (coords_.empty()) throw ConfigError("point must have at least one coordinate");
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (!std::isfinite(coords_[i]))
            throw ConfigError("point coordinate " + std::to_string(i) + " is not finite");
    }
}

Point::Point(std::initializer_list<double> coords) : Point(std::vector<double>(coords)) {}

Point Point::zeros(std::size_t dim) { return Point(std::vector<double>(dim, 0.0)); }

std::string Point::to_string() const {
    std::string out = "(";
    char buf[32];
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", coords_[i]);
        if (i) out += ", ";
        out += buf;
    }
    return out + ")";
}

bool all_finite(std::span<const double> v) noexcept {
    for (double c : v)
        if (!std::isfinite(c)) return false;
    return true;
}

void require_same_dim(const Point& a, const Point& b, const char* context) {
    if (a.dim() != b.dim()) throw DimensionError(a.dim(), b.dim(), context);
}

namespace vec {

std::vector<double> sub(std::span<const double> a, std::span<const double> b) {
    std::vector<double> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

std::vector<double> add(std::span<const double> a, std::span<const double> b) {
    std::vector<double> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

std::vector<double> scaled(std::span<const double> a, double s) {
    std::vector<double> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

std::vector<double> lerp(std::span<const double> a, std::span<const double> b, double t) {
    std::vector<double> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + t * (b[i] - a[i]);
    return r;
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

}  // namespace vec
}  // namespace orbitsum
