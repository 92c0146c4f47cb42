#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace orbitsum {

/// A point of R^d with finite coordinates. Immutable once built.
class Point {
public:
    /// Throws ConfigError on an empty coordinate list or a non-finite entry.
    explicit Point(std::vector<double> coords);
    Point(std::initializer_list<double> coords);

    /// The zero vector of R^dim.
    static Point zeros(std::size_t dim);

    std::size_t dim() const noexcept { return coords_.size(); }
    double operator[](std::size_t i) const { return coords_[i]; }
    std::span<const double> coords() const noexcept { return coords_; }
    const std::vector<double>& values() const noexcept { return coords_; }

    /// Bitwise coordinate equality.
    friend bool operator==(const Point&, const Point&) = default;

    std::string to_string() const;

private:
    std::vector<double> coords_;
};

/// True when every coordinate is finite.
bool all_finite(std::span<const double> v) noexcept;

/// Throws DimensionError unless both points share a dimension.
void require_same_dim(const Point& a, const Point& b, const char* context);

/// Linear-algebra helpers over plain coordinate vectors. Results are
/// unchecked for finiteness; wrap in Point to validate.
namespace vec {
std::vector<double> sub(std::span<const double> a, std::span<const double> b);
std::vector<double> add(std::span<const double> a, std::span<const double> b);
std::vector<double> scaled(std::span<const double> a, double s);
/// (1 - t) a + t b, computed coordinatewise.
std::vector<double> lerp(std::span<const double> a, std::span<const double> b, double t);
double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);
}  // namespace vec

}  // namespace orbitsum
