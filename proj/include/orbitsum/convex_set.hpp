#pragma once

#include <cstddef>
#include <string_view>
#include <variant>
#include <vector>

#include "orbitsum/point.hpp"

namespace orbitsum {

struct Box {
    std::vector<double> lo;
    std::vector<double> hi;
};

struct Ball {
    std::vector<double> center;
    double radius = 1.0;
};

/// { x : <normal, x> <= offset }
struct Halfspace {
    std::vector<double> normal;
    double offset = 0.0;
};

/// anchor + span(basis); the basis rows are orthonormal.
struct AffineSubspace {
    std::vector<std::vector<double>> basis;
    std::vector<double> anchor;
};

/// { x : <normal, x> = offset }
struct Hyperplane {
    std::vector<double> normal;
    double offset = 0.0;
};

/// A closed convex subset of R^d with a closed-form projector.
class ConvexSet {
public:
    using Shape = std::variant<Box, Ball, Halfspace, AffineSubspace, Hyperplane>;

    /// Validates the shape; throws ConfigError when malformed.
    explicit ConvexSet(Shape shape);

    const Shape& shape() const noexcept { return shape_; }
    std::size_t dim() const noexcept { return dim_; }
    std::string_view kind_name() const noexcept;

private:
    Shape shape_;
    std::size_t dim_ = 0;
};

/// Nearest point of the set in the Euclidean norm.
Point project(const ConvexSet& set, const Point& x);

/// Euclidean distance from x to the set, computed from the set's defining
/// inequalities rather than from project().
double membership_residual(const ConvexSet& set, const Point& x);

}  // namespace orbitsum
