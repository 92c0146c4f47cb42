#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "orbitsum/algorithms.hpp"
#include "orbitsum/metric.hpp"
#include "orbitsum/point.hpp"

namespace orbitsum::sampling {

/// Seeded generators for property checks. Coordinates are uniform in
/// [-scale, scale].
std::vector<Point> random_points(std::size_t dim, std::size_t count, std::uint64_t seed,
                                 double scale = 10.0);
std::vector<PointPair> random_pairs(std::size_t dim, std::size_t count, std::uint64_t seed,
                                    double scale = 10.0);
std::vector<PointTriple> random_triples(std::size_t dim, std::size_t count, std::uint64_t seed,
                                        double scale = 10.0);

}  // namespace orbitsum::sampling
