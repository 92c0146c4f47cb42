#include "orbitsum/sampling.hpp"

#include <random>

namespace orbitsum::sampling {

namespace {

Point draw(std::mt19937_64& rng, std::size_t dim, double scale) {
    std::uniform_real_distribution<double> u(-scale, scale);
    std::vector<double> c(dim);
    for (auto& v : c) v = u(rng);
    return Point(std::move(c));
}

}  // namespace

std::vector<Point> random_points(std::size_t dim, std::size_t count, std::uint64_t seed, double scale) {
    std::mt19937_64 rng(seed);
    std::vector<Point> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(draw(rng, dim, scale));
    return out;
}

std::vector<PointPair> random_pairs(std::size_t dim, std::size_t count, std::uint64_t seed, double scale) {
    std::mt19937_64 rng(seed);
    std::vector<PointPair> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        Point x = draw(rng, dim, scale);
        Point y = draw(rng, dim, scale);
        out.push_back({std::move(x), std::move(y)});
    }
    return out;
}

std::vector<PointTriple> random_triples(std::size_t dim, std::size_t count, std::uint64_t seed,
                                        double scale) {
    std::mt19937_64 rng(seed);
    std::vector<PointTriple> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        Point x = draw(rng, dim, scale);
        Point y = draw(rng, dim, scale);
        Point z = draw(rng, dim, scale);
        out.push_back({std::move(x), std::move(y), std::move(z)});
    }
    return out;
}

}  // namespace orbitsum::sampling
