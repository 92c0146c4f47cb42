#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "orbitsum/error.hpp"
#include "orbitsum/orbit.hpp"

using namespace orbitsum;

namespace {

const MetricSpec kEuclid;

MapSpec constant_map(double c) { return MapSpec::affine(1, {0.0}, {c}); }

RunOptions tol_opts(double tol) {
    RunOptions o;
    o.residual_tol = tol;
    return o;
}

// Brute-force oracle: first n with 2^-(n+1) <= tol, for the half map from 1.
std::size_t half_map_first_hit(double tol) {
    std::size_t n = 0;
    while (std::ldexp(1.0, -static_cast<int>(n) - 1) > tol) ++n;
    return n;
}

void check_trace_invariants(const OrbitTrace& t, const MetricSpec& m) {
    REQUIRE(t.partial_sums.size() == t.gaps.size());
    REQUIRE(t.residuals.size() == t.gaps.size());
    if (t.steps() > 0) {
        REQUIRE(t.ratios.size() == t.steps() - 1);
    }
    REQUIRE(t.iterate_index.size() == t.iterates.size());
    REQUIRE(t.iterate_index.front() == 0);
    REQUIRE(t.iterate_index.back() == t.steps());
    for (std::size_t n = 0; n < t.steps(); ++n) {
        REQUIRE(t.gaps[n] >= 0.0);
        if (n > 0) {
            REQUIRE(t.partial_sums[n] >= t.partial_sums[n - 1]);
            REQUIRE(t.partial_sums[n] == t.partial_sums[n - 1] + t.gaps[n]);
        } else {
            REQUIRE(t.partial_sums[0] == t.gaps[0]);
        }
    }
    for (std::size_t k = 0; k + 1 < t.iterates.size(); ++k)
        if (t.iterate_index[k + 1] == t.iterate_index[k] + 1)
            REQUIRE(t.gaps[t.iterate_index[k]] == distance(m, t.iterates[k], t.iterates[k + 1]));
}

}  // namespace

TEST_CASE("orbit_gap examples") {
    CHECK(orbit_gap(MapSpec::half(), kEuclid, Point{1.0}, 0) == 0.5);
    CHECK(orbit_gap(MapSpec::half(), kEuclid, Point{1.0}, 3) == std::ldexp(1.0, -4));
    CHECK(orbit_gap(MapSpec::half(), kEuclid, Point{0.0}, 7) == 0.0);
    CHECK(orbit_gap(constant_map(3.0), kEuclid, Point{3.0}, 2) == 0.0);
}

TEST_CASE("run_orbit on the half map stops at the first small gap") {
    const auto t = run_orbit(MapSpec::half(), kEuclid, Point{1.0}, tol_opts(1e-12));
    CHECK(t.reason == TerminationReason::residual_below_tol);
    const std::size_t n = half_map_first_hit(1e-12);
    CHECK(t.steps() == n + 1);
    CHECK(t.gaps.back() == std::ldexp(1.0, -static_cast<int>(n) - 1));
    CHECK(t.last() == Point{std::ldexp(1.0, -static_cast<int>(n) - 1)});
    for (std::size_t k = 0; k < t.steps(); ++k) REQUIRE(t.gaps[k] == std::ldexp(1.0, -static_cast<int>(k) - 1));
    for (const auto& r : t.ratios) REQUIRE(*r == 0.5);
    check_trace_invariants(t, kEuclid);
}

TEST_CASE("run_orbit on the shift map exceeds the budget") {
    RunOptions o;
    o.displacement_budget = 100;
    const auto t = run_orbit(MapSpec::shift(), kEuclid, Point{0.0}, o);
    CHECK(t.reason == TerminationReason::displacement_budget_exceeded);
    CHECK(t.steps() == 101);
    for (double g : t.gaps) REQUIRE(g == 1.0);
    CHECK(t.total_displacement() == 101.0);
    check_trace_invariants(t, kEuclid);
}

TEST_CASE("run_orbit on a constant map lands after one step") {
    const auto t = run_orbit(constant_map(4.0), kEuclid, Point{-1.5}, RunOptions{});
    CHECK(t.reason == TerminationReason::gap_exactly_zero);
    CHECK(t.steps() == 2);
    CHECK(t.gaps[0] == 5.5);
    CHECK(t.gaps[1] == 0.0);
    CHECK(t.ratios.at(0).value() == 0.0);
    CHECK(t.last() == Point{4.0});
}

TEST_CASE("run_orbit stops at max_iters and omits ratios after zero gaps") {
    RunOptions o;
    o.max_iters = 7;
    o.residual_tol = 1e-300;
    const auto t = run_orbit(MapSpec::rotation(0.1), kEuclid, Point{1.0, 0.0}, o);
    CHECK(t.reason == TerminationReason::max_iterations);
    CHECK(t.steps() == 7);

    // a non-autonomous driver that rests for a step: the ratio after a zero gap is absent
    const Stepper rest = [](std::size_t n, const Point& x) {
        const Point next = n == 1 ? x : Point{x[0] + 1.0};
        return OrbitStep{next, 1.0};
    };
    RunOptions o2;
    o2.max_iters = 4;
    const auto t2 = run_orbit(rest, kEuclid, Point{0.0}, o2);
    REQUIRE(t2.steps() == 4);
    CHECK(t2.gaps[1] == 0.0);
    CHECK(t2.ratios[0].value() == 0.0);
    CHECK_FALSE(t2.ratios[1].has_value());
    CHECK(t2.ratios[2].value() == 1.0);
}

TEST_CASE("run_orbit flags overflow and returns the prefix") {
    RunOptions o;
    o.displacement_budget = 1e308;
    const auto t = run_orbit(MapSpec::scale(1e100), kEuclid, Point{1.0}, o);
    CHECK(t.reason == TerminationReason::numeric_overflow);
    CHECK_FALSE(t.failure.empty());
    CHECK(t.steps() >= 1);
    for (double g : t.gaps) CHECK(std::isfinite(g));
    check_trace_invariants(t, kEuclid);
}

TEST_CASE("run options are validated") {
    RunOptions o;
    o.max_iters = 0;
    CHECK_THROWS_AS(run_orbit(MapSpec::half(), kEuclid, Point{1.0}, o), ConfigError);
    o = RunOptions{};
    o.residual_tol = 0.0;
    CHECK_THROWS_AS(run_orbit(MapSpec::half(), kEuclid, Point{1.0}, o), ConfigError);
    o = RunOptions{};
    o.displacement_budget = -1.0;
    CHECK_THROWS_AS(run_orbit(MapSpec::half(), kEuclid, Point{1.0}, o), ConfigError);
}

TEST_CASE("thinning keeps gaps at full resolution") {
    RunOptions full;
    full.residual_tol = 1e-14;
    RunOptions thin = full;
    thin.thin_after = 5;
    thin.thin_stride = 4;
    const auto m = MapSpec::affine(2, {0.6, 0.1, -0.2, 0.5}, {1.0, -1.0});
    const auto a = run_orbit(m, kEuclid, Point{3.0, 3.0}, full);
    const auto b = run_orbit(m, kEuclid, Point{3.0, 3.0}, thin);
    CHECK(a.gaps == b.gaps);
    CHECK(a.partial_sums == b.partial_sums);
    CHECK(b.iterates.size() < a.iterates.size());
    CHECK(b.last() == a.last());
    for (std::size_t k = 0; k < b.iterates.size(); ++k) CHECK(b.iterates[k] == *a.iterate_at(b.iterate_index[k]));
    CHECK(b.iterate_at(6) == nullptr);
    check_trace_invariants(b, kEuclid);
}

TEST_CASE("cauchy_bound") {
    RunOptions o;
    o.max_iters = 51;
    o.residual_tol = 1e-300;
    const auto t = run_orbit(MapSpec::half(), kEuclid, Point{1.0}, o);
    REQUIRE(t.steps() == 51);
    // sum_{j=0}^{50} 2^-(j+1), exact in binary
    CHECK(cauchy_bound(t, 0, 51) == 1.0 - std::ldexp(1.0, -51));
    CHECK(cauchy_bound(t, 10, 11) == t.gaps[10]);
    CHECK_THROWS_AS(cauchy_bound(t, 5, 5), ConfigError);
    CHECK_THROWS_AS(cauchy_bound(t, 0, 52), ConfigError);

    const auto rot = run_orbit(MapSpec::affine(2, {0.5, -0.6, 0.6, 0.5}, {1.0, 0.0}), kEuclid,
                               Point{4.0, -2.0}, tol_opts(1e-12));
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<std::size_t> pick(0, rot.steps());
    for (int k = 0; k < 100; ++k) {
        std::size_t n = pick(rng), m = pick(rng);
        if (n == m) continue;
        if (n > m) std::swap(n, m);
        const double cb = cauchy_bound(rot, n, m);
        CHECK(distance(kEuclid, *rot.iterate_at(n), *rot.iterate_at(m)) <= cb + 1e-10 * (1 + cb));
    }
}

TEST_CASE("fixed_point_residual examples") {
    CHECK(fixed_point_residual(MapSpec::half(), kEuclid, Point{0.0}) == 0.0);
    CHECK(fixed_point_residual(MapSpec::half(), kEuclid, Point{1.0}) == 0.5);
    for (double p : {-3.0, 0.0, 17.5}) CHECK(fixed_point_residual(MapSpec::shift(), kEuclid, Point{p}) == 1.0);
}

TEST_CASE("certify: half map converges") {
    const auto t = run_orbit(MapSpec::half(), kEuclid, Point{1.0}, tol_opts(1e-12));
    CertifyPolicy pol;
    pol.residual_tol = 1e-12;
    const auto c = certify(t, MapSpec::half(), kEuclid, pol);
    CHECK(c.verdict == Verdict::converged);
    REQUIRE(c.limit_estimate.has_value());
    CHECK(std::abs((*c.limit_estimate)[0]) <= 1e-11);
    CHECK(std::abs(c.total_displacement - 1.0) <= 1e-10);
    CHECK(std::abs(*c.ratio_estimate - 0.5) <= 1e-6);
    REQUIRE(c.tail_bound.has_value());
    CHECK(std::isfinite(*c.tail_bound));
    // the geometric tail closes the remaining distance to the series limit
    CHECK(c.total_displacement + *c.tail_bound == 1.0);
    CHECK(*c.residual <= 1e-12);
    CHECK(c.evidence.find("lower semicontinu") != std::string::npos);
}

TEST_CASE("certify: shift map diverges") {
    RunOptions o;
    o.displacement_budget = 100;
    const auto t = run_orbit(MapSpec::shift(), kEuclid, Point{0.0}, o);
    const auto c = certify(t, MapSpec::shift(), kEuclid, CertifyPolicy{});
    CHECK(c.verdict == Verdict::divergent);
    CHECK_FALSE(c.limit_estimate.has_value());
    CHECK(c.evidence.find("constant gaps") != std::string::npos);
}

TEST_CASE("certify: hypot drift is inconclusive") {
    RunOptions o;
    o.displacement_budget = 50;
    const auto t = run_orbit(MapSpec::hypot(), kEuclid, Point{0.0}, o);
    const auto c = certify(t, MapSpec::hypot(), kEuclid, CertifyPolicy{});
    CHECK(c.verdict == Verdict::inconclusive);
    // brute-force oracle x_n = sqrt(n)
    for (std::size_t n : {1u, 4u, 100u, 2500u}) {
        if (n > t.steps()) continue;
        CHECK(std::abs((*t.iterate_at(n))[0] - std::sqrt(static_cast<double>(n))) <= 1e-9 * std::sqrt(double(n)));
    }
    CHECK(t.total_displacement() == doctest::Approx(std::sqrt(static_cast<double>(t.steps()))).epsilon(1e-12));
}

TEST_CASE("certify: converse direction from a fixed point") {
    const std::vector<std::pair<MapSpec, Point>> cases{
        {MapSpec::half(), Point{0.0}},
        {MapSpec::affine(2, {0.3, 0.0, 0.0, 0.3}, {0.7, 1.4}), Point{1.0, 2.0}},
        {MapSpec::rotation(1.0), Point{0.0, 0.0}},
        {MapSpec::identity(3), Point{1.0, -2.0, 3.0}},
    };
    for (const auto& [map, p] : cases) {
        REQUIRE(fixed_point_residual(map, kEuclid, p) == 0.0);
        const auto t = run_orbit(map, kEuclid, p, RunOptions{});
        for (double g : t.gaps) CHECK(g == 0.0);
        CHECK(t.total_displacement() == 0.0);
        const auto c = certify(t, map, kEuclid, CertifyPolicy{});
        CHECK(c.verdict == Verdict::converged);
        CHECK(c.total_displacement == 0.0);
        CHECK(*c.tail_bound == 0.0);
    }
}

TEST_CASE("certify soundness: converged limits pass an independent residual check") {
    const std::vector<std::pair<MapSpec, Point>> cases{
        {MapSpec::affine(2, {0.5, -0.6, 0.6, 0.5}, {1.0, 0.0}), Point{4.0, -2.0}},
        {MapSpec::half(), Point{-1e6}},
        {MapSpec::km(MapSpec::rotation(std::numbers::pi / 3), RelaxationSchedule::constant(0.5)), Point{1.0, 1.0}},
    };
    for (const auto& [map, x0] : cases) {
        const auto t = run_orbit(map, kEuclid, x0, RunOptions{});
        const auto c = certify(t, map, kEuclid, CertifyPolicy{});
        REQUIRE(c.verdict == Verdict::converged);
        const Point& p = *c.limit_estimate;
        const Point fp = eval_map(map, p);
        double d = 0;
        for (std::size_t i = 0; i < p.dim(); ++i) d += (p[i] - fp[i]) * (p[i] - fp[i]);
        CHECK(std::sqrt(d) <= 1e-10);
    }
}

TEST_CASE("strong contraction gaps obey the modulus up to rounding") {
    const double c = 0.7;
    const auto m = MapSpec::affine(2, {0.7 * std::cos(0.4), -0.7 * std::sin(0.4), 0.7 * std::sin(0.4), 0.7 * std::cos(0.4)},
                                   {1.0, 2.0});
    const auto t = run_orbit(m, kEuclid, Point{10.0, -10.0}, tol_opts(1e-12));
    for (std::size_t n = 0; n + 1 < t.steps(); ++n) {
        const Point& x = *t.iterate_at(n + 1);
        const double scale = 1.0 + std::hypot(x[0], x[1]);
        REQUIRE(t.gaps[n + 1] <= c * t.gaps[n] + 1e-12 * scale);
    }
}

TEST_CASE("certify policy and verdict names") {
    CertifyPolicy p;
    p.ratio_window = 1;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p = CertifyPolicy{};
    p.ratio_ceiling = 1.0;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    CHECK(verdict_from_string("converged") == Verdict::converged);
    CHECK(to_string(Verdict::divergent) == "DIVERGENT");
    CHECK_THROWS_AS(verdict_from_string("maybe"), ConfigError);
    CHECK(geometric_tail(2.0, 0.5) == 2.0);
    CHECK(geometric_tail(0.0, 1.5) == 0.0);
    CHECK_FALSE(geometric_tail(1.0, 1.0).has_value());
}

TEST_CASE("telescoping: consecutive partial sums differ by the gap") {
    // dyadic orbits are exact, so the difference is bitwise the gap
    RunOptions shift_opts;
    shift_opts.displacement_budget = 1000;
    for (const auto& t : {run_orbit(MapSpec::half(), kEuclid, Point{1.0}, tol_opts(1e-15)),
                          run_orbit(MapSpec::shift(), kEuclid, Point{0.5}, shift_opts)})
        for (std::size_t n = 1; n < t.steps(); ++n) REQUIRE(t.partial_sums[n] - t.partial_sums[n - 1] == t.gaps[n]);

    // otherwise the subtraction recovers the gap to within one rounding of the sum
    const auto t = run_orbit(MapSpec::affine(2, {0.5, -0.6, 0.6, 0.5}, {1.0, 0.0}), kEuclid, Point{4.0, -2.0},
                             tol_opts(1e-13));
    for (std::size_t n = 1; n < t.steps(); ++n) {
        const double ulp = std::nextafter(t.partial_sums[n], INFINITY) - t.partial_sums[n];
        REQUIRE(std::abs((t.partial_sums[n] - t.partial_sums[n - 1]) - t.gaps[n]) <= ulp);
    }
}
