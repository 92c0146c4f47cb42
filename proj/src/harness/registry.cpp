#include "orbitsum/harness/registry.hpp"

namespace orbitsum::harness {

const std::vector<Fixture>& fixtures() {
    static const std::vector<Fixture> all = {
        {"banach-half", "x -> x/2 on R, strong contraction c = 1/2", R"({
  "name": "banach-half",
  "dimension": 1,
  "metric": {"kind": "euclidean"},
  "algorithm": {
    "scheme": "contraction",
    "map": {"kind": "scalar", "family": "half",
            "classification": {"kind": "strong-contraction", "c": 0.5}}
  },
  "x0": [1.0],
  "expected": {
    "verdict": "CONVERGED",
    "fixed_point": [0.0], "fixed_point_tol": 1e-10,
    "total_displacement": 1.0, "total_displacement_tol": 1e-10,
    "ratio": 0.5, "ratio_tol": 1e-6
  }
})"},
        {"affine-contraction-2d", "x -> 0.3 x + (0.7, 1.4) on R^2, fixed point (1, 2)", R"({
  "name": "affine-contraction-2d",
  "dimension": 2,
  "metric": {"kind": "euclidean"},
  "algorithm": {
    "scheme": "contraction",
    "map": {"kind": "affine", "matrix": [[0.3, 0.0], [0.0, 0.3]], "offset": [0.7, 1.4],
            "classification": {"kind": "strong-contraction", "c": 0.3}}
  },
  "x0": [0.0, 0.0],
  "expected": {
    "verdict": "CONVERGED",
    "fixed_point": [1.0, 2.0], "fixed_point_tol": 1e-9,
    "ratio": 0.3, "ratio_tol": 1e-6
  }
})"},
        {"shift-by-one", "x -> x + 1: constant gaps, no fixed point; Caristi fails for phi = 2x", R"({
  "name": "shift-by-one",
  "dimension": 1,
  "metric": {"kind": "euclidean"},
  "map": {"kind": "scalar", "family": "shift", "param": 1.0},
  "x0": [0.0],
  "potential": {"kind": "linear-scalar", "slope": 2.0, "lower_bound": 0.0, "steps": 50, "tol": 1e-12},
  "options": {"displacement_budget": 100},
  "expected": {"verdict": "DIVERGENT", "caristi_holds": false}
})"},
        {"hypot-drift", "x -> sqrt(x^2 + 1): gaps shrink but partial sums grow like sqrt(n)", R"({
  "name": "hypot-drift",
  "dimension": 1,
  "metric": {"kind": "euclidean"},
  "map": {"kind": "scalar", "family": "hypot"},
  "x0": [0.0],
  "options": {"displacement_budget": 50},
  "expected": {
    "verdict": "INCONCLUSIVE",
    "total_displacement": 50.0, "total_displacement_tol": 1.0
  }
})"},
        {"km-negation", "KM on T = -I with alpha = 1/2 collapses to 0 in one step", R"({
  "name": "km-negation",
  "dimension": 1,
  "metric": {"kind": "euclidean"},
  "algorithm": {
    "scheme": "km",
    "operator": {"kind": "affine", "matrix": [[-1.0]], "offset": [0.0]},
    "schedule": {"kind": "constant", "alpha": 0.5}
  },
  "x0": [3.0],
  "expected": {
    "verdict": "CONVERGED",
    "fixed_point": [0.0], "fixed_point_tol": 1e-12,
    "total_displacement": 3.0, "total_displacement_tol": 1e-12
  }
})"},
        {"km-rotation-quarter", "KM on the quarter rotation of R^2, alpha = 1/2", R"({
  "name": "km-rotation-quarter",
  "dimension": 2,
  "metric": {"kind": "euclidean"},
  "algorithm": {
    "scheme": "km",
    "operator": {"kind": "affine", "matrix": [[0.0, -1.0], [1.0, 0.0]], "offset": [0.0, 0.0],
                 "classification": {"kind": "nonexpansive"}},
    "schedule": {"kind": "constant", "alpha": 0.5}
  },
  "x0": [1.0, 0.0],
  "expected": {
    "verdict": "CONVERGED",
    "fixed_point": [0.0, 0.0], "fixed_point_tol": 1e-9,
    "ratio": 0.70710678118654757, "ratio_tol": 1e-6
  }
})"},
        {"altproj-lines-45", "alternating projections between two lines through 0 at angle pi/4", R"({
  "name": "altproj-lines-45",
  "dimension": 2,
  "metric": {"kind": "euclidean"},
  "algorithm": {
    "scheme": "alternating-projections",
    "a": {"kind": "line", "angle": 0.78539816339744831},
    "b": {"kind": "line", "angle": 0.0}
  },
  "x0": [1.0, 0.0],
  "expected": {
    "verdict": "CONVERGED",
    "fixed_point": [0.0, 0.0], "fixed_point_tol": 1e-8,
    "ratio": 0.70710678118654757, "ratio_tol": 1e-6
  }
})"},
        {"altproj-parallel-disjoint", "alternating projections between the disjoint lines x1 = 0 and x1 = 1", R"({
  "name": "altproj-parallel-disjoint",
  "dimension": 2,
  "metric": {"kind": "euclidean"},
  "algorithm": {
    "scheme": "alternating-projections",
    "a": {"kind": "hyperplane", "normal": [1.0, 0.0], "offset": 0.0},
    "b": {"kind": "hyperplane", "normal": [1.0, 0.0], "offset": 1.0}
  },
  "x0": [1.0, 0.5],
  "options": {"displacement_budget": 100},
  "expected": {"verdict": "DIVERGENT"}
})"},
        {"dr-lines-45", "Douglas-Rachford for the intersection of two lines at angle pi/4", R"({
  "name": "dr-lines-45",
  "dimension": 2,
  "metric": {"kind": "euclidean"},
  "algorithm": {
    "scheme": "douglas-rachford",
    "a": {"kind": "indicator", "set": {"kind": "line", "angle": 0.78539816339744831}},
    "b": {"kind": "indicator", "set": {"kind": "line", "angle": 0.0}},
    "lambda": 1.0
  },
  "x0": [1.0, 0.0],
  "expected": {
    "verdict": "CONVERGED",
    "fixed_point": [0.0, 0.0], "fixed_point_tol": 1e-8,
    "shadow_point": [0.0, 0.0], "shadow_point_tol": 1e-8
  }
})"},
        {"dr-parallel-disjoint", "Douglas-Rachford on disjoint parallel lines drifts by a constant vector", R"({
  "name": "dr-parallel-disjoint",
  "dimension": 2,
  "metric": {"kind": "euclidean"},
  "algorithm": {
    "scheme": "douglas-rachford",
    "a": {"kind": "indicator", "set": {"kind": "hyperplane", "normal": [1.0, 0.0], "offset": 0.0}},
    "b": {"kind": "indicator", "set": {"kind": "hyperplane", "normal": [1.0, 0.0], "offset": 1.0}},
    "lambda": 1.0
  },
  "x0": [0.25, 0.5],
  "options": {"displacement_budget": 100},
  "expected": {"verdict": "DIVERGENT"}
})"},
        {"fb-box-quadratic", "forward-backward: 1/2 |x - (2,2)|^2 over the unit box", R"({
  "name": "fb-box-quadratic",
  "dimension": 2,
  "metric": {"kind": "euclidean"},
  "algorithm": {
    "scheme": "forward-backward",
    "smooth": {"center": [2.0, 2.0], "weight": 1.0},
    "g": {"kind": "indicator", "set": {"kind": "box", "lo": [0.0, 0.0], "hi": [1.0, 1.0]}},
    "step": 1.0
  },
  "x0": [0.0, 0.0],
  "expected": {
    "verdict": "CONVERGED",
    "fixed_point": [1.0, 1.0], "fixed_point_tol": 0.0,
    "total_displacement": 1.4142135623730951, "total_displacement_tol": 1e-15
  }
})"},
        {"prox-l1", "proximal point iteration of |x|_1 with lambda = 1", R"({
  "name": "prox-l1",
  "dimension": 2,
  "metric": {"kind": "euclidean"},
  "algorithm": {
    "scheme": "proximal-point",
    "prox": {"kind": "l1", "weight": 1.0},
    "lambda": 1.0
  },
  "x0": [3.0, -0.5],
  "expected": {
    "verdict": "CONVERGED",
    "fixed_point": [0.0, 0.0], "fixed_point_tol": 0.0,
    "total_displacement": 3.1180339887498949, "total_displacement_tol": 1e-12
  }
})"},
        {"caristi-half-linear", "x -> x/2 with the Caristi potential phi(x) = 2x, m = 0", R"({
  "name": "caristi-half-linear",
  "dimension": 1,
  "metric": {"kind": "euclidean"},
  "map": {"kind": "scalar", "family": "half"},
  "x0": [1.0],
  "potential": {"kind": "linear-scalar", "slope": 2.0, "lower_bound": 0.0, "steps": 50, "tol": 0.0},
  "expected": {
    "verdict": "CONVERGED",
    "caristi_holds": true,
    "total_displacement": 1.0, "total_displacement_tol": 1e-10
  }
})"},
        {"doubling-expansion", "x -> 2x from 1: gaps double, no summable orbit", R"({
  "name": "doubling-expansion",
  "dimension": 1,
  "metric": {"kind": "euclidean"},
  "map": {"kind": "scalar", "family": "scale", "param": 2.0},
  "x0": [1.0],
  "options": {"displacement_budget": 1e6},
  "expected": {"verdict": "DIVERGENT"}
})"},
    };
    return all;
}

std::vector<ProblemConfig> registry() {
    std::vector<ProblemConfig> out;
    for (const auto& f : fixtures()) out.push_back(load_problem_text(f.text));
    return out;
}

const Fixture* find_fixture(std::string_view name) {
    for (const auto& f : fixtures())
        if (f.name == name) return &f;
    return nullptr;
}

}  // namespace orbitsum::harness
