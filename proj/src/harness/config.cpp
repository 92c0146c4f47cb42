#include "orbitsum/harness/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "../overloaded.hpp"
#include "orbitsum/error.hpp"

namespace orbitsum::harness {

using detail::overloaded;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw ConfigError("config field '" + path + "': " + msg);
}

std::string child(const std::string& path, std::string_view key) {
    return path.empty() ? std::string(key) : path + "." + std::string(key);
}

const json& require(const json& obj, std::string_view key, const std::string& path) {
    if (!obj.is_object()) fail(path, "expected an object");
    auto it = obj.find(std::string(key));
    if (it == obj.end()) fail(child(path, key), "missing required field");
    return *it;
}

double number(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    return j.get<double>();
}

double number_at(const json& obj, std::string_view key, const std::string& path) {
    return number(require(obj, key, path), child(path, key));
}

double number_or(const json& obj, std::string_view key, double fallback, const std::string& path) {
    auto it = obj.find(std::string(key));
    return it == obj.end() ? fallback : number(*it, child(path, key));
}

std::size_t count_or(const json& obj, std::string_view key, std::size_t fallback, const std::string& path) {
    auto it = obj.find(std::string(key));
    if (it == obj.end()) return fallback;
    if (!it->is_number_unsigned() && !(it->is_number_integer() && it->get<long long>() >= 0))
        fail(child(path, key), "expected a nonnegative integer");
    return it->get<std::size_t>();
}

std::string text_at(const json& obj, std::string_view key, const std::string& path) {
    const json& j = require(obj, key, path);
    if (!j.is_string()) fail(child(path, key), "expected a string");
    return j.get<std::string>();
}

std::vector<double> numbers(const json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array of numbers");
    std::vector<double> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

std::vector<double> numbers_at(const json& obj, std::string_view key, const std::string& path) {
    return numbers(require(obj, key, path), child(path, key));
}

// Runs a constructor and tags library-level config errors with the field path.
template <class F>
auto at_field(const std::string& path, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const DimensionError& e) {
        fail(path, e.what());
    } catch (const ConfigError& e) {
        const std::string what = e.what();
        if (what.rfind("config field", 0) == 0) throw;
        fail(path, what);
    }
}

Point point_at(const json& obj, std::string_view key, std::size_t dim, const std::string& path) {
    const std::string p = child(path, key);
    auto coords = numbers_at(obj, key, path);
    if (coords.size() != dim)
        fail(p, "dimension mismatch: expected " + std::to_string(dim) + " coordinates, got " +
                    std::to_string(coords.size()));
    return at_field(p, [&] { return Point(std::move(coords)); });
}

void check_dim(std::size_t expected, std::size_t actual, const std::string& path) {
    if (expected != actual)
        fail(path, "dimension mismatch: problem dimension is " + std::to_string(expected) + ", block has " +
                       std::to_string(actual));
}

MetricSpec parse_metric(const json& j, std::size_t dim, const std::string& path) {
    const std::string kind = text_at(j, "kind", path);
    return at_field(path, [&] {
        const MetricKind k = metric_kind_from_string(kind);
        if (k != MetricKind::weighted_euclidean) {
            if (j.contains("weights")) fail(child(path, "weights"), "weights are only valid for weighted-euclidean");
            return MetricSpec(k);
        }
        auto w = numbers_at(j, "weights", path);
        check_dim(dim, w.size(), child(path, "weights"));
        return MetricSpec::weighted(std::move(w));
    });
}

ConvexSet parse_set(const json& j, std::size_t dim, const std::string& path) {
    const std::string kind = text_at(j, "kind", path);
    ConvexSet set = at_field(path, [&]() -> ConvexSet {
        if (kind == "box") return ConvexSet(Box{numbers_at(j, "lo", path), numbers_at(j, "hi", path)});
        if (kind == "ball") return ConvexSet(Ball{numbers_at(j, "center", path), number_at(j, "radius", path)});
        if (kind == "halfspace")
            return ConvexSet(Halfspace{numbers_at(j, "normal", path), number_at(j, "offset", path)});
        if (kind == "hyperplane")
            return ConvexSet(Hyperplane{numbers_at(j, "normal", path), number_at(j, "offset", path)});
        if (kind == "affine-subspace") {
            const json& b = require(j, "basis", path);
            if (!b.is_array()) fail(child(path, "basis"), "expected an array of vectors");
            std::vector<std::vector<double>> basis;
            for (std::size_t i = 0; i < b.size(); ++i)
                basis.push_back(numbers(b[i], child(path, "basis") + "[" + std::to_string(i) + "]"));
            return ConvexSet(AffineSubspace{std::move(basis), numbers_at(j, "anchor", path)});
        }
        if (kind == "line") {
            // line in R^2 through anchor (default origin) at the given angle
            const double angle = number_at(j, "angle", path);
            std::vector<double> anchor = j.contains("anchor") ? numbers_at(j, "anchor", path)
                                                              : std::vector<double>{0.0, 0.0};
            return ConvexSet(AffineSubspace{{{std::cos(angle), std::sin(angle)}}, std::move(anchor)});
        }
        fail(child(path, "kind"), "unknown set kind '" + kind + "'");
    });
    check_dim(dim, set.dim(), path);
    return set;
}

ProxSpec parse_prox(const json& j, std::size_t dim, const std::string& path) {
    const std::string kind = text_at(j, "kind", path);
    ProxSpec p = at_field(path, [&]() -> ProxSpec {
        if (kind == "quadratic")
            return ProxSpec(QuadraticProx{numbers_at(j, "center", path), number_or(j, "weight", 1.0, path)});
        if (kind == "l1") return ProxSpec(L1Prox{number_or(j, "weight", 1.0, path)});
        if (kind == "indicator") return ProxSpec(IndicatorProx{parse_set(require(j, "set", path), dim, child(path, "set"))});
        fail(child(path, "kind"), "unknown prox kind '" + kind + "'");
    });
    if (p.dim() != 0) check_dim(dim, p.dim(), path);
    return p;
}

RelaxationSchedule parse_schedule(const json& j, const std::string& path) {
    const std::string kind = text_at(j, "kind", path);
    return at_field(path, [&] {
        if (kind == "constant") return RelaxationSchedule::constant(number_at(j, "alpha", path));
        if (kind == "harmonic") return RelaxationSchedule::harmonic(number_at(j, "alpha", path));
        if (kind == "list") return RelaxationSchedule::explicit_list(numbers_at(j, "values", path));
        fail(child(path, "kind"), "unknown schedule kind '" + kind + "'");
    });
}

QuadraticSmooth parse_smooth(const json& j, std::size_t dim, const std::string& path) {
    QuadraticSmooth s{numbers_at(j, "center", path), number_or(j, "weight", 1.0, path)};
    check_dim(dim, s.center.size(), child(path, "center"));
    if (!(s.weight > 0.0)) fail(child(path, "weight"), "must be > 0");
    return s;
}

Classification parse_classification(const json& j, const std::string& path) {
    const std::string kind = text_at(j, "kind", path);
    return at_field(path, [&] {
        if (kind == "general") return Classification::general();
        if (kind == "strong-contraction") return Classification::strong_contraction(number_at(j, "c", path));
        if (kind == "weak-contraction") return Classification::weak_contraction();
        if (kind == "nonexpansive") return Classification::nonexpansive();
        fail(child(path, "kind"), "unknown classification '" + kind + "'");
    });
}

MapSpec parse_map(const json& j, std::size_t dim, const std::string& path) {
    const std::string kind = text_at(j, "kind", path);
    MapSpec map = at_field(path, [&]() -> MapSpec {
        if (kind == "affine") {
            const json& m = require(j, "matrix", path);
            if (!m.is_array() || m.size() != dim) fail(child(path, "matrix"), "expected " + std::to_string(dim) + " rows");
            std::vector<double> flat;
            for (std::size_t r = 0; r < m.size(); ++r) {
                auto row = numbers(m[r], child(path, "matrix") + "[" + std::to_string(r) + "]");
                check_dim(dim, row.size(), child(path, "matrix") + "[" + std::to_string(r) + "]");
                flat.insert(flat.end(), row.begin(), row.end());
            }
            auto offset = numbers_at(j, "offset", path);
            check_dim(dim, offset.size(), child(path, "offset"));
            return MapSpec::affine(dim, std::move(flat), std::move(offset));
        }
        if (kind == "identity") return MapSpec::identity(dim);
        if (kind == "rotation") {
            check_dim(2, dim, path);
            return MapSpec::rotation(number_at(j, "angle", path));
        }
        if (kind == "scalar") {
            const std::string family = text_at(j, "family", path);
            if (family == "half") return MapSpec::half();
            if (family == "shift") return MapSpec::shift(number_or(j, "param", 1.0, path));
            if (family == "hypot") return MapSpec::hypot();
            if (family == "scale") return MapSpec::scale(number_at(j, "param", path));
            fail(child(path, "family"), "unknown scalar family '" + family + "'");
        }
        if (kind == "composition") {
            const json& st = require(j, "stages", path);
            if (!st.is_array()) fail(child(path, "stages"), "expected an array of maps");
            std::vector<MapSpec> stages;
            for (std::size_t i = 0; i < st.size(); ++i)
                stages.push_back(parse_map(st[i], dim, child(path, "stages") + "[" + std::to_string(i) + "]"));
            return MapSpec::composition(std::move(stages));
        }
        if (kind == "km")
            return MapSpec::km(parse_map(require(j, "inner", path), dim, child(path, "inner")),
                               parse_schedule(require(j, "schedule", path), child(path, "schedule")));
        if (kind == "projection") return MapSpec::projection(parse_set(require(j, "set", path), dim, child(path, "set")));
        if (kind == "prox")
            return MapSpec::prox(parse_prox(require(j, "prox", path), dim, child(path, "prox")),
                                 number_at(j, "lambda", path));
        if (kind == "forward-backward")
            return MapSpec::forward_backward(parse_smooth(require(j, "smooth", path), dim, child(path, "smooth")),
                                             parse_prox(require(j, "g", path), dim, child(path, "g")),
                                             number_at(j, "step", path));
        if (kind == "douglas-rachford")
            return MapSpec::douglas_rachford(parse_prox(require(j, "a", path), dim, child(path, "a")),
                                             parse_prox(require(j, "b", path), dim, child(path, "b")),
                                             number_at(j, "lambda", path));
        fail(child(path, "kind"), "unknown map kind '" + kind + "'");
    });
    if (map.dim()) check_dim(dim, *map.dim(), path);
    if (auto it = j.find("classification"); it != j.end())
        map = map.with_classification(parse_classification(*it, child(path, "classification")));
    return map;
}

Algorithm parse_algorithm(const json& j, std::size_t dim, const std::string& path) {
    const std::string name = text_at(j, "scheme", path);
    if (name == "iterate") return scheme::Iterate{parse_map(require(j, "map", path), dim, child(path, "map"))};
    if (name == "contraction") {
        MapSpec m = parse_map(require(j, "map", path), dim, child(path, "map"));
        if (m.classification().kind != Classification::Kind::strong_contraction)
            fail(child(path, "map.classification"), "contraction scheme needs a strong-contraction(c) declaration");
        return scheme::Contraction{std::move(m)};
    }
    if (name == "km")
        return scheme::KrasnoselskiiMann{parse_map(require(j, "operator", path), dim, child(path, "operator")),
                                         parse_schedule(require(j, "schedule", path), child(path, "schedule"))};
    if (name == "alternating-projections")
        return scheme::AlternatingProjections{parse_set(require(j, "a", path), dim, child(path, "a")),
                                              parse_set(require(j, "b", path), dim, child(path, "b"))};
    if (name == "proximal-point") {
        const double lambda = number_at(j, "lambda", path);
        if (!(lambda > 0.0)) fail(child(path, "lambda"), "must be > 0");
        return scheme::ProximalPoint{parse_prox(require(j, "prox", path), dim, child(path, "prox")), lambda};
    }
    if (name == "forward-backward") {
        const double step = number_at(j, "step", path);
        if (!(step > 0.0)) fail(child(path, "step"), "must be > 0");
        return scheme::ForwardBackward{parse_smooth(require(j, "smooth", path), dim, child(path, "smooth")),
                                       parse_prox(require(j, "g", path), dim, child(path, "g")), step};
    }
    if (name == "douglas-rachford") {
        const double lambda = number_at(j, "lambda", path);
        if (!(lambda > 0.0)) fail(child(path, "lambda"), "must be > 0");
        return scheme::DouglasRachford{parse_prox(require(j, "a", path), dim, child(path, "a")),
                                       parse_prox(require(j, "b", path), dim, child(path, "b")), lambda};
    }
    fail(child(path, "scheme"), "unknown scheme '" + name + "'");
}

void parse_options(const json& j, RunOptions& run, CertifyPolicy& policy, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    run.max_iters = count_or(j, "max_iters", run.max_iters, path);
    run.residual_tol = number_or(j, "residual_tol", run.residual_tol, path);
    run.displacement_budget = number_or(j, "displacement_budget", run.displacement_budget, path);
    run.thin_after = count_or(j, "thin_after", run.thin_after, path);
    run.thin_stride = count_or(j, "thinning_stride", run.thin_stride, path);
    policy.ratio_window = count_or(j, "ratio_window", policy.ratio_window, path);
    policy.ratio_ceiling = number_or(j, "ratio_ceiling", policy.ratio_ceiling, path);
    policy.residual_tol = run.residual_tol;
    at_field(path, [&] {
        run.validate();
        policy.validate();
        return 0;
    });
}

double tolerance_for(const json& j, std::string_view key, const std::string& path) {
    const std::string tkey = std::string(key) + "_tol";
    const double t = number_at(j, tkey, path);
    if (!(t >= 0.0)) fail(child(path, tkey), "tolerance must be >= 0");
    return t;
}

Expected parse_expected(const json& j, std::size_t dim, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    Expected e;
    if (j.contains("verdict")) {
        const std::string v = text_at(j, "verdict", path);
        e.verdict = at_field(child(path, "verdict"), [&] { return verdict_from_string(v); });
    }
    if (j.contains("fixed_point")) {
        e.fixed_point = point_at(j, "fixed_point", dim, path);
        e.fixed_point_tol = tolerance_for(j, "fixed_point", path);
    }
    if (j.contains("total_displacement")) {
        e.total_displacement = number_at(j, "total_displacement", path);
        e.total_displacement_tol = tolerance_for(j, "total_displacement", path);
    }
    if (j.contains("ratio")) {
        e.ratio = number_at(j, "ratio", path);
        e.ratio_tol = tolerance_for(j, "ratio", path);
    }
    if (j.contains("caristi_holds")) {
        if (!j["caristi_holds"].is_boolean()) fail(child(path, "caristi_holds"), "expected a boolean");
        e.caristi_holds = j["caristi_holds"].get<bool>();
    }
    if (j.contains("shadow_point")) {
        e.shadow_point = point_at(j, "shadow_point", dim, path);
        e.shadow_point_tol = tolerance_for(j, "shadow_point", path);
    }
    return e;
}

std::optional<MapSpec> step_map_of(const Algorithm& algo) {
    return std::visit(
        overloaded{
            [](const scheme::Iterate& s) -> std::optional<MapSpec> { return s.map; },
            [](const scheme::Contraction& s) -> std::optional<MapSpec> { return s.map; },
            [](const scheme::KrasnoselskiiMann& s) -> std::optional<MapSpec> {
                if (s.schedule.kind() != RelaxationSchedule::Kind::constant) return std::nullopt;
                return MapSpec::km(s.op, s.schedule);
            },
            [](const scheme::AlternatingProjections&) -> std::optional<MapSpec> { return std::nullopt; },
            [](const scheme::ProximalPoint& s) -> std::optional<MapSpec> { return MapSpec::prox(s.prox, s.lambda); },
            [](const scheme::ForwardBackward& s) -> std::optional<MapSpec> {
                return MapSpec::forward_backward(s.smooth, s.g, s.step);
            },
            [](const scheme::DouglasRachford& s) -> std::optional<MapSpec> {
                return MapSpec::douglas_rachford(s.a, s.b, s.lambda);
            },
        },
        algo);
}

PotentialConfig parse_potential(const json& j, const ProblemConfig& partial, const std::string& path) {
    const std::string kind = text_at(j, "kind", path);
    const std::size_t dim = partial.dimension;
    const double m = number_at(j, "lower_bound", path);
    Point witness = j.contains("witness") ? point_at(j, "witness", dim, path) : partial.x0;

    PotentialSpec::Form form = at_field(path, [&]() -> PotentialSpec::Form {
        if (kind == "linear-scalar") {
            check_dim(1, dim, path);
            return LinearScalarPotential{number_at(j, "slope", path)};
        }
        if (kind == "scaled-distance")
            return ScaledDistancePotential{point_at(j, "target", dim, path), number_or(j, "scale", 1.0, path),
                                           partial.metric};
        if (kind == "orbit-potential") {
            auto map = step_map_of(partial.algorithm);
            if (!map) fail(path, "orbit potential needs an autonomous step map");
            Truncation t;
            t.max_terms = count_or(j, "max_terms", t.max_terms, path);
            t.term_tol = number_or(j, "term_tol", t.term_tol, path);
            return OrbitPotentialRef{*map, partial.metric, t};
        }
        if (kind == "table") {
            const json& entries = require(j, "entries", path);
            if (!entries.is_array()) fail(child(path, "entries"), "expected an array");
            TablePotential tab;
            for (std::size_t i = 0; i < entries.size(); ++i) {
                const std::string ep = child(path, "entries") + "[" + std::to_string(i) + "]";
                tab.entries.emplace_back(point_at(entries[i], "point", dim, ep), number_at(entries[i], "value", ep));
            }
            return tab;
        }
        fail(child(path, "kind"), "unknown potential kind '" + kind + "'");
    });

    PotentialConfig pc{at_field(path, [&] { return PotentialSpec(std::move(form), m, witness); }),
                       count_or(j, "steps", 50, path), number_or(j, "tol", 1e-12, path)};
    if (pc.steps < 1) fail(child(path, "steps"), "must be >= 1");
    if (!(pc.tol >= 0.0)) fail(child(path, "tol"), "must be >= 0");
    return pc;
}

}  // namespace

std::string_view scheme_name(const Algorithm& algo) {
    return std::visit(overloaded{
                          [](const scheme::Iterate&) { return std::string_view("iterate"); },
                          [](const scheme::Contraction&) { return std::string_view("contraction"); },
                          [](const scheme::KrasnoselskiiMann&) { return std::string_view("km"); },
                          [](const scheme::AlternatingProjections&) {
                              return std::string_view("alternating-projections");
                          },
                          [](const scheme::ProximalPoint&) { return std::string_view("proximal-point"); },
                          [](const scheme::ForwardBackward&) { return std::string_view("forward-backward"); },
                          [](const scheme::DouglasRachford&) { return std::string_view("douglas-rachford"); },
                      },
                      algo);
}

ProblemConfig load_problem_json(const json& doc) {
    if (!doc.is_object()) throw ConfigError("problem config must be a JSON object");
    const std::string root;

    std::string name = text_at(doc, "name", root);
    if (name.empty()) fail("name", "must be nonempty");
    const json& dj = require(doc, "dimension", root);
    if (!dj.is_number_integer() || dj.get<long long>() < 1) fail("dimension", "must be a positive integer");
    const auto dim = dj.get<std::size_t>();

    MetricSpec metric = doc.contains("metric") ? parse_metric(doc["metric"], dim, "metric") : MetricSpec{};

    if (doc.contains("map") == doc.contains("algorithm"))
        fail("map", "exactly one of 'map' or 'algorithm' must be present");
    Algorithm algo = doc.contains("map") ? Algorithm(scheme::Iterate{parse_map(doc["map"], dim, "map")})
                                         : parse_algorithm(doc["algorithm"], dim, "algorithm");

    Point x0 = point_at(doc, "x0", dim, root);

    ProblemConfig cfg{std::move(name), dim, std::move(metric), std::move(algo), std::move(x0),
                      std::nullopt, RunOptions{}, CertifyPolicy{}, Expected{}, doc};
    if (doc.contains("options")) parse_options(doc["options"], cfg.run, cfg.policy, "options");
    if (doc.contains("potential")) cfg.potential = parse_potential(doc["potential"], cfg, "potential");
    if (doc.contains("expected")) cfg.expected = parse_expected(doc["expected"], dim, "expected");
    return cfg;
}

ProblemConfig load_problem_text(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        // locate the byte offset as line:column
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ConfigError("config parse error at line " + std::to_string(line) + ", column " +
                          std::to_string(col) + ": " + e.what());
    }
    return load_problem_json(doc);
}

ProblemConfig load_problem(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return load_problem_text(ss.str());
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

bool is_batch(const json& doc) { return doc.is_object() && doc.contains("batch"); }

std::vector<std::filesystem::path> load_batch(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read batch file '" + path.string() + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    if (!is_batch(doc) || !doc["batch"].is_array()) fail("batch", "expected an array of config paths");
    std::vector<std::filesystem::path> out;
    for (const auto& p : doc["batch"]) {
        if (!p.is_string()) fail("batch", "entries must be strings");
        std::filesystem::path entry = p.get<std::string>();
        out.push_back(entry.is_absolute() ? entry : path.parent_path() / entry);
    }
    return out;
}

std::optional<MapSpec> step_map(const ProblemConfig& cfg) { return step_map_of(cfg.algorithm); }

ResidualFn fixed_point_residual_fn(const ProblemConfig& cfg) {
    const MetricSpec metric = cfg.metric;
    return std::visit(
        overloaded{
            [&](const scheme::KrasnoselskiiMann& s) -> ResidualFn {
                return [op = s.op, metric](const Point& p) { return fixed_point_residual(op, metric, p); };
            },
            [&](const scheme::AlternatingProjections& s) -> ResidualFn {
                return [a = s.a, b = s.b, metric](const Point& p) {
                    return std::max(distance(metric, p, project(a, p)), distance(metric, p, project(b, p)));
                };
            },
            [&](const auto&) -> ResidualFn {
                return [map = *step_map_of(cfg.algorithm), metric](const Point& p) {
                    return fixed_point_residual(map, metric, p);
                };
            },
        },
        cfg.algorithm);
}

}  // namespace orbitsum::harness
