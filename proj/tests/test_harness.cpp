#include <doctest.h>

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "orbitsum/error.hpp"
#include "orbitsum/harness/config.hpp"
#include "orbitsum/harness/registry.hpp"
#include "orbitsum/harness/runner.hpp"
#include "orbitsum/harness/trace_io.hpp"

using namespace orbitsum;
using namespace orbitsum::harness;
namespace fs = std::filesystem;

namespace {

const char* kHalf = R"({
  "name": "half",
  "dimension": 1,
  "map": {"kind": "scalar", "family": "half"},
  "x0": [1.0]
})";

std::string error_of(std::string_view text) {
    try {
        load_problem_text(text);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return {};
}

std::string with(std::string text, const std::string& from, const std::string& to) {
    const auto pos = text.find(from);
    REQUIRE(pos != std::string::npos);
    return text.replace(pos, from.size(), to);
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("config: a minimal problem loads with defaults") {
    const auto cfg = load_problem_text(kHalf);
    CHECK(cfg.name == "half");
    CHECK(cfg.metric.kind() == MetricKind::euclidean);
    CHECK(scheme_name(cfg.algorithm) == "iterate");
    CHECK(cfg.run.max_iters == 100000);
    CHECK(cfg.run.residual_tol == 1e-10);
    CHECK(cfg.run.displacement_budget == 1e6);
    CHECK(cfg.policy.ratio_window == 8);
    CHECK(cfg.policy.ratio_ceiling == 0.999);
    CHECK(cfg.expected.empty());
}

TEST_CASE("config: errors name the offending field") {
    const std::string contraction = R"({
  "name": "c", "dimension": 1,
  "algorithm": {"scheme": "contraction",
                "map": {"kind": "scalar", "family": "half",
                        "classification": {"kind": "strong-contraction", "c": 1.0}}},
  "x0": [1.0]
})";
    const auto e1 = error_of(contraction);
    CHECK(e1.find("classification") != std::string::npos);
    CHECK(e1.find("[0, 1)") != std::string::npos);

    const auto e2 = error_of(with(kHalf, "[1.0]", "[1.0, 2.0]"));
    CHECK(e2.find("x0") != std::string::npos);
    CHECK(e2.find("dimension") != std::string::npos);

    const auto e3 = error_of("{\n  \"name\": \"x\",\n  \"dimension\": 1\n  \"x0\": [1]\n}");
    CHECK(e3.find("line 4") != std::string::npos);

    CHECK(error_of(with(kHalf, "\"half\"}", "\"quarter\"}")).find("map.family") != std::string::npos);
    CHECK(error_of(with(kHalf, "\"dimension\": 1", "\"dimension\": 0")).find("dimension") != std::string::npos);
    CHECK_FALSE(error_of(R"({"name": "x", "dimension": 1, "x0": [1]})").empty());
    CHECK_FALSE(error_of(with(kHalf, "\"x0\": [1.0]",
                              "\"x0\": [1.0], \"expected\": {\"total_displacement\": 1.0}"))
                     .empty());
    CHECK_FALSE(error_of(with(kHalf, "\"x0\": [1.0]", "\"x0\": [1.0], \"options\": {\"residual_tol\": 0}")).empty());
}

TEST_CASE("registry: names are unique and every fixture meets its baseline") {
    std::set<std::string> names;
    for (const auto& f : fixtures()) {
        CHECK(names.insert(f.name).second);
        const auto cfg = load_problem_text(f.text);
        CHECK(cfg.name == f.name);
        CHECK_FALSE(cfg.expected.empty());
        const auto rep = run_problem(cfg);
        CAPTURE(f.name);
        for (const auto& m : rep.mismatches) CAPTURE(m);
        CHECK(rep.passed());
    }
    CHECK(names.size() >= 12);
    CHECK(find_fixture("banach-half") != nullptr);
    CHECK(find_fixture("nope") == nullptr);
}

TEST_CASE("runner: repeated runs are bitwise identical") {
    for (const auto& cfg : registry()) {
        const auto a = run_problem(cfg);
        const auto b = run_problem(cfg);
        const auto ca = columns_of(a.trace), cb = columns_of(b.trace);
        REQUIRE(ca.gap.size() == cb.gap.size());
        for (std::size_t i = 0; i < ca.gap.size(); ++i) {
            REQUIRE(same_bits(ca.gap[i], cb.gap[i]));
            REQUIRE(same_bits(ca.partial_sum[i], cb.partial_sum[i]));
            REQUIRE(same_bits(ca.residual[i], cb.residual[i]));
            REQUIRE(ca.ratio[i].has_value() == cb.ratio[i].has_value());
            if (ca.ratio[i]) REQUIRE(same_bits(*ca.ratio[i], *cb.ratio[i]));
        }
        CHECK(trace_to_csv(a.trace) == trace_to_csv(b.trace));
    }
}

TEST_CASE("runner: a perturbed expectation is reported") {
    auto cfg = load_problem_text(find_fixture("banach-half")->text);
    cfg.expected.total_displacement = 1.0 + 2e-10;
    auto rep = run_problem(cfg);
    CHECK_FALSE(rep.passed());
    REQUIRE(rep.mismatches.size() == 1);
    CHECK(rep.mismatches[0].find("total_displacement") != std::string::npos);

    cfg.expected.total_displacement = 1.0 + 0.2e-10;
    CHECK(run_problem(cfg).passed());

    cfg.expected.verdict = Verdict::divergent;
    CHECK_FALSE(run_problem(cfg).passed());
}

TEST_CASE("runner: errors carry the problem name") {
    const auto cfg = load_problem_text(with(kHalf, "\"family\": \"half\"", "\"family\": \"scale\", \"param\": 1e200"));
    try {
        const auto rep = run_problem(cfg);
        CHECK(rep.trace.reason == TerminationReason::numeric_overflow);
        CHECK(rep.certificate.verdict != Verdict::converged);
    } catch (const NumericError& e) {
        CHECK(std::string(e.what()).find("half") != std::string::npos);
    }
}

TEST_CASE("runner: Caristi block and report rendering") {
    const auto rep = run_problem(load_problem_text(find_fixture("caristi-half-linear")->text));
    REQUIRE(rep.caristi.has_value());
    CHECK(rep.caristi->holds);
    const auto j = report_to_json(rep);
    CHECK(j.at("certificate").at("verdict") == "CONVERGED");
    CHECK(j.at("caristi").at("holds") == true);
    CHECK(report_to_text(rep).find("caristi-half-linear") != std::string::npos);
}

TEST_CASE("trace CSV layout") {
    RunOptions o;
    o.max_iters = 3;
    o.residual_tol = 1e-300;
    const auto t = run_orbit(MapSpec::half(), MetricSpec{}, Point{1.0}, o);
    const std::string csv = trace_to_csv(t);
    std::istringstream in(csv);
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(in, line)) lines.push_back(line);
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] == "n,gap,partial_sum,ratio,residual");
    CHECK(lines[1] == "0,0.5,0.5,0.5,0.5");
    CHECK(lines[3] == "2,0.125,0.875,,0.125");

    // ratio cell stays empty after a zero gap
    const auto c = run_orbit(MapSpec::affine(1, {0.0}, {2.0}), MetricSpec{}, Point{0.0}, RunOptions{});
    const std::string csv2 = trace_to_csv(c);
    CHECK(csv2.find("\n1,0,2,,0\n") != std::string::npos);
}

TEST_CASE("trace CSV and JSON round trips preserve every bit") {
    for (const char* name : {"affine-contraction-2d", "km-rotation-quarter", "hypot-drift", "altproj-lines-45"}) {
        const auto rep = run_problem(load_problem_text(find_fixture(name)->text));
        const auto cols = columns_of(rep.trace);
        for (const auto& back : {trace_from_csv(trace_to_csv(rep.trace)), trace_from_json(trace_to_json(rep.trace))}) {
            REQUIRE(back.n == cols.n);
            REQUIRE(back.gap.size() == cols.gap.size());
            for (std::size_t i = 0; i < cols.gap.size(); ++i) {
                REQUIRE(same_bits(back.gap[i], cols.gap[i]));
                REQUIRE(same_bits(back.partial_sum[i], cols.partial_sum[i]));
                REQUIRE(same_bits(back.residual[i], cols.residual[i]));
                REQUIRE(back.ratio[i].has_value() == cols.ratio[i].has_value());
                if (cols.ratio[i]) REQUIRE(same_bits(*back.ratio[i], *cols.ratio[i]));
            }
        }
    }
    CHECK_THROWS_AS(trace_from_csv("n,gap\n0,1\n"), ConfigError);
}

TEST_CASE("emit_trace writes atomically to disk") {
    const fs::path dir = fs::temp_directory_path() / "orbitsum_harness_test";
    fs::create_directories(dir);
    const auto rep = run_problem(load_problem_text(find_fixture("banach-half")->text));
    emit_trace(rep.trace, dir / "t.csv", TraceFormat::csv);
    emit_trace(rep.trace, dir / "t.json", TraceFormat::json);
    std::ifstream in(dir / "t.csv");
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == trace_to_csv(rep.trace));
    std::size_t leftovers = 0;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.path().filename().string().find(".tmp") != std::string::npos) ++leftovers;
    CHECK(leftovers == 0);
    fs::remove_all(dir);
}

TEST_CASE("batch files resolve relative to themselves") {
    const fs::path dir = fs::temp_directory_path() / "orbitsum_batch_test";
    fs::create_directories(dir / "sub");
    std::ofstream(dir / "sub" / "half.json") << kHalf;
    std::ofstream(dir / "batch.json") << R"({"batch": ["sub/half.json"]})";
    const auto paths = load_batch(dir / "batch.json");
    REQUIRE(paths.size() == 1);
    CHECK(load_problem(paths[0]).name == "half");
    fs::remove_all(dir);
}
