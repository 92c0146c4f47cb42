// orbitsum: run, verify and list orbit-summability problems.
//
// Exit codes: 0 pass, 1 expectation mismatch, 2 configuration error,
// 3 runtime/numeric error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "orbitsum/error.hpp"
#include "orbitsum/harness/config.hpp"
#include "orbitsum/harness/registry.hpp"
#include "orbitsum/harness/runner.hpp"
#include "orbitsum/harness/trace_io.hpp"

namespace fs = std::filesystem;
using namespace orbitsum;
using namespace orbitsum::harness;

namespace {

enum Exit { kPass = 0, kMismatch = 1, kConfig = 2, kRuntime = 3 };

// A path on disk, a batch file, or the name of a built-in fixture.
std::vector<ProblemConfig> resolve(const std::string& arg) {
    if (fs::exists(arg)) {
        std::ifstream in(arg);
        std::stringstream ss;
        ss << in.rdbuf();
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(ss.str());
        } catch (const nlohmann::json::parse_error&) {
            return {load_problem(arg)};  // reports line/column
        }
        if (is_batch(doc)) {
            std::vector<ProblemConfig> out;
            for (const auto& p : load_batch(arg)) out.push_back(load_problem(p));
            return out;
        }
        try {
            return {load_problem_json(doc)};
        } catch (const ConfigError& e) {
            throw ConfigError(arg + ": " + e.what());
        }
    }
    if (const Fixture* f = find_fixture(arg)) return {load_problem_text(f->text)};
    throw ConfigError("'" + arg + "' is neither a config file nor a built-in problem (see `orbitsum list`)");
}

void write_outputs(const RunReport& rep, const std::string& out_dir, TraceFormat fmt) {
    if (out_dir.empty()) return;
    fs::create_directories(out_dir);
    const fs::path base = fs::path(out_dir) / rep.name;
    emit_trace(rep.trace, base.string() + (fmt == TraceFormat::csv ? ".trace.csv" : ".trace.json"), fmt);
    write_file_atomic(base.string() + ".report.json", report_to_json(rep).dump(2) + "\n");
}

int run_all(const std::vector<ProblemConfig>& problems, const std::string& out_dir, TraceFormat fmt,
            bool gate) {
    int code = kPass;
    for (const auto& cfg : problems) {
        const RunReport rep = run_problem(cfg);
        std::cout << report_to_text(rep) << "\n";
        write_outputs(rep, out_dir, fmt);
        if (rep.trace.reason == TerminationReason::numeric_overflow) {
            std::cerr << "runtime error: " << rep.name << ": " << rep.trace.failure << "\n";
            code = kRuntime;
        } else if (gate && !rep.passed() && code == kPass) {
            code = kMismatch;
        }
    }
    return code;
}

int suite(const std::string& out_dir, TraceFormat fmt) {
    const auto problems = registry();
    std::vector<std::future<RunReport>> jobs;
    for (const auto& cfg : problems)
        jobs.push_back(std::async(std::launch::async, [&cfg] { return run_problem(cfg); }));

    int code = kPass;
    std::size_t failed = 0;
    for (auto& j : jobs) {
        const RunReport rep = j.get();
        std::printf("%-28s %-13s %s\n", rep.name.c_str(), std::string(to_string(rep.certificate.verdict)).c_str(),
                    rep.passed() ? "pass" : "FAIL");
        for (const auto& m : rep.mismatches) std::printf("    %s\n", m.c_str());
        write_outputs(rep, out_dir, fmt);
        if (!rep.passed()) {
            code = kMismatch;
            ++failed;
        }
    }
    std::printf("%zu/%zu fixtures passed\n", problems.size() - failed, problems.size());
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Orbit-summability fixed-point certification"};
    app.require_subcommand(1);

    std::string config, out_dir, format = "csv", name;

    auto* run = app.add_subcommand("run", "Run a problem and print its certificate");
    run->add_option("config", config, "Config file, batch file, or built-in problem name")->required();
    run->add_option("--out", out_dir, "Directory for trace and report files");
    run->add_option("--format", format, "Trace format")->check(CLI::IsMember({"csv", "json"}));

    auto* verify = app.add_subcommand("verify", "Run and compare against the config's expected block");
    verify->add_option("config", config, "Config file, batch file, or built-in problem name")->required();
    verify->add_option("--out", out_dir, "Directory for trace and report files");
    verify->add_option("--format", format, "Trace format")->check(CLI::IsMember({"csv", "json"}));

    auto* list = app.add_subcommand("list", "List built-in problems");

    auto* show = app.add_subcommand("show", "Print the config of a built-in problem");
    show->add_option("name", name, "Problem name")->required();

    auto* suite_cmd = app.add_subcommand("suite", "Verify every built-in problem");
    suite_cmd->add_option("--out", out_dir, "Directory for trace and report files");
    suite_cmd->add_option("--format", format, "Trace format")->check(CLI::IsMember({"csv", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kPass : kConfig;
    }

    try {
        const TraceFormat fmt = trace_format_from_string(format);
        if (*run) return run_all(resolve(config), out_dir, fmt, false);
        if (*verify) return run_all(resolve(config), out_dir, fmt, true);
        if (*suite_cmd) return suite(out_dir, fmt);
        if (*list) {
            for (const auto& f : fixtures()) std::printf("%-28s %s\n", f.name.c_str(), f.summary.c_str());
            return kPass;
        }
        if (*show) {
            const Fixture* f = find_fixture(name);
            if (!f) throw ConfigError("no built-in problem named '" + name + "'");
            std::cout << f->text << "\n";
            return kPass;
        }
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kConfig;
    } catch (const Error& e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return kRuntime;
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return kRuntime;
    }
    return kPass;
}
