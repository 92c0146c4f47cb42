#include "orbitsum/harness/trace_io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <system_error>

#include "orbitsum/error.hpp"

namespace orbitsum::harness {

namespace {

constexpr std::string_view kHeader = "n,gap,partial_sum,ratio,residual";

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(std::string_view cell, std::size_t line) {
    const std::string s(cell);
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE)
        throw ConfigError("trace csv line " + std::to_string(line) + ": bad number '" + s + "'");
    return v;
}

}  // namespace

TraceFormat trace_format_from_string(std::string_view s) {
    if (s == "csv") return TraceFormat::csv;
    if (s == "json") return TraceFormat::json;
    throw ConfigError("unknown trace format '" + std::string(s) + "' (expected csv or json)");
}

TraceColumns columns_of(const OrbitTrace& trace) {
    TraceColumns c;
    for (std::size_t i = 0; i < trace.gaps.size(); ++i) {
        c.n.push_back(i);
        c.gap.push_back(trace.gaps[i]);
        c.partial_sum.push_back(trace.partial_sums[i]);
        c.ratio.push_back(i < trace.ratios.size() ? trace.ratios[i] : std::nullopt);
        c.residual.push_back(trace.residuals[i]);
    }
    return c;
}

std::string trace_to_csv(const OrbitTrace& trace) {
    const TraceColumns c = columns_of(trace);
    std::string out(kHeader);
    out += '\n';
    for (std::size_t i = 0; i < c.n.size(); ++i) {
        out += std::to_string(c.n[i]);
        out += ',' + g17(c.gap[i]);
        out += ',' + g17(c.partial_sum[i]);
        out += ',';
        if (c.ratio[i]) out += g17(*c.ratio[i]);
        out += ',' + g17(c.residual[i]);
        out += '\n';
    }
    return out;
}

TraceColumns trace_from_csv(std::string_view text) {
    TraceColumns c;
    std::size_t pos = 0, line = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view row = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line;
        if (!row.empty() && row.back() == '\r') row.remove_suffix(1);
        if (line == 1) {
            if (row != kHeader) throw ConfigError("trace csv: unexpected header '" + std::string(row) + "'");
            continue;
        }
        if (row.empty()) continue;

        std::vector<std::string_view> cells;
        std::size_t start = 0;
        for (;;) {
            const std::size_t comma = row.find(',', start);
            cells.push_back(row.substr(start, comma == std::string_view::npos ? row.size() - start : comma - start));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        if (cells.size() != 5)
            throw ConfigError("trace csv line " + std::to_string(line) + ": expected 5 cells");
        c.n.push_back(static_cast<std::size_t>(parse_double(cells[0], line)));
        c.gap.push_back(parse_double(cells[1], line));
        c.partial_sum.push_back(parse_double(cells[2], line));
        c.ratio.push_back(cells[3].empty() ? std::nullopt : std::optional<double>(parse_double(cells[3], line)));
        c.residual.push_back(parse_double(cells[4], line));
    }
    return c;
}

nlohmann::json trace_to_json(const OrbitTrace& trace) {
    const TraceColumns c = columns_of(trace);
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < c.n.size(); ++i) {
        rows.push_back({{"n", c.n[i]},
                        {"gap", c.gap[i]},
                        {"partial_sum", c.partial_sum[i]},
                        {"ratio", c.ratio[i] ? nlohmann::json(*c.ratio[i]) : nlohmann::json(nullptr)},
                        {"residual", c.residual[i]}});
    }
    return {{"terminated_reason", std::string(to_string(trace.reason))}, {"rows", rows}};
}

TraceColumns trace_from_json(const nlohmann::json& doc) {
    TraceColumns c;
    for (const auto& r : doc.at("rows")) {
        c.n.push_back(r.at("n").get<std::size_t>());
        c.gap.push_back(r.at("gap").get<double>());
        c.partial_sum.push_back(r.at("partial_sum").get<double>());
        c.ratio.push_back(r.at("ratio").is_null() ? std::nullopt
                                                  : std::optional<double>(r.at("ratio").get<double>()));
        c.residual.push_back(r.at("residual").get<double>());
    }
    return c;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open '" + tmp.string() + "' for writing");
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        out.flush();
        if (!out) throw Error("write failed for '" + tmp.string() + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw Error("cannot move trace into place at '" + path.string() + "'");
    }
}

void emit_trace(const OrbitTrace& trace, const std::filesystem::path& path, TraceFormat format) {
    if (format == TraceFormat::csv)
        write_file_atomic(path, trace_to_csv(trace));
    else
        write_file_atomic(path, trace_to_json(trace).dump(2) + "\n");
}

}  // namespace orbitsum::harness
