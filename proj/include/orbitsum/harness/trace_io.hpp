#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "orbitsum/orbit.hpp"

namespace orbitsum::harness {

enum class TraceFormat { csv, json };

/// Throws ConfigError for anything but "csv" or "json".
TraceFormat trace_format_from_string(std::string_view s);

/// Numeric columns of an exported trace, one entry per step.
struct TraceColumns {
    std::vector<std::size_t> n;
    std::vector<double> gap;
    std::vector<double> partial_sum;
    std::vector<std::optional<double>> ratio;
    std::vector<double> residual;
};

TraceColumns columns_of(const OrbitTrace& trace);

/// Header `n,gap,partial_sum,ratio,residual`, values at 17 significant digits,
/// empty ratio cell where the ratio is undefined.
std::string trace_to_csv(const OrbitTrace& trace);
TraceColumns trace_from_csv(std::string_view text);

/// Same columns as rows of objects; undefined ratios are null.
nlohmann::json trace_to_json(const OrbitTrace& trace);
TraceColumns trace_from_json(const nlohmann::json& doc);

/// Writes to a temporary sibling and renames it into place. Throws Error
/// naming the path on I/O failure.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

void emit_trace(const OrbitTrace& trace, const std::filesystem::path& path, TraceFormat format);

}  // namespace orbitsum::harness
