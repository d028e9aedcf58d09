#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "perctrunc/estimate.hpp"

namespace perctrunc {

inline constexpr const char* kSchemaVersion = "1";

// Result payload for an estimate; wall time lives in record meta, not here,
// so the payload is byte-reproducible.
nlohmann::json estimate_to_json(const EstimateResult& est);

// {schema_version, config, result, meta}; config+result are the reproducible
// payload, meta carries timestamp/wall-time/thread-count.
nlohmann::json make_record(nlohmann::json config, nlohmann::json result, double wall_ms = 0.0);

// The reproducible part of a record, serialized.
std::string payload_string(const nlohmann::json& record);

void write_json_file(const std::string& path, const nlohmann::json& j);

struct SweepRow {
  double axis_value = 0.0;
  EstimateResult est;
};

// Sweep axes over K, H or L (and box-crossing ph) must be strictly increasing.
void validate_axis(const std::string& axis, const std::vector<double>& values);

void write_sweep_csv(const std::string& path, const std::string& axis,
                     const std::vector<SweepRow>& rows);

// Static SVG line chart (estimate vs axis with CI whiskers); no external
// resources referenced.
std::string render_sweep_svg(const std::string& csv_text);

void emit_plot(const std::string& csv_path, const std::string& svg_path);

}  // namespace perctrunc
