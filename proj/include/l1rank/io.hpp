#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "l1rank/model.hpp"
#include "l1rank/report.hpp"
#include "l1rank/sketch.hpp"

namespace l1rank {

using Json = nlohmann::ordered_json;

// Instance file:
//   {"m": .., "n": .., "k": .., "vectors": ["0101", ...],
//    "relations": [["00", "01"], ...],
//    "partition": [1, 2, ...],    optional, cluster labels 1..k
//    "offsets": [0, 3, ...],      optional
//    "provenance": {...}}         optional, free-form
// Fields are written in this order; unknown fields are rejected.
struct InstanceDocument {
  KCenterPtr instance;
  std::optional<Partition> partition;  // 0-based in memory
  std::optional<std::vector<std::size_t>> offsets;
  std::optional<Json> provenance;
};

InstanceDocument parse_instance_json(const std::string& text);
InstanceDocument read_instance_file(const std::string& path);

Json instance_to_json(const KCenterInstance& inst, const Partition* partition = nullptr,
                      const std::vector<std::size_t>* offsets = nullptr,
                      const Json* provenance = nullptr);

// Two-space indented text with a trailing newline.
std::string dump_json(const Json& j);

// wall_ms is included only when `timing` is set, so untimed reports are
// byte-reproducible.
Json report_to_json(const SolveReport& report, bool timing = false);

// Reads the "centers" array of a report or any object carrying one.
CenterTuple centers_from_json(const Json& j);

Json family_to_json(const PartitionFamily& family);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace l1rank
