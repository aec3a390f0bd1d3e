#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "doeforge/core.hpp"
#include "doeforge/io.hpp"

namespace doeforge {

enum class SizeKind { Count, Fixed, Level };

struct MethodInfo {
    std::string name;
    SizeKind size = SizeKind::Count;
    bool seeded = false;
    std::vector<std::string> options;  // accepted method-specific flags, without "--"
};

const std::vector<MethodInfo>& method_table();
// Throws UsageError for unknown names.
const MethodInfo& method_info(std::string_view name);

// Everything needed to reproduce one point file.
struct GenRequest {
    std::string method;
    std::size_t dim = 0;
    std::optional<std::size_t> count;
    std::optional<std::size_t> level;
    std::optional<std::vector<Bounds>> bounds;
    std::optional<std::uint64_t> seed;
    Format format = Format::Csv;
    std::map<std::string, std::string> options;
};

// "lo,hi;lo,hi;..." -> bounds. Throws UsageError.
std::vector<Bounds> parse_bounds(std::string_view text);

// Checks flag combinations; throws UsageError.
void validate(const GenRequest& req);

// Validates, then builds the point set (scaled to req.bounds when given).
SampleSet generate(const GenRequest& req);

nlohmann::json to_json(const GenRequest& req);
GenRequest request_from_json(const nlohmann::json& j);

// Manifest content shared by the sidecar and the embedded JSON copy. It holds no
// timestamp or digest, so it is a pure function of the request.
nlohmann::json core_manifest(const GenRequest& req, const SampleSet& s);

struct GenOutput {
    SampleSet points;
    std::string bytes;          // exact point-file content
    nlohmann::json manifest;    // core manifest plus digest; no timestamp
};

GenOutput run_generation(const GenRequest& req);

// Adds "created" (UTC, ISO 8601) and "point_file" to a generation manifest.
nlohmann::json sidecar_manifest(const GenOutput& out, const std::string& point_file);

// Rebuilds the point file described by a manifest (sidecar or embedded form).
GenOutput regenerate(const nlohmann::json& manifest);

}  // namespace doeforge
