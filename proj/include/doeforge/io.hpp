#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "doeforge/core.hpp"

namespace doeforge {

enum class Format { Csv, Json };

Format parse_format(std::string_view name);
const char* to_string(Format f);

// Raw numeric table as read from a point file.
struct PointTable {
    std::size_t dims = 0;
    std::vector<double> values;  // row-major

    std::size_t rows() const { return dims == 0 ? 0 : values.size() / dims; }
};

// CSV: header "x1,...,xd", LF line endings, one row per point, each value
// printed with 17 significant digits so that parsing restores it exactly.
std::string format_csv(const SampleSet& s);
PointTable parse_csv(std::string_view text);

// JSON: {"manifest": <manifest>, "points": [[...], ...]}. parse_json_points also
// accepts {"manifest": ..., "points_file": "rel.csv"}, resolved against `base_dir`.
std::string format_json_points(const SampleSet& s, const nlohmann::json& manifest);
PointTable parse_json_points(std::string_view text, const std::filesystem::path& base_dir = {});

// Reads a CSV or JSON point file (by extension). The declared domain comes from
// the manifest (embedded, or the PATH.manifest.json sidecar) when one is
// available; otherwise it is inferred: [0,1]^d, then [-1,1]^d, then the
// user box spanned by the data.
SampleSet read_points(const std::filesystem::path& path);
void write_points(const SampleSet& s, const std::filesystem::path& path, Format format,
                  const nlohmann::json& manifest = nlohmann::json::object());

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

std::string sha256_hex(std::string_view bytes);
std::filesystem::path manifest_path_for(const std::filesystem::path& points_path);

}  // namespace doeforge
