#include "doeforge/io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "doeforge/errors.hpp"

namespace doeforge {
namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

double parse_real(std::string_view field, std::size_t line) {
    double v = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (field.empty() || ec != std::errc{} || ptr != last) {
        throw ParseError("'" + std::string(field) + "' is not a real number", line);
    }
    if (!std::isfinite(v)) throw ParseError("non-finite value", line);
    return v;
}

SampleSet infer_domain(PointTable table, const std::string& method) {
    const std::size_t d = table.dims;
    const auto& v = table.values;
    const bool unit = std::all_of(v.begin(), v.end(), [](double x) { return x >= 0.0 && x <= 1.0; });
    if (unit) return SampleSet(std::move(table.values), d, Domain::unit_cube(), method);
    const bool coded = std::all_of(v.begin(), v.end(), [](double x) { return x >= -1.0 && x <= 1.0; });
    if (coded) return SampleSet(std::move(table.values), d, Domain::coded(), method);
    std::vector<Bounds> box(d, Bounds{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()});
    for (std::size_t i = 0; i < table.rows(); ++i) {
        for (std::size_t k = 0; k < d; ++k) {
            box[k].lo = std::min(box[k].lo, v[i * d + k]);
            box[k].hi = std::max(box[k].hi, v[i * d + k]);
        }
    }
    for (auto& b : box) {
        if (!(b.lo < b.hi)) {
            b.lo = std::nextafter(b.lo, -std::numeric_limits<double>::infinity());
            b.hi = std::nextafter(b.hi, std::numeric_limits<double>::infinity());
        }
    }
    return SampleSet(std::move(table.values), d, Domain::user(DesignSpace(box)), method);
}

// Domain recorded by a manifest ("domain": {"kind", "half_width", "bounds"}).
std::optional<Domain> manifest_domain(const nlohmann::json& manifest) {
    if (!manifest.is_object() || !manifest.contains("domain")) return std::nullopt;
    const auto& dom = manifest.at("domain");
    const std::string kind = dom.value("kind", "");
    if (kind == "unit_cube") return Domain::unit_cube();
    if (kind == "coded_pm1") return Domain::coded(dom.value("half_width", 1.0));
    if (kind == "user") {
        std::vector<Bounds> b;
        for (const auto& pair : dom.at("bounds")) b.push_back({pair.at(0).get<double>(), pair.at(1).get<double>()});
        return Domain::user(DesignSpace(std::move(b)));
    }
    return std::nullopt;
}

}  // namespace

Format parse_format(std::string_view name) {
    if (name == "csv") return Format::Csv;
    if (name == "json") return Format::Json;
    throw ParseError("unknown format '" + std::string(name) + "' (expected csv or json)");
}

const char* to_string(Format f) { return f == Format::Csv ? "csv" : "json"; }

std::string format_csv(const SampleSet& s) {
    std::string out;
    out.reserve(s.data().size() * 24 + 16);
    for (std::size_t k = 0; k < s.dims(); ++k) {
        if (k) out += ',';
        out += 'x';
        out += std::to_string(k + 1);
    }
    out += '\n';
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t k = 0; k < s.dims(); ++k) {
            if (k) out += ',';
            out += format_real(s(i, k));
        }
        out += '\n';
    }
    return out;
}

PointTable parse_csv(std::string_view text) {
    PointTable table;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    bool header = false;
    while (pos < text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() : nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) {
            if (pos >= text.size()) break;  // trailing newline
            throw ParseError("empty line", line_no);
        }
        const auto fields = split_fields(line);
        if (!header) {
            for (std::size_t k = 0; k < fields.size(); ++k) {
                if (fields[k] != "x" + std::to_string(k + 1)) {
                    throw ParseError("header must be x1,...,xd", line_no);
                }
            }
            table.dims = fields.size();
            header = true;
            continue;
        }
        if (fields.size() != table.dims) {
            throw ParseError("expected " + std::to_string(table.dims) + " fields, found " +
                                 std::to_string(fields.size()),
                             line_no);
        }
        for (auto f : fields) table.values.push_back(parse_real(f, line_no));
    }
    if (!header) throw ParseError("missing x1,...,xd header", 1);
    if (table.values.empty()) throw ParseError("no data rows", line_no);
    return table;
}

std::string format_json_points(const SampleSet& s, const nlohmann::json& manifest) {
    nlohmann::json doc;
    doc["manifest"] = manifest;
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < s.size(); ++i) {
        const auto r = s.row(i);
        rows.push_back(std::vector<double>(r.begin(), r.end()));
    }
    doc["points"] = std::move(rows);
    return doc.dump(1) + "\n";
}

PointTable parse_json_points(std::string_view text, const std::filesystem::path& base_dir) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("point file must be a JSON object");
    if (doc.contains("points_file")) {
        const auto rel = std::filesystem::path(doc.at("points_file").get<std::string>());
        const auto target = rel.is_absolute() ? rel : base_dir / rel;
        return parse_csv(read_file(target));
    }
    if (!doc.contains("points") || !doc.at("points").is_array()) throw ParseError("missing \"points\" array");
    PointTable table;
    std::size_t row_no = 0;
    for (const auto& row : doc.at("points")) {
        ++row_no;
        if (!row.is_array()) throw ParseError("point " + std::to_string(row_no) + " is not an array");
        if (table.dims == 0) table.dims = row.size();
        if (row.size() != table.dims || table.dims == 0) {
            throw ParseError("point " + std::to_string(row_no) + " has " + std::to_string(row.size()) +
                             " coordinates, expected " + std::to_string(table.dims));
        }
        for (const auto& v : row) {
            if (!v.is_number()) throw ParseError("point " + std::to_string(row_no) + " has a non-numeric entry");
            table.values.push_back(v.get<double>());
        }
    }
    if (table.values.empty()) throw ParseError("no points");
    return table;
}

SampleSet read_points(const std::filesystem::path& path) {
    const std::string text = read_file(path);
    nlohmann::json manifest;
    PointTable table;
    const bool is_json = path.extension() == ".json";
    if (is_json) {
        table = parse_json_points(text, path.parent_path());
        manifest = nlohmann::json::parse(text).value("manifest", nlohmann::json::object());
    } else {
        table = parse_csv(text);
        const auto sidecar = manifest_path_for(path);
        if (std::filesystem::exists(sidecar)) manifest = nlohmann::json::parse(read_file(sidecar));
    }
    std::string method = "file";
    if (manifest.is_object()) {
        method = manifest.value("method", method);
        if (manifest.contains("request")) method = manifest["request"].value("method", method);
    }
    if (auto dom = manifest_domain(manifest)) {
        return SampleSet(std::move(table.values), table.dims, *dom, method);
    }
    return infer_domain(std::move(table), method);
}

void write_points(const SampleSet& s, const std::filesystem::path& path, Format format,
                  const nlohmann::json& manifest) {
    write_file(path, format == Format::Csv ? format_csv(s) : format_json_points(s, manifest));
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error("write failed for " + path.string());
}

std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw Error("SHA-256 failed");
    }
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xF];
    }
    return out;
}

std::filesystem::path manifest_path_for(const std::filesystem::path& points_path) {
    return std::filesystem::path(points_path.string() + ".manifest.json");
}

}  // namespace doeforge
