#include "doeforge/generate.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <numbers>
#include <sstream>

#include "doeforge/classical.hpp"
#include "doeforge/errors.hpp"
#include "doeforge/grid.hpp"
#include "doeforge/quasi_random.hpp"
#include "doeforge/random_designs.hpp"
#include "doeforge/random_stream.hpp"
#include "doeforge/version.hpp"

namespace doeforge {
namespace {

using Options = std::map<std::string, std::string>;

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) return out;
        start = pos + 1;
    }
}

double to_double(const std::string& key, const std::string& text) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (text.empty() || ec != std::errc{} || ptr != last || !std::isfinite(v)) {
        throw UsageError("--" + key + ": '" + text + "' is not a finite number");
    }
    return v;
}

std::size_t to_size(const std::string& key, const std::string& text) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        throw UsageError("--" + key + ": '" + text + "' is not a non-negative integer");
    }
    return v;
}

double opt_double(const Options& o, const std::string& key, double fallback) {
    const auto it = o.find(key);
    return it == o.end() ? fallback : to_double(key, it->second);
}

std::size_t opt_size(const Options& o, const std::string& key, std::size_t fallback) {
    const auto it = o.find(key);
    return it == o.end() ? fallback : to_size(key, it->second);
}

std::string opt_string(const Options& o, const std::string& key, const std::string& fallback) {
    const auto it = o.find(key);
    return it == o.end() ? fallback : it->second;
}

bool opt_bool(const Options& o, const std::string& key) {
    const auto v = opt_string(o, key, "false");
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw UsageError("--" + key + ": expected true or false, got '" + v + "'");
}

OrthogonalArray load_oa(const std::string& spec) {
    if (spec.rfind("bose:", 0) == 0) {
        try {
            return oa_bose(to_size("oa", spec.substr(5)));
        } catch (const LevelError& e) {
            throw UsageError(e.what());
        }
    }
    if (spec.rfind("OA(", 0) == 0) {
        try {
            return oa_catalog(spec);
        } catch (const Error& e) {
            throw UsageError(e.what());
        }
    }
    return read_oa_csv(spec);
}

OrthogonalArray first_columns(const OrthogonalArray& a, std::size_t cols) {
    if (cols == a.cols) return a;
    OrthogonalArray out;
    out.rows = a.rows;
    out.cols = cols;
    out.levels.assign(a.levels.begin(), a.levels.begin() + static_cast<std::ptrdiff_t>(cols));
    out.strength = std::min(a.strength, cols);
    for (std::size_t r = 0; r < a.rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) out.table.push_back(a(r, c));
    }
    return out;
}

SampleSet renamed(const SampleSet& s, const std::string& method) {
    return SampleSet(s.data(), s.dims(), s.domain(), method, s.seed(), s.params());
}

std::vector<std::size_t> grid_levels(const GenRequest& req) {
    const auto it = req.options.find("grid-levels");
    if (it != req.options.end()) {
        std::vector<std::size_t> lv;
        for (const auto& f : split(it->second, ',')) lv.push_back(to_size("grid-levels", f));
        return lv;
    }
    // Level mu uses 1-D level mu + 1 in every direction.
    return std::vector<std::size_t>(req.dim, *req.level + 1);
}


SampleSet build(const GenRequest& req) {
    const auto& o = req.options;
    const std::string& m = req.method;
    const std::size_t d = req.dim;
    const std::size_t n = req.count.value_or(0);
    const RandomStream stream = make_stream(req.seed.value_or(0));

    if (m == "factorial") return full_factorial(d, static_cast<int>(opt_size(o, "levels", 3)));
    if (m == "fractional") {
        std::vector<std::string> gens;
        for (const auto& g : split(opt_string(o, "generators", ""), ',')) {
            if (!g.empty()) gens.push_back(g);
        }
        return fractional_factorial(d, gens);
    }
    if (m == "ccd") {
        CcdVariant v;
        const auto kind = opt_string(o, "variant", "circumscribed");
        if (kind == "circumscribed" || kind == "ccc") v.kind = CcdKind::Circumscribed;
        else if (kind == "inscribed" || kind == "cci") v.kind = CcdKind::Inscribed;
        else if (kind == "faced" || kind == "ccf") v.kind = CcdKind::Faced;
        else throw UsageError("--variant: expected circumscribed, inscribed or faced");
        if (o.count("alpha")) v.alpha = opt_double(o, "alpha", 0.0);
        return central_composite(d, v);
    }
    if (m == "bbd") return box_behnken(d);
    if (m == "doehlert") return doehlert(d);
    if (m == "oa-lhs") {
        const auto a = load_oa(opt_string(o, "oa", ""));
        const std::size_t cols = d == 0 ? a.cols : d;
        if (cols > a.cols) {
            throw UsageError("--dim " + std::to_string(cols) + " exceeds the " + std::to_string(a.cols) +
                             " columns of the orthogonal array");
        }
        return oa_lhs(first_columns(a, cols), stream);
    }
    if (m == "random") return uniform_random(n, d, stream);
    if (m == "mh") {
        MhConfig cfg;
        cfg.proposal_scale = opt_double(o, "proposal-scale", cfg.proposal_scale);
        cfg.burn_in = opt_size(o, "burn-in", cfg.burn_in);
        cfg.thin = opt_size(o, "thin", cfg.thin);
        const auto target = opt_string(o, "target", "uniform");
        LogDensity density;
        if (target == "uniform") {
            if (o.count("mu") || o.count("sigma")) throw UsageError("--mu/--sigma require --target gaussian");
            density = uniform_log_density();
        } else if (target == "gaussian") {
            density = gaussian_log_density(opt_double(o, "mu", 0.5), opt_double(o, "sigma", 0.15));
        } else {
            throw UsageError("--target: expected uniform or gaussian");
        }
        auto s = metropolis_hastings(n, d, density, cfg, stream);
        s.set_param("target", target);
        return s;
    }
    if (m == "lhs") return lhs_basic(n, d, stream);
    if (m == "maximin-lhs") return lhs_maximin(n, d, stream, opt_size(o, "iters", 50), opt_size(o, "interchanges", 100));
    if (m == "cvt") {
        CvtConfig cfg;
        cfg.n_iter = opt_size(o, "cvt-iters", cfg.n_iter);
        cfg.m = opt_size(o, "cvt-samples", cfg.m);
        cfg.tol = opt_double(o, "tol", cfg.tol);
        return cvt(n, d, stream, cfg);
    }
    SequenceOptions seq;
    seq.include_zero = opt_bool(o, "include-zero");
    if (m == "sobol") {
        const auto order = opt_string(o, "order", "binary");
        if (order == "gray") seq.order = SequenceOptions::Order::Gray;
        else if (order != "binary") throw UsageError("--order: expected binary or gray");
        return sobol(n, d, seq);
    }
    if (m == "halton") return halton(n, d, seq);
    if (m == "hammersley") return hammersley(n, d);
    if (m == "faure") return faure(n, d, seq);
    if (m == "full-grid") return full_grid(grid_levels(req));
    if (m == "sparse-grid") return sparse_grid(GridLevelSpec{*req.level, d});
    if (m == "rot-sparse-grid") {
        const auto base = sparse_grid(GridLevelSpec{*req.level, d});
        constexpr double deg = std::numbers::pi / 180.0;
        if (o.count("theta-deg")) {
            if (o.count("objective") || o.count("angle-step-deg")) {
                throw UsageError("--theta-deg cannot be combined with --objective or --angle-step-deg");
            }
            return renamed(rotate_points(base, RotationSpec::all_planes(opt_double(o, "theta-deg", 0.0) * deg, d)),
                           m);
        }
        const auto obj_name = opt_string(o, "objective", "maximin");
        RotationObjective obj;
        if (obj_name == "maximin") obj = RotationObjective::Maximin;
        else if (obj_name == "centered_l2") obj = RotationObjective::CenteredL2;
        else throw UsageError("--objective: expected maximin or centered_l2");
        const double step = opt_double(o, "angle-step-deg", 1.0);
        if (!(step > 0.0)) throw UsageError("--angle-step-deg must be positive");
        return renamed(optimize_rotation(base, obj, step * deg).points, m);
    }
    throw UsageError("unknown method '" + m + "'");
}

nlohmann::json domain_json(const Domain& dom, std::size_t d) {
    nlohmann::json j;
    j["kind"] = to_string(dom.kind());
    if (dom.kind() == DomainKind::CodedPM1) j["half_width"] = dom.coded_half_width();
    nlohmann::json b = nlohmann::json::array();
    for (std::size_t k = 0; k < d; ++k) {
        const auto a = dom.axis(k);
        b.push_back({a.lo, a.hi});
    }
    j["bounds"] = std::move(b);
    return j;
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

const std::vector<MethodInfo>& method_table() {
    static const std::vector<MethodInfo> table = {
        {"bbd", SizeKind::Fixed, false, {}},
        {"ccd", SizeKind::Fixed, false, {"variant", "alpha"}},
        {"cvt", SizeKind::Count, true, {"cvt-iters", "cvt-samples", "tol"}},
        {"doehlert", SizeKind::Fixed, false, {}},
        {"factorial", SizeKind::Fixed, false, {"levels"}},
        {"faure", SizeKind::Count, false, {"include-zero"}},
        {"fractional", SizeKind::Fixed, false, {"generators"}},
        {"full-grid", SizeKind::Level, false, {"grid-levels"}},
        {"halton", SizeKind::Count, false, {"include-zero"}},
        {"hammersley", SizeKind::Count, false, {}},
        {"lhs", SizeKind::Count, true, {}},
        {"maximin-lhs", SizeKind::Count, true, {"iters", "interchanges"}},
        {"mh", SizeKind::Count, true, {"target", "mu", "sigma", "proposal-scale", "burn-in", "thin"}},
        {"oa-lhs", SizeKind::Fixed, true, {"oa"}},
        {"random", SizeKind::Count, true, {}},
        {"rot-sparse-grid", SizeKind::Level, false, {"theta-deg", "objective", "angle-step-deg"}},
        {"sobol", SizeKind::Count, false, {"order", "include-zero"}},
        {"sparse-grid", SizeKind::Level, false, {}},
    };
    return table;
}

const MethodInfo& method_info(std::string_view name) {
    for (const auto& m : method_table()) {
        if (m.name == name) return m;
    }
    throw UsageError("unknown method '" + std::string(name) + "'");
}

std::vector<Bounds> parse_bounds(std::string_view text) {
    std::vector<Bounds> out;
    for (const auto& pair : split(text, ';')) {
        const auto f = split(pair, ',');
        if (f.size() != 2) throw UsageError("--bounds: expected \"lo,hi;lo,hi;...\", got '" + std::string(text) + "'");
        const Bounds b{to_double("bounds", f[0]), to_double("bounds", f[1])};
        if (!(b.lo < b.hi)) throw UsageError("--bounds: lower bound must be below upper bound in '" + pair + "'");
        out.push_back(b);
    }
    return out;
}

void validate(const GenRequest& req) {
    const auto& info = method_info(req.method);
    for (const auto& [key, value] : req.options) {
        if (std::find(info.options.begin(), info.options.end(), key) == info.options.end()) {
            throw UsageError("--" + key + " is not valid for method " + req.method);
        }
    }
    const bool explicit_grid = req.method == "full-grid" && req.options.count("grid-levels");
    switch (info.size) {
    case SizeKind::Count:
        if (!req.count) throw UsageError(req.method + " requires --count");
        if (*req.count == 0) throw UsageError("--count must be at least 1");
        if (req.level) throw UsageError("--level is not valid for method " + req.method);
        break;
    case SizeKind::Fixed:
        if (req.count) throw UsageError("--count is not valid for method " + req.method + " (its size is fixed)");
        if (req.level) throw UsageError("--level is not valid for method " + req.method);
        break;
    case SizeKind::Level:
        if (req.count) throw UsageError("--count is not valid for method " + req.method + "; use --level");
        if (explicit_grid) {
            if (req.level) throw UsageError("--level and --grid-levels are mutually exclusive");
        } else if (!req.level) {
            throw UsageError(req.method + " requires --level");
        } else if (*req.level == 0) {
            throw UsageError("--level must be at least 1");
        }
        break;
    }
    if (req.dim == 0 && req.method != "oa-lhs" && !explicit_grid) throw UsageError("--dim must be at least 1");
    if (explicit_grid && req.dim != 0 && req.dim != grid_levels(req).size()) {
        throw UsageError("--dim disagrees with the number of --grid-levels entries");
    }
    if (req.method == "fractional" && !req.options.count("generators")) {
        throw UsageError("fractional requires --generators");
    }
    if (req.method == "oa-lhs" && !req.options.count("oa")) throw UsageError("oa-lhs requires --oa");
    if (req.bounds && req.dim != 0 && req.bounds->size() != req.dim) {
        throw UsageError("--bounds has " + std::to_string(req.bounds->size()) + " entries but --dim is " +
                         std::to_string(req.dim));
    }
}

SampleSet generate(const GenRequest& req) {
    validate(req);
    auto s = build(req);
    if (!method_info(req.method).seeded) s = SampleSet(s.data(), s.dims(), s.domain(), s.method(), std::nullopt, s.params());
    if (!req.bounds) return s;
    if (req.bounds->size() != s.dims()) {
        throw UsageError("--bounds has " + std::to_string(req.bounds->size()) + " entries but the design has " +
                         std::to_string(s.dims()) + " dimensions");
    }
    return scale_to_domain(s, DesignSpace(*req.bounds));
}

nlohmann::json to_json(const GenRequest& req) {
    nlohmann::json j;
    j["method"] = req.method;
    j["dim"] = req.dim;
    j["count"] = req.count ? nlohmann::json(*req.count) : nlohmann::json(nullptr);
    j["level"] = req.level ? nlohmann::json(*req.level) : nlohmann::json(nullptr);
    if (req.bounds) {
        nlohmann::json b = nlohmann::json::array();
        for (const auto& x : *req.bounds) b.push_back({x.lo, x.hi});
        j["bounds"] = std::move(b);
    } else {
        j["bounds"] = nullptr;
    }
    j["seed"] = req.seed ? nlohmann::json(*req.seed) : nlohmann::json(nullptr);
    j["format"] = to_string(req.format);
    j["options"] = req.options;
    return j;
}

GenRequest request_from_json(const nlohmann::json& j) {
    try {
        GenRequest req;
        req.method = j.at("method").get<std::string>();
        req.dim = j.at("dim").get<std::size_t>();
        if (!j.value("count", nlohmann::json()).is_null()) req.count = j.at("count").get<std::size_t>();
        if (!j.value("level", nlohmann::json()).is_null()) req.level = j.at("level").get<std::size_t>();
        if (!j.value("bounds", nlohmann::json()).is_null()) {
            std::vector<Bounds> b;
            for (const auto& p : j.at("bounds")) b.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
            req.bounds = std::move(b);
        }
        if (!j.value("seed", nlohmann::json()).is_null()) req.seed = j.at("seed").get<std::uint64_t>();
        req.format = parse_format(j.value("format", "csv"));
        if (j.contains("options")) req.options = j.at("options").get<std::map<std::string, std::string>>();
        return req;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed request in manifest: ") + e.what());
    }
}

nlohmann::json core_manifest(const GenRequest& req, const SampleSet& s) {
    nlohmann::json j;
    j["tool"] = "doeforge";
    j["tool_version"] = kVersion;
    j["method"] = req.method;
    j["n"] = s.size();
    j["d"] = s.dims();
    j["seed"] = s.seed() ? nlohmann::json(*s.seed()) : nlohmann::json(nullptr);
    j["domain"] = domain_json(s.domain(), s.dims());
    j["params"] = s.params();
    j["format"] = to_string(req.format);
    j["request"] = to_json(req);
    return j;
}

GenOutput run_generation(const GenRequest& req) {
    auto s = generate(req);
    auto manifest = core_manifest(req, s);
    std::string bytes = req.format == Format::Csv ? format_csv(s) : format_json_points(s, manifest);
    manifest["digest"] = {{"algorithm", "sha256"}, {"value", sha256_hex(bytes)}};
    return GenOutput{std::move(s), std::move(bytes), std::move(manifest)};
}

nlohmann::json sidecar_manifest(const GenOutput& out, const std::string& point_file) {
    auto j = out.manifest;
    j["created"] = utc_timestamp();
    j["point_file"] = point_file;
    return j;
}

GenOutput regenerate(const nlohmann::json& manifest) {
    if (!manifest.is_object() || !manifest.contains("request")) {
        throw ParseError("manifest has no \"request\" section");
    }
    return run_generation(request_from_json(manifest.at("request")));
}

}  // namespace doeforge
