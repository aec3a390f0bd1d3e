#include "doeforge/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <thread>
#include <utility>

#include <CLI11.hpp>

#include "doeforge/classical.hpp"
#include "doeforge/errors.hpp"
#include "doeforge/generate.hpp"
#include "doeforge/io.hpp"
#include "doeforge/metrics.hpp"
#include "doeforge/version.hpp"

namespace doeforge::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Method-specific value flags and their help text.
const std::vector<std::pair<std::string, std::string>> kValueOptions = {
    {"levels", "factorial: levels per factor (2 or 3)"},
    {"generators", "fractional: generators such as D=ABC,E=BC"},
    {"variant", "ccd: circumscribed, inscribed or faced"},
    {"alpha", "ccd: axial distance"},
    {"oa", "oa-lhs: catalog name, bose:P or CSV file"},
    {"target", "mh: uniform or gaussian"},
    {"mu", "mh: gaussian mean"},
    {"sigma", "mh: gaussian standard deviation"},
    {"proposal-scale", "mh: random-walk step size"},
    {"burn-in", "mh: discarded initial steps"},
    {"thin", "mh: keep every k-th step"},
    {"iters", "maximin-lhs: outer iterations"},
    {"interchanges", "maximin-lhs: swaps tried per iteration"},
    {"cvt-iters", "cvt: maximum Lloyd iterations"},
    {"cvt-samples", "cvt: Monte Carlo samples per iteration"},
    {"tol", "cvt: generator movement tolerance"},
    {"order", "sobol: binary or gray"},
    {"grid-levels", "full-grid: per-axis levels j1,j2,..."},
    {"theta-deg", "rot-sparse-grid: fixed rotation angle in degrees"},
    {"objective", "rot-sparse-grid: maximin or centered_l2"},
    {"angle-step-deg", "rot-sparse-grid: search step in degrees"}};

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto pos = text.find(',', start);
        auto item = text.substr(start, pos == std::string::npos ? std::string::npos : pos - start);
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (!item.empty()) out.push_back(item);
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

// Method-specific flags shared by gen and compare.
struct MethodFlags {
    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option*> handles;
    CLI::Option* include_zero = nullptr;

    void attach(CLI::App& app) {
        for (const auto& [name, help] : kValueOptions) {
            handles[name] = app.add_option("--" + name, values[name], help);
        }
        include_zero = app.add_flag("--include-zero", "Emit index 0 (the origin) as the first point");
    }

    std::map<std::string, std::string> collect() const {
        std::map<std::string, std::string> out;
        for (const auto& [name, opt] : handles) {
            if (opt->count() > 0) out[name] = values.at(name);
        }
        if (include_zero->count() > 0) out["include-zero"] = "true";
        return out;
    }
};

void write_text(const fs::path& path, const std::string& text) { write_file(path, text); }

int cmd_gen(const GenRequest& req, const std::string& out_path, std::ostream& out, std::ostream& err) {
    const auto result = run_generation(req);
    if (out_path.empty()) {
        out << result.bytes;
        return kExitOk;
    }
    const fs::path path(out_path);
    write_file(path, result.bytes);
    const auto manifest = sidecar_manifest(result, path.filename().string());
    write_text(manifest_path_for(path), manifest.dump(2) + "\n");
    err << "wrote " << result.points.size() << " points (" << result.points.dims() << " dims) to " << path.string()
        << "\n";
    return kExitOk;
}

int cmd_regen(const std::string& manifest_path, const std::string& out_path, std::ostream& out,
              std::ostream& err) {
    const fs::path mpath(manifest_path);
    json doc;
    try {
        doc = json::parse(read_file(mpath));
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid manifest JSON: ") + e.what());
    }
    // A JSON point file carries its manifest inline; its own bytes are the reference.
    const bool embedded = doc.contains("points") && doc.contains("manifest");
    const json manifest = embedded ? doc.at("manifest") : doc;
    const auto result = regenerate(manifest);
    if (!out_path.empty()) {
        write_file(out_path, result.bytes);
        err << "regenerated " << result.points.size() << " points to " << out_path << "\n";
    }
    std::string expected;
    if (embedded) {
        expected = sha256_hex(read_file(mpath));
    } else if (manifest.contains("digest")) {
        expected = manifest.at("digest").value("value", "");
    }
    if (expected.empty()) {
        err << "manifest has no digest; nothing to verify\n";
        return out_path.empty() ? kExitFailure : kExitOk;
    }
    const auto actual = result.manifest.at("digest").at("value").get<std::string>();
    if (actual != expected) {
        err << "digest mismatch: manifest " << expected << ", regenerated " << actual << "\n";
        return kExitFailure;
    }
    if (!embedded && manifest.contains("point_file")) {
        const auto on_disk = mpath.parent_path() / manifest.at("point_file").get<std::string>();
        if (fs::exists(on_disk) && read_file(on_disk) != result.bytes) {
            err << "point file " << on_disk.string() << " differs from the regenerated bytes\n";
            return kExitFailure;
        }
    }
    out << "ok " << actual << "\n";
    return kExitOk;
}

json report_json(const MetricReport& r) {
    json j;
    j["method"] = r.method;
    j["n"] = r.n;
    j["d"] = r.d;
    j["maximin"] = r.n >= 2 ? json(r.maximin) : json(nullptr);
    j["centered_l2"] = r.centered_l2;
    j["star_disc"] = r.star_disc ? json(*r.star_disc) : json(nullptr);
    j["elapsed"] = r.elapsed;
    return j;
}

int cmd_score(const std::string& in_path, std::ostream& out) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto s = read_points(in_path);
    auto r = score(s);
    r.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out << report_json(r).dump(2) << "\n";
    return kExitOk;
}

int cmd_oa_verify(const std::string& spec, std::ostream& out) {
    OrthogonalArray a;
    if (spec.rfind("bose:", 0) == 0) {
        std::size_t p = 0;
        try {
            p = std::stoul(spec.substr(5));
        } catch (const std::exception&) {
            throw UsageError("--oa bose:P needs an integer P");
        }
        a = oa_bose(p);
    } else {
        a = spec.rfind("OA(", 0) == 0 ? oa_catalog(spec) : read_oa_csv(spec);
    }
    const auto check = oa_verify(a);
    if (check) {
        out << "ok: " << a.rows << " runs, " << a.cols << " columns, strength " << a.strength << " holds\n";
    } else {
        out << "violation: " << check.message << "\n";
    }
    return check ? kExitOk : kExitFailure;
}

}  // namespace

std::size_t worker_count(std::size_t requested, std::size_t jobs) {
    std::size_t n = requested;
    if (n == 0) {
        if (const char* env = std::getenv("DOE_FORGE_THREADS")) {
            try {
                n = static_cast<std::size_t>(std::stoul(env));
            } catch (const std::exception&) {
                throw UsageError(std::string("DOE_FORGE_THREADS must be a non-negative integer, got '") + env + "'");
            }
        }
    }
    if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
    return std::max<std::size_t>(1, std::min(n, jobs));
}

double quantile(std::vector<double> values, double q) {
    if (values.empty()) throw SizeError("quantile of an empty sample");
    std::sort(values.begin(), values.end());
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    const auto hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

CompareResult run_compare(const CompareRequest& req) {
    if (req.methods.empty()) throw UsageError("--methods is empty");
    if (req.seeds == 0) throw UsageError("--seeds must be at least 1");
    for (const auto& m : req.metrics) {
        if (std::find(metric_names().begin(), metric_names().end(), m) == metric_names().end()) {
            throw UsageError("unknown metric '" + m + "' (expected maximin, centered_l2 or star_disc)");
        }
    }
    const bool want_star = std::find(req.metrics.begin(), req.metrics.end(), "star_disc") != req.metrics.end();

    std::vector<std::string> methods = req.methods;
    std::sort(methods.begin(), methods.end());
    methods.erase(std::unique(methods.begin(), methods.end()), methods.end());

    struct Job {
        GenRequest gen;
        bool seedless = false;
        json entry;
        bool ok = true;
    };
    std::vector<Job> jobs;
    for (const auto& m : methods) {
        const auto& info = method_info(m);
        GenRequest base;
        base.method = m;
        base.dim = req.dim;
        if (info.size == SizeKind::Count) {
            if (!req.count) throw UsageError("method " + m + " needs --count");
            base.count = req.count;
        }
        if (info.size == SizeKind::Level) {
            if (!req.level) throw UsageError("method " + m + " needs --level");
            base.level = req.level;
        }
        for (const auto& [k, v] : req.options) {
            if (std::find(info.options.begin(), info.options.end(), k) != info.options.end()) base.options[k] = v;
        }
        validate(base);
        const std::size_t reps = info.seeded ? req.seeds : 1;
        for (std::size_t i = 0; i < reps; ++i) {
            Job job;
            job.gen = base;
            job.seedless = !info.seeded;
            if (info.seeded) job.gen.seed = req.seed_base + i;
            jobs.push_back(std::move(job));
        }
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            auto& job = jobs[i];
            const auto t0 = std::chrono::steady_clock::now();
            try {
                const auto s = generate(job.gen);
                auto r = score(s, 0.0, want_star);
                r.method = job.gen.method;
                r.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                job.entry = report_json(r);
            } catch (const Error& e) {
                job.ok = false;
                job.entry = {{"method", job.gen.method}, {"error", e.what()}};
            }
            job.entry["seed"] = job.gen.seed ? json(*job.gen.seed) : json(nullptr);
            job.entry["seedless"] = job.seedless;
        }
    };
    const std::size_t nthreads = worker_count(req.threads, jobs.size());
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < nthreads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    CompareResult result;
    json entries = json::array();
    std::string csv = "method,seed,metric,value\n";
    std::map<std::string, std::map<std::string, std::vector<double>>> samples;
    for (const auto& job : jobs) {
        entries.push_back(job.entry);
        result.all_ok = result.all_ok && job.ok;
        if (!job.ok) continue;
        for (const auto& metric : req.metrics) {
            const auto& v = job.entry.at(metric);
            if (v.is_null()) continue;
            samples[job.gen.method][metric].push_back(v.get<double>());
            csv += job.gen.method + "," + (job.gen.seed ? std::to_string(*job.gen.seed) : std::string()) + "," +
                   metric + "," + format_real(v.get<double>()) + "\n";
        }
    }
    json summary = json::object();
    for (const auto& [method, by_metric] : samples) {
        for (const auto& [metric, values] : by_metric) {
            summary[method][metric] = {{"count", values.size()},
                                       {"min", quantile(values, 0.0)},
                                       {"q1", quantile(values, 0.25)},
                                       {"median", quantile(values, 0.5)},
                                       {"q3", quantile(values, 0.75)},
                                       {"max", quantile(values, 1.0)}};
        }
    }
    result.report = {{"tool_version", kVersion},
                     {"dim", req.dim},
                     {"count", req.count ? json(*req.count) : json(nullptr)},
                     {"level", req.level ? json(*req.level) : json(nullptr)},
                     {"seeds", req.seeds},
                     {"seed_base", req.seed_base},
                     {"metrics", req.metrics},
                     {"entries", std::move(entries)},
                     {"summary", std::move(summary)}};
    result.csv = std::move(csv);
    return result;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"doeforge: design-of-experiments point-set generator"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a point set and its manifest");
    GenRequest greq;
    std::string g_method, g_bounds, g_format, g_out;
    std::size_t g_dim = 0, g_count = 0, g_level = 0;
    std::uint64_t g_seed = 0;
    gen->add_option("--method", g_method, "Sampling method")->required();
    gen->add_option("--dim", g_dim, "Number of dimensions");
    auto* g_count_opt = gen->add_option("--count", g_count, "Number of points");
    auto* g_level_opt = gen->add_option("--level", g_level, "Grid level mu");
    auto* g_bounds_opt = gen->add_option("--bounds", g_bounds, "Per-axis bounds \"lo,hi;lo,hi;...\"");
    auto* g_seed_opt = gen->add_option("--seed", g_seed, "Seed for randomized methods");
    auto* g_format_opt = gen->add_option("--format", g_format, "csv or json (default: from --out extension)");
    gen->add_option("--out", g_out, "Output path (default: stdout, no manifest)");
    MethodFlags g_flags;
    g_flags.attach(*gen);

    // compare
    auto* cmp = app.add_subcommand("compare", "Generate and score several methods over seeds");
    std::string c_methods, c_metrics = "maximin,centered_l2", c_out, c_csv;
    CompareRequest creq;
    std::size_t c_count = 0, c_level = 0;
    cmp->add_option("--methods", c_methods, "Comma-separated methods")->required();
    cmp->add_option("--dim", creq.dim, "Number of dimensions")->required();
    auto* c_count_opt = cmp->add_option("--count", c_count, "Points for count-based methods");
    auto* c_level_opt = cmp->add_option("--level", c_level, "Level for grid methods");
    cmp->add_option("--seeds", creq.seeds, "Seeds per randomized method");
    cmp->add_option("--seed-base", creq.seed_base, "First seed");
    cmp->add_option("--metrics", c_metrics, "Comma-separated metrics: maximin, centered_l2, star_disc");
    cmp->add_option("--out", c_out, "Report JSON path (default: stdout)");
    cmp->add_option("--csv", c_csv, "Plot-ready CSV path (default: report path with .csv)");
    cmp->add_option("--threads", creq.threads, "Worker threads (0 = DOE_FORGE_THREADS or hardware)");
    MethodFlags c_flags;
    c_flags.attach(*cmp);

    // regen
    auto* regen = app.add_subcommand("regen", "Rebuild a point file from its manifest and verify the digest");
    std::string r_manifest, r_out;
    regen->add_option("--manifest", r_manifest, "Sidecar manifest or JSON point file")->required();
    regen->add_option("--out", r_out, "Write the regenerated point file here");

    // score
    auto* sc = app.add_subcommand("score", "Print space-filling metrics of a point file");
    std::string s_in;
    sc->add_option("--in", s_in, "CSV or JSON point file")->required();

    // oa-verify
    auto* oav = app.add_subcommand("oa-verify", "Check the strength of an orthogonal array");
    std::string o_spec;
    oav->add_option("--oa", o_spec, "Catalog name such as OA(4,3,2,2), bose:P or a CSV file")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (gen->parsed()) {
            greq.method = g_method;
            method_info(g_method);
            greq.dim = g_dim;
            if (g_count_opt->count()) greq.count = g_count;
            if (g_level_opt->count()) greq.level = g_level;
            if (g_bounds_opt->count()) greq.bounds = parse_bounds(g_bounds);
            if (g_seed_opt->count()) greq.seed = g_seed;
            if (g_format_opt->count()) {
                try {
                    greq.format = parse_format(g_format);
                } catch (const ParseError& e) {
                    throw UsageError(e.what());
                }
            } else {
                greq.format = fs::path(g_out).extension() == ".json" ? Format::Json : Format::Csv;
            }
            greq.options = g_flags.collect();
            validate(greq);
            return cmd_gen(greq, g_out, out, err);
        }
        if (cmp->parsed()) {
            creq.methods = split_list(c_methods);
            creq.metrics = split_list(c_metrics);
            if (c_count_opt->count()) creq.count = c_count;
            if (c_level_opt->count()) creq.level = c_level;
            creq.options = c_flags.collect();
            const auto result = run_compare(creq);
            const std::string text = result.report.dump(2) + "\n";
            if (c_out.empty()) {
                out << text;
            } else {
                write_file(c_out, text);
            }
            std::string csv_path = c_csv;
            if (csv_path.empty() && !c_out.empty()) csv_path = fs::path(c_out).replace_extension(".csv").string();
            if (!csv_path.empty()) write_file(csv_path, result.csv);
            if (!result.all_ok) {
                err << "some jobs failed; see the \"error\" fields in the report\n";
                return kExitFailure;
            }
            return kExitOk;
        }
        if (regen->parsed()) return cmd_regen(r_manifest, r_out, out, err);
        if (sc->parsed()) return cmd_score(s_in, out);
        if (oav->parsed()) return cmd_oa_verify(o_spec, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}

}  // namespace doeforge::cli
