#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <json.hpp>

#include "doeforge/cli.hpp"
#include "doeforge/errors.hpp"
#include "doeforge/generate.hpp"
#include "doeforge/io.hpp"

namespace doeforge {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("doeforge_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

std::size_t count_lines(const std::string& text) {
    std::size_t n = 0;
    for (char c : text) n += c == '\n';
    return n;
}

TEST_F(CliTest, HammersleyWithBounds) {
    const auto out = path("pts.csv");
    const auto r = cli({"gen", "--method", "hammersley", "--dim", "2", "--count", "400", "--bounds", "-1,1;0,1",
                        "--out", out});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto table = parse_csv(read_file(out));
    EXPECT_EQ(table.dims, 2u);
    ASSERT_EQ(table.rows(), 400u);
    for (std::size_t i = 0; i < 400; ++i) {
        EXPECT_GE(table.values[2 * i], -1.0);
        EXPECT_LE(table.values[2 * i], 1.0);
        EXPECT_GE(table.values[2 * i + 1], 0.0);
        EXPECT_LE(table.values[2 * i + 1], 1.0);
    }
    const auto manifest = json::parse(read_file(manifest_path_for(out)));
    EXPECT_EQ(manifest["method"], "hammersley");
    EXPECT_EQ(manifest["n"], 400);
    EXPECT_EQ(manifest["d"], 2);
    EXPECT_TRUE(manifest["seed"].is_null());
    EXPECT_EQ(manifest["domain"]["bounds"][0][0], -1.0);
    EXPECT_EQ(manifest["digest"]["value"], sha256_hex(read_file(out)));
    EXPECT_TRUE(manifest.contains("created"));
    EXPECT_EQ(manifest["point_file"], "pts.csv");
    EXPECT_EQ(manifest["tool_version"], "0.3.0");
}

TEST_F(CliTest, SparseGridToStdout) {
    const auto r = cli({"gen", "--method", "sparse-grid", "--dim", "2", "--level", "3"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(count_lines(r.out), 14u);  // header + 13 rows
}

TEST_F(CliTest, SameSeedSameFile) {
    for (const auto* name : {"a.csv", "b.csv"}) {
        ASSERT_EQ(cli({"gen", "--method", "maximin-lhs", "--dim", "3", "--count", "30", "--seed", "9", "--out",
                       path(name)})
                      .code,
                  0);
    }
    EXPECT_EQ(read_file(path("a.csv")), read_file(path("b.csv")));
    ASSERT_EQ(cli({"gen", "--method", "maximin-lhs", "--dim", "3", "--count", "30", "--seed", "10", "--out",
                   path("c.csv")})
                  .code,
              0);
    EXPECT_NE(read_file(path("a.csv")), read_file(path("c.csv")));
}

TEST_F(CliTest, UsageErrorsExitTwo) {
    const std::vector<std::vector<std::string>> bad = {
        {"gen", "--method", "nope", "--dim", "2", "--count", "3"},
        {"gen", "--method", "lhs", "--dim", "2"},
        {"gen", "--method", "lhs", "--dim", "2", "--count", "3", "--order", "gray"},
        {"gen", "--method", "lhs", "--dim", "2", "--count", "3", "--bounds", "0,1"},
        {"gen", "--method", "lhs", "--dim", "2", "--count", "3", "--bounds", "1,0;0,1"},
        {"gen", "--method", "lhs", "--dim", "2", "--count", "0"},
        {"gen", "--method", "sparse-grid", "--dim", "2", "--level", "2", "--count", "5"},
        {"gen", "--method", "sparse-grid", "--dim", "2"},
        {"gen", "--method", "ccd", "--dim", "2", "--count", "5"},
        {"gen", "--method", "full-grid", "--grid-levels", "2,2", "--level", "2"},
        {"gen", "--method", "sobol", "--dim", "2", "--count", "4", "--order", "weird"},
        {"gen", "--method", "lhs", "--dim", "2", "--count", "3", "--format", "xml"},
        {"gen", "--method", "rot-sparse-grid", "--dim", "2", "--level", "2", "--theta-deg", "10", "--objective",
         "maximin"},
        {"gen", "--method", "fractional", "--dim", "4"},
        {"gen", "--dim", "2"},
        {"gen", "--method", "lhs", "--bogus"},
        {"frobnicate"},
        {},
        {"compare", "--methods", "lhs", "--dim", "2", "--count", "10", "--metrics", "maximin,volume"},
        {"compare", "--methods", "lhs,unknown", "--dim", "2", "--count", "10"},
        {"compare", "--methods", "lhs", "--dim", "2"},
    };
    for (const auto& args : bad) {
        const auto r = cli(args);
        std::string joined;
        for (const auto& a : args) joined += a + " ";
        EXPECT_EQ(r.code, cli::kExitUsage) << joined << "\n" << r.err;
        EXPECT_FALSE(r.err.empty()) << joined;
    }
}

TEST_F(CliTest, GenerationErrorsExitOne) {
    EXPECT_EQ(cli({"gen", "--method", "bbd", "--dim", "2"}).code, cli::kExitFailure);
    EXPECT_EQ(cli({"gen", "--method", "fractional", "--dim", "4", "--generators", "A=BC"}).code, cli::kExitFailure);
    EXPECT_EQ(cli({"gen", "--method", "factorial", "--dim", "16"}).code, cli::kExitFailure);
    EXPECT_EQ(cli({"gen", "--method", "oa-lhs", "--oa", "OA(8,4,2,3)", "--dim", "9"}).code, cli::kExitUsage);
    EXPECT_EQ(cli({"gen", "--method", "lhs", "--dim", "2", "--count", "3", "--out", path("no/such/dir/x.csv")}).code,
              cli::kExitFailure);
}

TEST_F(CliTest, HelpAndVersionExitZero) {
    EXPECT_EQ(cli({"--help"}).code, 0);
    const auto v = cli({"--version"});
    EXPECT_EQ(v.code, 0);
    EXPECT_NE(v.out.find("0.3.0"), std::string::npos);
}

TEST_F(CliTest, RegenerationIsByteIdenticalForEveryMethod) {
    const std::vector<std::vector<std::string>> cases = {
        {"factorial", "--dim", "3", "--levels", "2"},
        {"fractional", "--dim", "5", "--generators", "D=AB,E=-AC"},
        {"ccd", "--dim", "3", "--variant", "faced"},
        {"bbd", "--dim", "4"},
        {"doehlert", "--dim", "3"},
        {"oa-lhs", "--oa", "OA(8,7,2,2)"},
        {"random", "--dim", "3", "--count", "50"},
        {"mh", "--dim", "2", "--count", "40", "--target", "gaussian", "--mu", "0.4", "--sigma", "0.1"},
        {"lhs", "--dim", "4", "--count", "25"},
        {"maximin-lhs", "--dim", "2", "--count", "20"},
        {"cvt", "--dim", "2", "--count", "8", "--cvt-iters", "20"},
        {"sobol", "--dim", "4", "--count", "32", "--order", "gray", "--include-zero"},
        {"halton", "--dim", "3", "--count", "20"},
        {"hammersley", "--dim", "3", "--count", "20", "--bounds", "0,2;-1,1;5,6"},
        {"faure", "--dim", "3", "--count", "27", "--include-zero"},
        {"full-grid", "--grid-levels", "2,3"},
        {"sparse-grid", "--dim", "3", "--level", "3"},
        {"rot-sparse-grid", "--dim", "2", "--level", "3", "--angle-step-deg", "5"},
    };
    for (const std::string format : {"csv", "json"}) {
        for (const auto& c : cases) {
            const auto out = path(c[0] + "." + format);
            std::vector<std::string> args = {"gen", "--method"};
            args.insert(args.end(), c.begin(), c.end());
            args.insert(args.end(), {"--seed", "4", "--out", out});
            const auto r = cli(args);
            ASSERT_EQ(r.code, 0) << c[0] << ": " << r.err;
            const std::string original = read_file(out);
            const auto regen_path = path(c[0] + ".regen." + format);
            const auto g = cli({"regen", "--manifest", manifest_path_for(out).string(), "--out", regen_path});
            ASSERT_EQ(g.code, 0) << c[0] << ": " << g.err;
            EXPECT_EQ(read_file(regen_path), original) << c[0];
            if (format == "json") {
                const auto e = cli({"regen", "--manifest", out});
                EXPECT_EQ(e.code, 0) << c[0] << ": " << e.err;
            }
        }
    }
}

TEST_F(CliTest, RegenDetectsTampering) {
    const auto out = path("h.csv");
    ASSERT_EQ(cli({"gen", "--method", "halton", "--dim", "2", "--count", "10", "--out", out}).code, 0);
    EXPECT_EQ(cli({"regen", "--manifest", manifest_path_for(out).string()}).code, 0);
    write_file(out, read_file(out) + "0.5,0.5\n");
    EXPECT_EQ(cli({"regen", "--manifest", manifest_path_for(out).string()}).code, cli::kExitFailure);
    auto m = json::parse(read_file(manifest_path_for(out)));
    m["digest"]["value"] = std::string(64, '0');
    write_file(manifest_path_for(out), m.dump());
    EXPECT_EQ(cli({"regen", "--manifest", manifest_path_for(out).string()}).code, cli::kExitFailure);
    write_file(manifest_path_for(out), "{\"no\": 1}");
    EXPECT_EQ(cli({"regen", "--manifest", manifest_path_for(out).string()}).code, cli::kExitFailure);
}

TEST_F(CliTest, JsonFormatEmbedsManifest) {
    const auto out = path("s.json");
    ASSERT_EQ(cli({"gen", "--method", "sobol", "--dim", "2", "--count", "8", "--out", out}).code, 0);
    const auto doc = json::parse(read_file(out));
    EXPECT_EQ(doc["manifest"]["method"], "sobol");
    EXPECT_FALSE(doc["manifest"].contains("created"));
    EXPECT_FALSE(doc["manifest"].contains("digest"));
    EXPECT_EQ(doc["points"].size(), 8u);
    EXPECT_EQ(doc["points"][0][0], 0.5);
}

TEST_F(CliTest, CompareSingleMethodOneSeed) {
    const auto out = path("r.json");
    ASSERT_EQ(cli({"compare", "--methods", "lhs", "--dim", "2", "--count", "16", "--seeds", "1", "--out", out}).code, 0);
    const auto rep = json::parse(read_file(out));
    ASSERT_EQ(rep["entries"].size(), 1u);
    EXPECT_EQ(rep["entries"][0]["method"], "lhs");
    EXPECT_EQ(rep["entries"][0]["seedless"], false);
    EXPECT_TRUE(fs::exists(path("r.csv")));
}

TEST_F(CliTest, CompareSeedlessAndOrdering) {
    const auto out = path("r.json");
    const auto csv = path("plot.csv");
    ASSERT_EQ(cli({"compare", "--methods", "sobol,random,halton,lhs", "--dim", "2", "--count", "32", "--seeds", "3",
                   "--metrics", "maximin,star_disc", "--out", out, "--csv", csv})
                  .code,
              0);
    const auto rep = json::parse(read_file(out));
    const auto& e = rep["entries"];
    ASSERT_EQ(e.size(), 1u + 3u + 3u + 1u);
    std::vector<std::string> order;
    for (const auto& x : e) order.push_back(x["method"]);
    EXPECT_EQ(order, (std::vector<std::string>{"halton", "lhs", "lhs", "lhs", "random", "random", "random", "sobol"}));
    EXPECT_EQ(e[0]["seedless"], true);
    EXPECT_TRUE(e[0]["seed"].is_null());
    EXPECT_EQ(e[1]["seed"], 0);
    EXPECT_EQ(e[3]["seed"], 2);
    EXPECT_EQ(rep["summary"]["lhs"]["maximin"]["count"], 3);
    EXPECT_FALSE(rep["summary"]["lhs"].contains("centered_l2"));
    const auto text = read_file(csv);
    EXPECT_EQ(text.rfind("method,seed,metric,value\n", 0), 0u);
    EXPECT_NE(text.find("halton,,star_disc,"), std::string::npos);
    EXPECT_EQ(count_lines(text), 1u + 8u * 2u);
}

TEST_F(CliTest, CompareHammersleyBeatsRandom) {
    cli::CompareRequest req;
    req.methods = {"hammersley", "random"};
    req.dim = 2;
    req.count = 128;
    req.seeds = 20;
    req.metrics = {"star_disc"};
    const auto res = cli::run_compare(req);
    const auto& s = res.report["summary"];
    EXPECT_LT(s["hammersley"]["star_disc"]["median"].get<double>(), s["random"]["star_disc"]["median"].get<double>());
}

TEST_F(CliTest, CompareIsIndependentOfThreadCount) {
    cli::CompareRequest req;
    req.methods = {"cvt", "maximin-lhs", "faure"};
    req.dim = 3;
    req.count = 20;
    req.seeds = 4;
    auto strip = [](json rep) {
        for (auto& e : rep["entries"]) e.erase("elapsed");
        return rep;
    };
    req.threads = 1;
    const auto a = cli::run_compare(req);
    req.threads = 4;
    const auto b = cli::run_compare(req);
    EXPECT_EQ(strip(a.report), strip(b.report));
    EXPECT_EQ(a.csv, b.csv);
}

TEST_F(CliTest, CompareRecordsFailedJobs) {
    const auto r = cli({"compare", "--methods", "bbd,lhs", "--dim", "2", "--count", "10"});
    EXPECT_EQ(r.code, cli::kExitFailure);
    const auto rep = json::parse(r.out);
    EXPECT_TRUE(rep["entries"][0].contains("error"));
    EXPECT_FALSE(rep["entries"][1].contains("error"));
}

TEST(WorkerCount, EnvironmentCap) {
    ::setenv("DOE_FORGE_THREADS", "3", 1);
    EXPECT_EQ(cli::worker_count(0, 10), 3u);
    EXPECT_EQ(cli::worker_count(0, 2), 2u);
    EXPECT_EQ(cli::worker_count(5, 10), 5u);
    ::setenv("DOE_FORGE_THREADS", "0", 1);
    EXPECT_GE(cli::worker_count(0, 10), 1u);
    ::setenv("DOE_FORGE_THREADS", "many", 1);
    EXPECT_THROW(cli::worker_count(0, 10), UsageError);
    ::unsetenv("DOE_FORGE_THREADS");
}

TEST(Quantile, LinearInterpolation) {
    EXPECT_DOUBLE_EQ(cli::quantile({4, 1, 3, 2}, 0.5), 2.5);
    EXPECT_DOUBLE_EQ(cli::quantile({1, 2, 3, 4, 5}, 0.25), 2.0);
    EXPECT_DOUBLE_EQ(cli::quantile({7}, 0.75), 7.0);
    EXPECT_THROW(cli::quantile({}, 0.5), SizeError);
}

TEST(ScoreCommand, PrintsMetricReport) {
    const auto dir = fs::temp_directory_path() / "doeforge_cli_score";
    fs::create_directories(dir);
    const auto file = (dir / "p.csv").string();
    write_file(file, "x1,x2\n0.25,0.25\n0.75,0.75\n");
    const auto r = cli({"score", "--in", file});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rep = json::parse(r.out);
    EXPECT_NEAR(rep["maximin"].get<double>(), std::sqrt(0.5), 1e-15);
    EXPECT_FALSE(rep["star_disc"].is_null());
    EXPECT_EQ(cli({"score", "--in", (dir / "missing.csv").string()}).code, cli::kExitFailure);
    fs::remove_all(dir);
}

TEST(OaVerifyCommand, CatalogArray) {
    std::ostringstream out, err;
    EXPECT_EQ(cli::run({"oa-verify", "--oa", "OA(4,3,2,2)"}, out, err), 0);
    EXPECT_EQ(out.str(), "ok: 4 runs, 3 columns, strength 2 holds\n");
}

TEST(OaVerifyCommand, BoseAndViolations) {
    std::ostringstream out, err;
    EXPECT_EQ(cli::run({"oa-verify", "--oa", "bose:7"}, out, err), 0);
    EXPECT_EQ(cli::run({"oa-verify", "--oa", "bose:6"}, out, err), 1);
    EXPECT_EQ(cli::run({"oa-verify", "--oa", "bose:x"}, out, err), 2);
    const auto path = std::filesystem::temp_directory_path() / "doeforge_bad_oa.csv";
    write_file(path, "#strength=2 levels=2,2\nc1,c2\n0,0\n0,1\n1,0\n0,0\n");
    out.str("");
    EXPECT_EQ(cli::run({"oa-verify", "--oa", path.string()}, out, err), 1);
    EXPECT_EQ(out.str().rfind("violation: ", 0), 0u);
    std::filesystem::remove(path);
}

TEST(Binary, ExitCodesThroughProcess) {
    const char* bin = std::getenv("DOEFORGE_BIN");
    if (!bin) GTEST_SKIP() << "DOEFORGE_BIN not set";
    const std::string b = bin;
    auto status = [](const std::string& cmd) { return WEXITSTATUS(std::system((cmd + " >/dev/null 2>&1").c_str())); };
    EXPECT_EQ(status(b + " gen --method halton --dim 2 --count 4"), 0);
    EXPECT_EQ(status(b + " gen --method halton --dim 2"), 2);
    EXPECT_EQ(status(b + " gen --method bbd --dim 2"), 1);
}

}  // namespace
}  // namespace doeforge
