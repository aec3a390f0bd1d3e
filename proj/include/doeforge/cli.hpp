#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace doeforge::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // generation / runtime failure
inline constexpr int kExitUsage = 2;    // bad flags or flag combination

struct CompareRequest {
    std::vector<std::string> methods;
    std::size_t dim = 2;
    std::optional<std::size_t> count;   // count-based methods
    std::optional<std::size_t> level;   // grid methods
    std::size_t seeds = 1;
    std::uint64_t seed_base = 0;
    std::vector<std::string> metrics = {"maximin", "centered_l2"};
    std::map<std::string, std::string> options;  // passed to every method that accepts them
    std::size_t threads = 0;  // 0 = DOE_FORGE_THREADS / hardware
};

struct CompareResult {
    nlohmann::json report;
    std::string csv;  // method,seed,metric,value
    bool all_ok = true;
};

inline const std::vector<std::string>& metric_names() {
    static const std::vector<std::string> names = {"maximin", "centered_l2", "star_disc"};
    return names;
}

// Worker count: `requested` if nonzero, else DOE_FORGE_THREADS (0 = auto), capped by `jobs`.
std::size_t worker_count(std::size_t requested, std::size_t jobs);

// Throws UsageError for unknown methods / metrics or invalid per-method requests.
CompareResult run_compare(const CompareRequest& req);

// Quartiles by linear interpolation between order statistics.
double quantile(std::vector<double> values, double q);

// Entry point: args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace doeforge::cli
