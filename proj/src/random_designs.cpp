#include "doeforge/random_designs.hpp"

#include <cmath>
#include <limits>

#include "doeforge/errors.hpp"

namespace doeforge {
namespace {

Params stream_params(const RandomStream& s) {
    return {{"rng", std::string(RandomStream::kAlgorithm)}, {"substream", std::to_string(s.substream())}};
}

bool in_unit_cube(std::span<const double> x) {
    for (double v : x) {
        if (!(v >= 0.0 && v <= 1.0)) return false;
    }
    return true;
}

}  // namespace

SampleSet uniform_random(std::size_t n, std::size_t d, RandomStream stream) {
    if (n == 0) throw SizeError("need at least one point");
    if (d == 0) throw DimensionError("need at least one dimension");
    if (n > kMaxPoints / d) throw SizeError("design exceeds the point-count guard");
    const Params params = stream_params(stream);
    std::vector<double> pts(n * d);
    for (double& x : pts) x = stream.uniform();
    return SampleSet(std::move(pts), d, Domain::unit_cube(), "random", stream.seed(), params);
}

SampleSet metropolis_hastings(std::size_t n, std::size_t d, const LogDensity& log_density, const MhConfig& cfg,
                              RandomStream stream) {
    if (n == 0) throw SizeError("need at least one point");
    if (d == 0) throw DimensionError("need at least one dimension");
    if (cfg.thin < 1) throw InitError("thin must be >= 1");
    if (!(cfg.proposal_scale > 0.0)) throw InitError("proposal scale must be positive");
    if (n > kMaxPoints / d) throw SizeError("design exceeds the point-count guard");

    std::vector<double> state = cfg.init.empty() ? std::vector<double>(d, 0.5) : cfg.init;
    if (state.size() != d) throw DimensionError("initial state has the wrong dimension");
    if (!in_unit_cube(state)) throw InitError("initial state lies outside the unit cube");
    double current = log_density(state);
    if (!std::isfinite(current)) throw InitError("log density is not finite at the initial state");

    Params params = stream_params(stream);
    std::vector<double> proposal(d);
    std::vector<double> pts;
    pts.reserve(n * d);
    std::size_t steps = 0;
    std::size_t accepted = 0;
    std::size_t in_cube = 0;

    const std::size_t total = cfg.burn_in + n * cfg.thin;
    for (std::size_t step = 1; step <= total; ++step) {
        for (std::size_t k = 0; k < d; ++k) proposal[k] = state[k] + cfg.proposal_scale * stream.normal();
        const double u = stream.uniform();  // drawn every step so thinning never shifts the stream
        ++steps;
        if (in_unit_cube(proposal)) {
            ++in_cube;
            const double cand = log_density(proposal);
            const double delta = cand - current;
            if (std::isfinite(cand) && (delta >= 0.0 || u < std::exp(delta))) {
                state = proposal;
                current = cand;
                ++accepted;
            }
        }
        if (step > cfg.burn_in && (step - cfg.burn_in) % cfg.thin == 0) {
            pts.insert(pts.end(), state.begin(), state.end());
        }
    }

    params["proposal_scale"] = format_real(cfg.proposal_scale);
    params["burn_in"] = std::to_string(cfg.burn_in);
    params["thin"] = std::to_string(cfg.thin);
    params["acceptance_rate"] = format_real(static_cast<double>(accepted) / static_cast<double>(steps));
    params["in_cube_rate"] = format_real(static_cast<double>(in_cube) / static_cast<double>(steps));
    params["accepted"] = std::to_string(accepted);
    params["in_cube"] = std::to_string(in_cube);
    params["steps"] = std::to_string(steps);
    return SampleSet(std::move(pts), d, Domain::unit_cube(), "mh", stream.seed(), std::move(params));
}

LogDensity uniform_log_density() {
    return [](std::span<const double>) { return 0.0; };
}

LogDensity gaussian_log_density(double mu, double sigma) {
    if (!(sigma > 0.0)) throw InitError("gaussian sigma must be positive");
    return [mu, sigma](std::span<const double> x) {
        double s = 0.0;
        for (double v : x) s += (v - mu) * (v - mu);
        return -0.5 * s / (sigma * sigma);
    };
}

}  // namespace doeforge
