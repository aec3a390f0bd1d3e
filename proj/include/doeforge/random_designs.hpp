#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "doeforge/core.hpp"
#include "doeforge/random_stream.hpp"

namespace doeforge {

// n i.i.d. points uniform on [0,1)^d.
SampleSet uniform_random(std::size_t n, std::size_t d, RandomStream stream);

using LogDensity = std::function<double(std::span<const double>)>;

struct MhConfig {
    double proposal_scale = 0.1;  // std-dev of the isotropic Gaussian step, unit-cube units
    std::size_t burn_in = 1000;
    std::size_t thin = 10;
    std::vector<double> init;     // empty = cube center
};

// Random-walk Metropolis-Hastings restricted to [0,1]^d. Output state k is the
// chain after burn_in + (k+1) * thin steps. Proposals outside the cube are
// rejected. params() records acceptance_rate and in_cube_rate.
SampleSet metropolis_hastings(std::size_t n, std::size_t d, const LogDensity& log_density, const MhConfig& cfg,
                              RandomStream stream);

// Built-in targets exposed through the CLI.
LogDensity uniform_log_density();
LogDensity gaussian_log_density(double mu, double sigma);

}  // namespace doeforge
