#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "doeforge/core.hpp"
#include "doeforge/random_stream.hpp"

namespace doeforge {

// ---------------------------------------------------------------- Latin hypercubes

// Column j: x_ij = (P_j(i) - U_j(i)) / n with P_j a random permutation of 1..n
// and U_j in (0,1], so every column has exactly one point per stratum [k/n, (k+1)/n).
SampleSet lhs_basic(std::size_t n, std::size_t d, RandomStream stream);

struct MaximinState {
    std::vector<double> current;   // n x d, row-major
    std::vector<double> best;
    double best_min_distance = 0.0;
};

struct MaximinResult {
    SampleSet design;
    double initial_min_distance = 0.0;
    double best_min_distance = 0.0;
    std::vector<double> history;   // best min distance after each iteration
    std::size_t iterations = 0;
    std::size_t accepted_swaps = 0;
    bool stopped_early = false;
};

// Maximin LHS by column-wise row interchanges. Starts from lhs_basic(n, d, stream);
// each iteration tries m swaps between one row of the current closest pair and a
// random row in a random column, keeping a swap only if it increases the minimum
// pairwise distance. Stops early after an iteration that fails to improve.
MaximinResult lhs_maximin_run(std::size_t n, std::size_t d, RandomStream stream, std::size_t n_iter = 50,
                              std::size_t m = 100);
SampleSet lhs_maximin(std::size_t n, std::size_t d, RandomStream stream, std::size_t n_iter = 50,
                      std::size_t m = 100);

// ---------------------------------------------------------------- CVT

struct CvtConfig {
    std::size_t n_iter = 200;
    std::size_t m = 0;  // random points per iteration; 0 = max(1000, 100 n)
    double alpha1 = 0.5;
    double alpha2 = 0.5;
    double beta1 = 0.5;
    double beta2 = 0.5;
    double tol = 1e-4;  // mean generator displacement
};

using Density = std::function<double(std::span<const double>)>;

struct CvtResult {
    SampleSet generators;
    std::size_t iterations = 0;
    double final_displacement = 0.0;
    bool converged = false;  // true: displacement < tol; false: ran n_iter iterations
};

// Probabilistic Lloyd iteration with the (alpha, beta) weighted centroid update.
// A non-uniform density is applied as importance weights on uniform draws.
CvtResult cvt_run(std::size_t n, std::size_t d, RandomStream stream, const CvtConfig& cfg = {},
                  const std::optional<Density>& density = std::nullopt);
SampleSet cvt(std::size_t n, std::size_t d, RandomStream stream, const CvtConfig& cfg = {},
              const std::optional<Density>& density = std::nullopt);

// ---------------------------------------------------------------- digit sequences

struct SequenceOptions {
    enum class Order { Binary, Gray };
    // Emit index 0 (the origin) as the first of the n points.
    bool include_zero = false;
    // Sobol only: digits of the index (Binary) or of its Gray code.
    Order order = Order::Binary;
};

struct SobolDimension {
    unsigned degree = 0;              // q; 0 marks the identity dimension v_i = 2^-i
    std::uint32_t coefficients = 0;   // b_1..b_{q-1}, b_1 most significant
    std::vector<std::uint32_t> m;     // odd initial integers, m_i < 2^i
};

struct SobolParams {
    std::vector<SobolDimension> dimensions;
    unsigned bits = 32;  // w

    // First `d` dimensions of the bundled Joe-Kuo catalog (d <= 50).
    static SobolParams catalog(std::size_t d);
    static std::size_t catalog_size();
    // Text format, one line per dimension: "d q a m1 .. mq"; '#' starts a comment.
    static SobolParams parse(std::string_view text);
    static SobolParams load(const std::filesystem::path& path);

    // Direction integers V_1..V_w of dimension j as w-bit fixed point (v_i = V_i / 2^w).
    std::vector<std::uint32_t> direction_integers(std::size_t j) const;
};

SampleSet sobol(std::size_t n, std::size_t d, const SobolParams& params, const SequenceOptions& opts = {});
SampleSet sobol(std::size_t n, std::size_t d, const SequenceOptions& opts = {});

// Radical inverse of `index` in `base`, computed as one correctly-rounded division.
double radical_inverse(std::uint64_t base, std::uint64_t index);
// First `count` primes.
std::vector<std::uint64_t> first_primes(std::size_t count);
std::uint64_t smallest_prime_at_least(std::uint64_t x);

// Dimension k uses the k-th prime; indices 1..n.
SampleSet halton(std::size_t n, std::size_t d, const SequenceOptions& opts = {});
// Point i = (i/n, Phi_2(i), Phi_3(i), ...), i = 1..n; d >= 2.
SampleSet hammersley(std::size_t n, std::size_t d);
// Base m = smallest prime >= max(d, 2); dimension k applies the k-th power of the
// Pascal matrix mod m to the index digits before radical inversion.
SampleSet faure(std::size_t n, std::size_t d, const SequenceOptions& opts = {});
std::uint64_t faure_base(std::size_t d);

}  // namespace doeforge
