#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>

#include "doeforge/core.hpp"

namespace doeforge {

// Minimum pairwise Euclidean distance, in the set's own coordinates. n >= 2.
double maximin_distance(const SampleSet& s);

// Hickernell's centered L2 discrepancy (square root of the closed form)
//   CD^2 = (13/12)^d
//        - (2/n)   sum_i prod_k (1 + |z_ik|/2 - z_ik^2/2)
//        + (1/n^2) sum_i sum_j prod_k (1 + |z_ik|/2 + |z_jk|/2 - |x_ik - x_jk|/2),
// z = x - 1/2. Every point must lie in [0,1]^d.
double centered_l2_discrepancy(const SampleSet& s);
double centered_l2_discrepancy(std::span<const double> points, std::size_t dims);

inline constexpr std::size_t kStarMaxPoints = 512;
inline constexpr std::size_t kStarMaxDims = 3;

// Exact star discrepancy sup_y |#{x in [0,y)}/n - vol[0,y)| over [0,1]^d by
// enumerating corners on the grid of sample coordinates plus 1. Limited to
// n <= 512, d <= 3.
double star_discrepancy_smallcase(const SampleSet& s);
double star_discrepancy_smallcase(std::span<const double> points, std::size_t dims);
bool star_discrepancy_within_budget(std::size_t n, std::size_t d);

double mse(std::span<const double> a, std::span<const double> b);

struct MetricReport {
    std::string method;
    std::size_t n = 0;
    std::size_t d = 0;
    double maximin = 0.0;
    double centered_l2 = 0.0;
    std::optional<double> star_disc;
    double elapsed = 0.0;  // seconds spent generating and scoring
};

// Scores a set after mapping it onto [0,1]^d. star_disc is filled only when
// with_star is set and the exact enumeration budget allows it.
MetricReport score(const SampleSet& s, double elapsed_seconds = 0.0, bool with_star = true);

}  // namespace doeforge
