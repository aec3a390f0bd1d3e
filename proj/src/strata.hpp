#pragma once

#include <cmath>
#include <cstddef>

namespace doeforge::detail {

// Point of stratum k of n at relative offset u in [0,1), nudged so that
// floor(x * n) == k holds after rounding.
inline double stratum_point(std::size_t k, double u, std::size_t n) {
    const double nd = static_cast<double>(n);
    const double kd = static_cast<double>(k);
    double x = (kd + u) / nd;
    while (std::floor(x * nd) > kd) x = std::nextafter(x, 0.0);
    while (std::floor(x * nd) < kd) x = std::nextafter(x, 1.0);
    return x;
}

}  // namespace doeforge::detail
