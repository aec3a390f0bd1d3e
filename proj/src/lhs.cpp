#include <cmath>
#include <limits>
#include <utility>

#include "doeforge/errors.hpp"
#include "doeforge/quasi_random.hpp"
#include "strata.hpp"

namespace doeforge {
namespace {

struct ClosestPair {
    std::size_t a = 0;
    std::size_t b = 0;
    double dist2 = std::numeric_limits<double>::infinity();
};

ClosestPair closest_pair(const std::vector<double>& pts, std::size_t n, std::size_t d) {
    ClosestPair best;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < d; ++k) {
                const double diff = pts[i * d + k] - pts[j * d + k];
                s += diff * diff;
            }
            if (s < best.dist2) best = {i, j, s};
        }
    }
    return best;
}

Params lhs_params(const RandomStream& s) {
    return {{"rng", std::string(RandomStream::kAlgorithm)}, {"substream", std::to_string(s.substream())}};
}

}  // namespace

SampleSet lhs_basic(std::size_t n, std::size_t d, RandomStream stream) {
    if (n == 0) throw SizeError("need at least one point");
    if (d == 0) throw DimensionError("need at least one dimension");
    if (n > kMaxPoints / d) throw SizeError("design exceeds the point-count guard");
    const Params params = lhs_params(stream);

    std::vector<std::vector<std::size_t>> perms(d);
    for (auto& p : perms) p = stream.permutation(n);

    std::vector<double> pts(n * d);
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            // P_j(i) - U_j(i) with P in 1..n and U in (0,1]: stratum P-1 at offset 1-U.
            const double u = 1.0 - stream.uniform();
            pts[i * d + j] = detail::stratum_point(perms[j][i], 1.0 - u, n);
        }
    }
    return SampleSet(std::move(pts), d, Domain::unit_cube(), "lhs", stream.seed(), params);
}

MaximinResult lhs_maximin_run(std::size_t n, std::size_t d, RandomStream stream, std::size_t n_iter,
                              std::size_t m) {
    if (n < 2) throw SizeError("maximin LHS needs at least two points");
    const SampleSet start = lhs_basic(n, d, stream);
    RandomStream swaps = stream.fork(1);

    MaximinState state;
    state.current = start.data();
    ClosestPair pair = closest_pair(state.current, n, d);
    state.best = state.current;
    state.best_min_distance = std::sqrt(pair.dist2);

    MaximinResult result{start, state.best_min_distance, state.best_min_distance, {}, 0, 0, false};
    double current_d2 = pair.dist2;

    for (std::size_t it = 0; it < n_iter; ++it) {
        const double previous_d2 = current_d2;
        for (std::size_t t = 0; t < m; ++t) {
            const std::size_t row = swaps.below(2) == 0 ? pair.a : pair.b;
            const auto col = static_cast<std::size_t>(swaps.below(d));
            const auto other = static_cast<std::size_t>(swaps.below(n));
            if (other == row) continue;
            std::swap(state.current[row * d + col], state.current[other * d + col]);
            const ClosestPair cand = closest_pair(state.current, n, d);
            if (cand.dist2 > current_d2) {
                pair = cand;
                current_d2 = cand.dist2;
                ++result.accepted_swaps;
            } else {
                std::swap(state.current[row * d + col], state.current[other * d + col]);
            }
        }
        ++result.iterations;
        if (current_d2 > state.best_min_distance * state.best_min_distance) {
            state.best = state.current;
            state.best_min_distance = std::sqrt(current_d2);
        }
        result.history.push_back(state.best_min_distance);
        if (!(current_d2 > previous_d2)) {
            result.stopped_early = it + 1 < n_iter;
            break;
        }
    }

    Params params = lhs_params(stream);
    params["n_iter"] = std::to_string(n_iter);
    params["interchanges"] = std::to_string(m);
    params["iterations_run"] = std::to_string(result.iterations);
    params["min_distance"] = format_real(state.best_min_distance);
    result.best_min_distance = state.best_min_distance;
    result.design = SampleSet(std::move(state.best), d, Domain::unit_cube(), "maximin-lhs", stream.seed(),
                              std::move(params));
    return result;
}

SampleSet lhs_maximin(std::size_t n, std::size_t d, RandomStream stream, std::size_t n_iter, std::size_t m) {
    return lhs_maximin_run(n, d, stream, n_iter, m).design;
}

}  // namespace doeforge
