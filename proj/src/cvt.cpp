#include <algorithm>
#include <cmath>
#include <limits>

#include "doeforge/errors.hpp"
#include "doeforge/quasi_random.hpp"

namespace doeforge {
namespace {

void validate(const CvtConfig& cfg) {
    constexpr double eps = 1e-12;
    if (std::abs(cfg.alpha1 + cfg.alpha2 - 1.0) > eps || std::abs(cfg.beta1 + cfg.beta2 - 1.0) > eps) {
        throw InitError("CVT weights must satisfy alpha1 + alpha2 = 1 and beta1 + beta2 = 1");
    }
    if (!(cfg.alpha2 > 0.0) || !(cfg.beta2 > 0.0)) throw InitError("CVT weights alpha2 and beta2 must be positive");
    if (cfg.n_iter == 0) throw InitError("CVT needs at least one iteration");
    if (!(cfg.tol > 0.0)) throw InitError("CVT tolerance must be positive");
}

}  // namespace

CvtResult cvt_run(std::size_t n, std::size_t d, RandomStream stream, const CvtConfig& cfg,
                  const std::optional<Density>& density) {
    if (n == 0) throw SizeError("need at least one generator");
    if (d == 0) throw DimensionError("need at least one dimension");
    validate(cfg);
    const std::size_t m = cfg.m == 0 ? std::max<std::size_t>(1000, 100 * n) : cfg.m;

    std::vector<double> gen(n * d);
    for (double& x : gen) x = stream.uniform();
    std::vector<double> updates(n, 1.0);  // p_i

    RandomStream draws = stream.fork(1);
    std::vector<double> y(d);
    std::vector<double> sum(n * d);
    std::vector<double> mass(n);
    std::vector<double> previous(n * d);

    CvtResult result{SampleSet({0.5}, 1, Domain::unit_cube(), "cvt"), 0, 0.0, false};
    for (std::size_t it = 0; it < cfg.n_iter; ++it) {
        std::fill(sum.begin(), sum.end(), 0.0);
        std::fill(mass.begin(), mass.end(), 0.0);
        double total_mass = 0.0;
        for (std::size_t s = 0; s < m; ++s) {
            for (double& v : y) v = draws.uniform();
            double w = 1.0;
            if (density) {
                w = (*density)(y);
                if (!(w >= 0.0) || !std::isfinite(w)) throw DensityError("density must be finite and nonnegative");
                if (w == 0.0) continue;
            }
            std::size_t nearest = 0;
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < n; ++i) {
                double d2 = 0.0;
                for (std::size_t k = 0; k < d; ++k) {
                    const double diff = y[k] - gen[i * d + k];
                    d2 += diff * diff;
                }
                if (d2 < best) {
                    best = d2;
                    nearest = i;
                }
            }
            mass[nearest] += w;
            total_mass += w;
            for (std::size_t k = 0; k < d; ++k) sum[nearest * d + k] += w * y[k];
        }
        if (total_mass == 0.0) throw DensityError("density vanished on every sample of an iteration");

        previous = gen;
        for (std::size_t i = 0; i < n; ++i) {
            if (mass[i] == 0.0) continue;  // empty cell: generator unchanged
            const double p = updates[i];
            const double keep = cfg.alpha1 * p + cfg.beta1;
            const double move = cfg.alpha2 * p + cfg.beta2;
            for (std::size_t k = 0; k < d; ++k) {
                const double centroid = sum[i * d + k] / mass[i];
                gen[i * d + k] = std::clamp((keep * gen[i * d + k] + move * centroid) / (p + 1.0), 0.0, 1.0);
            }
            updates[i] = p + 1.0;
        }

        double displacement = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double d2 = 0.0;
            for (std::size_t k = 0; k < d; ++k) {
                const double diff = gen[i * d + k] - previous[i * d + k];
                d2 += diff * diff;
            }
            displacement += std::sqrt(d2);
        }
        displacement /= static_cast<double>(n);
        result.iterations = it + 1;
        result.final_displacement = displacement;
        if (displacement < cfg.tol) {
            result.converged = true;
            break;
        }
    }

    Params params{{"rng", std::string(RandomStream::kAlgorithm)},
                  {"substream", std::to_string(stream.substream())},
                  {"n_iter", std::to_string(cfg.n_iter)},
                  {"samples_per_iteration", std::to_string(m)},
                  {"alpha1", format_real(cfg.alpha1)},
                  {"alpha2", format_real(cfg.alpha2)},
                  {"beta1", format_real(cfg.beta1)},
                  {"beta2", format_real(cfg.beta2)},
                  {"tol", format_real(cfg.tol)},
                  {"iterations_run", std::to_string(result.iterations)},
                  {"final_displacement", format_real(result.final_displacement)},
                  {"termination", result.converged ? "tolerance" : "max_iterations"}};
    if (density) params["density"] = "custom";
    if (m < n) params["warning"] = "fewer random samples than generators; empty cells likely";
    result.generators = SampleSet(std::move(gen), d, Domain::unit_cube(), "cvt", stream.seed(), std::move(params));
    return result;
}

SampleSet cvt(std::size_t n, std::size_t d, RandomStream stream, const CvtConfig& cfg,
              const std::optional<Density>& density) {
    return cvt_run(n, d, stream, cfg, density).generators;
}

}  // namespace doeforge
