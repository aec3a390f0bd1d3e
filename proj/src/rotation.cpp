#include <algorithm>
#include <cmath>
#include <numbers>

#include "doeforge/errors.hpp"
#include "doeforge/grid.hpp"
#include "doeforge/metrics.hpp"

namespace doeforge {

RotationSpec RotationSpec::all_planes(double theta, std::size_t dims) {
    RotationSpec spec{theta, {}};
    for (std::size_t i = 0; i < dims; ++i) {
        for (std::size_t j = i + 1; j < dims; ++j) spec.planes.emplace_back(i, j);
    }
    return spec;
}

std::vector<double> rotation_matrix(std::size_t dims, const RotationSpec& spec) {
    std::vector<double> r(dims * dims, 0.0);
    for (std::size_t i = 0; i < dims; ++i) r[i * dims + i] = 1.0;
    const double c = std::cos(spec.theta);
    const double s = std::sin(spec.theta);
    for (const auto& [a, b] : spec.planes) {
        if (a >= b || b >= dims) throw DimensionError("rotation plane must satisfy i < j < dims");
        // Left-multiply by the Givens rotation of plane (a, b).
        for (std::size_t col = 0; col < dims; ++col) {
            const double ra = r[a * dims + col];
            const double rb = r[b * dims + col];
            r[a * dims + col] = c * ra - s * rb;
            r[b * dims + col] = s * ra + c * rb;
        }
    }
    return r;
}

SampleSet rotate_points(const SampleSet& s, const RotationSpec& spec) {
    if (s.domain().kind() != DomainKind::CodedPM1) throw DomainError("rotation expects a coded [-1,1] set");
    const std::size_t d = s.dims();
    const std::vector<double> r = rotation_matrix(d, spec);
    std::vector<double> out(s.data().size());
    double peak = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t a = 0; a < d; ++a) {
            double acc = 0.0;
            for (std::size_t b = 0; b < d; ++b) acc += r[a * d + b] * s(i, b);
            out[i * d + a] = acc;
            peak = std::max(peak, std::abs(acc));
        }
    }
    const double scale = peak > 1.0 ? 1.0 / peak : 1.0;
    if (scale != 1.0) {
        for (double& x : out) x = std::clamp(x * scale, -1.0, 1.0);
    }
    Params params = s.params();
    params["theta"] = format_real(spec.theta);
    params["rotation_scale"] = format_real(scale);
    return SampleSet(std::move(out), d, Domain::coded(), s.method(), s.seed(), std::move(params));
}

RotationResult optimize_rotation(const SampleSet& s, RotationObjective objective, double step) {
    if (!(step > 0.0) || !std::isfinite(step)) throw DomainError("angle step must be positive");
    if (s.domain().kind() != DomainKind::CodedPM1) throw DomainError("rotation expects a coded [-1,1] set");
    const std::size_t d = s.dims();

    auto evaluate = [&](const SampleSet& rotated) {
        if (objective == RotationObjective::Maximin) return maximin_distance(rotated);
        return centered_l2_discrepancy(normalize_to_unit_cube(rotated));
    };

    auto spec_at = [&](double theta) { return RotationSpec::all_planes(theta, d); };
    // One point (or one dimension) is rotation-invariant for these purposes.
    if (s.size() < 2 || d < 2) {
        SampleSet rotated = rotate_points(s, spec_at(0.0));
        const double value = s.size() < 2 ? 0.0 : evaluate(rotated);
        return {0.0, value, std::move(rotated)};
    }

    const double limit = std::numbers::pi / 4.0;
    const auto steps = static_cast<std::size_t>(std::floor(limit / step * (1.0 + 1e-12)));
    RotationResult best{0.0, 0.0, rotate_points(s, spec_at(0.0))};
    best.objective = evaluate(best.points);
    for (std::size_t k = 1; k <= steps; ++k) {
        const double theta = static_cast<double>(k) * step;
        SampleSet rotated = rotate_points(s, spec_at(theta));
        const double value = evaluate(rotated);
        const double margin = 1e-12 * std::max(1.0, std::abs(best.objective));
        const bool better = objective == RotationObjective::Maximin ? value > best.objective + margin
                                                                    : value < best.objective - margin;
        if (better) best = {theta, value, std::move(rotated)};
    }
    best.points.set_param("rotation_objective", objective == RotationObjective::Maximin ? "maximin" : "centered_l2");
    return best;
}

}  // namespace doeforge
