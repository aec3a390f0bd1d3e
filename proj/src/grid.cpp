#include <cmath>
#include <numbers>

#include "doeforge/errors.hpp"
#include "doeforge/grid.hpp"
#include "tensor.hpp"

namespace doeforge {

std::size_t cgl_count(std::size_t level) {
    if (level == 0) throw DomainError("grid level must be >= 1");
    if (level > 31) throw SizeError("grid level too large");
    return level == 1 ? 1 : (std::size_t{1} << (level - 1)) + 1;
}

NodeSet1D cgl_nodes(std::size_t level) {
    const std::size_t n = cgl_count(level);
    NodeSet1D out{level, std::vector<double>(n, 0.0)};
    if (n == 1) return out;
    const auto big_n = static_cast<long long>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        const auto num = static_cast<double>(2 * static_cast<long long>(i) - big_n);
        out.nodes[i] = std::sin(std::numbers::pi * num / static_cast<double>(2 * big_n));
    }
    return out;
}

QuadratureWeights cc_weights(std::size_t level) {
    const std::size_t n = cgl_count(level);
    QuadratureWeights out{level, std::vector<double>(n, 0.0)};
    if (n == 1) {
        out.weights[0] = 2.0;
        return out;
    }
    const double nd = static_cast<double>(n);
    const double end = 1.0 / (nd * (nd - 2.0));
    out.weights.front() = end;
    out.weights.back() = end;
    for (std::size_t i = 2; i <= n - 1; ++i) {
        const double im1 = static_cast<double>(i - 1);
        double sum = 0.0;
        for (std::size_t k = 1; 2 * k + 3 <= n; ++k) {
            const double kd = static_cast<double>(k);
            sum += std::cos(2.0 * std::numbers::pi * kd * im1 / (nd - 1.0)) / (4.0 * kd * kd - 1.0);
        }
        const double alt = (i - 1) % 2 == 0 ? 1.0 : -1.0;  // cos(pi (i-1))
        out.weights[i - 1] = 2.0 / (nd - 1.0) * (1.0 - alt / (nd * (nd - 2.0)) - 2.0 * sum);
    }
    // Exact mirror symmetry.
    for (std::size_t i = 0; i < n / 2; ++i) out.weights[n - 1 - i] = out.weights[i];
    return out;
}

std::vector<double> lagrange_basis(const NodeSet1D& nodes, double x) {
    const auto& xs = nodes.nodes;
    const std::size_t n = xs.size();
    std::vector<double> out(n, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            if (k != i) out[i] *= (x - xs[k]) / (xs[i] - xs[k]);
        }
    }
    return out;
}

std::vector<double> barycentric_basis(const NodeSet1D& nodes, double x) {
    const auto& xs = nodes.nodes;
    const std::size_t n = xs.size();
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (x == xs[i]) {
            out[i] = 1.0;
            return out;
        }
    }
    double denom = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double w = i % 2 == 0 ? 1.0 : -1.0;
        if (i == 0 || i + 1 == n) w *= 0.5;
        out[i] = w / (x - xs[i]);
        denom += out[i];
    }
    for (double& v : out) v /= denom;
    return out;
}

SampleSet full_grid(const std::vector<std::size_t>& levels) {
    if (levels.empty()) throw DimensionError("full grid needs at least one dimension");
    std::vector<NodeSet1D> axes;
    std::vector<std::size_t> counts;
    std::size_t total = 1;
    for (std::size_t j : levels) {
        axes.push_back(cgl_nodes(j));
        counts.push_back(axes.back().nodes.size());
        if (total > kMaxPoints / counts.back()) throw SizeError("full grid exceeds the point-count guard");
        total *= counts.back();
    }
    const std::size_t d = levels.size();
    std::vector<double> pts;
    pts.reserve(total * d);
    detail::for_each_index(counts, [&](std::span<const std::size_t> idx) {
        for (std::size_t k = 0; k < d; ++k) pts.push_back(axes[k].nodes[idx[k]]);
    });
    std::string lv;
    for (std::size_t j : levels) lv += (lv.empty() ? "" : ",") + std::to_string(j);
    return SampleSet(std::move(pts), d, Domain::coded(), "full-grid", std::nullopt, {{"levels", lv}});
}

double lagrange_interpolate(const std::vector<std::size_t>& levels, std::span<const double> f_values,
                            std::span<const double> query) {
    if (levels.empty()) throw DimensionError("need at least one dimension");
    if (query.size() != levels.size()) throw ShapeError("query dimension does not match the grid");
    std::vector<std::size_t> counts;
    std::vector<std::vector<double>> basis;
    std::size_t total = 1;
    for (std::size_t k = 0; k < levels.size(); ++k) {
        if (!(query[k] >= -1.0 && query[k] <= 1.0)) throw DomainError("query lies outside [-1,1]^d");
        const NodeSet1D nodes = cgl_nodes(levels[k]);
        counts.push_back(nodes.nodes.size());
        basis.push_back(lagrange_basis(nodes, query[k]));
        total *= counts.back();
    }
    if (f_values.size() != total) {
        throw ShapeError("expected " + std::to_string(total) + " function values, got " +
                         std::to_string(f_values.size()));
    }
    double acc = 0.0;
    std::size_t flat = 0;
    detail::for_each_index(counts, [&](std::span<const std::size_t> idx) {
        double w = 1.0;
        for (std::size_t k = 0; k < idx.size(); ++k) w *= basis[k][idx[k]];
        acc += w * f_values[flat++];
    });
    return acc;
}

}  // namespace doeforge
