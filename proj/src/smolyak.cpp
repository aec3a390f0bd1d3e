#include <cmath>
#include <map>
#include <set>

#include "doeforge/errors.hpp"
#include "doeforge/grid.hpp"
#include "tensor.hpp"

namespace doeforge {
namespace {

void validate(const GridLevelSpec& spec) {
    if (spec.mu == 0) throw DomainError("sparse grid level mu must be >= 1");
    if (spec.beta == 0) throw DimensionError("sparse grid dimension beta must be >= 1");
}

// Nested CGL levels 1..finest with every node mapped to its index on the finest level.
struct NestedLevels {
    std::size_t finest = 1;
    std::size_t finest_count = 1;
    std::vector<NodeSet1D> nodes;                     // index = level, [0] unused
    std::vector<std::vector<std::size_t>> to_finest;  // index = level

    explicit NestedLevels(std::size_t finest_level) : finest(finest_level) {
        finest_count = cgl_count(finest);
        nodes.resize(finest + 1);
        to_finest.resize(finest + 1);
        for (std::size_t j = 1; j <= finest; ++j) {
            nodes[j] = cgl_nodes(j);
            const std::size_t n = nodes[j].nodes.size();
            to_finest[j].resize(n);
            if (j == 1) {
                to_finest[j][0] = (finest_count - 1) / 2;
            } else {
                const std::size_t stride = std::size_t{1} << (finest - j);
                for (std::size_t i = 0; i < n; ++i) to_finest[j][i] = i * stride;
            }
        }
    }

    // Position of level (j-1) node i inside level j (j >= 2).
    static std::size_t embed(std::size_t j, std::size_t i) { return j == 2 ? 1 : 2 * i; }
};

void enumerate(std::size_t beta, std::size_t budget, std::vector<std::size_t>& current,
               std::vector<std::vector<std::size_t>>& out) {
    if (current.size() == beta) {
        out.push_back(current);
        return;
    }
    const std::size_t remaining_dims = beta - current.size() - 1;
    for (std::size_t j = 1; j + remaining_dims <= budget; ++j) {
        current.push_back(j);
        enumerate(beta, budget - j, current, out);
        current.pop_back();
    }
}

std::vector<std::size_t> counts_for(const NestedLevels& lv, std::span<const std::size_t> multi) {
    std::vector<std::size_t> counts;
    counts.reserve(multi.size());
    for (std::size_t j : multi) counts.push_back(lv.nodes[j].nodes.size());
    return counts;
}

// Union of the tensor grids as sorted finest-level index tuples.
std::set<std::vector<std::size_t>> union_indices(const GridLevelSpec& spec, const NestedLevels& lv,
                                                 const std::vector<std::vector<std::size_t>>& multis) {
    std::set<std::vector<std::size_t>> out;
    std::vector<std::size_t> fine(spec.beta);
    for (const auto& multi : multis) {
        detail::for_each_index(counts_for(lv, multi), [&](std::span<const std::size_t> idx) {
            for (std::size_t k = 0; k < spec.beta; ++k) fine[k] = lv.to_finest[multi[k]][idx[k]];
            out.insert(fine);
            if (out.size() > kMaxPoints) throw SizeError("sparse grid exceeds the point-count guard");
        });
    }
    return out;
}

}  // namespace

std::vector<std::vector<std::size_t>> smolyak_indices(const GridLevelSpec& spec) {
    validate(spec);
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> current;
    enumerate(spec.beta, spec.mu + spec.beta - 1, current, out);
    return out;
}

SampleSet sparse_grid(const GridLevelSpec& spec) {
    const auto multis = smolyak_indices(spec);
    const NestedLevels lv(spec.mu);
    const auto fine = union_indices(spec, lv, multis);
    const auto& xs = lv.nodes[spec.mu].nodes;
    std::vector<double> pts;
    pts.reserve(fine.size() * spec.beta);
    for (const auto& idx : fine) {
        for (std::size_t i : idx) pts.push_back(xs[i]);
    }
    return SampleSet(std::move(pts), spec.beta, Domain::coded(), "sparse-grid", std::nullopt,
                     {{"mu", std::to_string(spec.mu)}, {"beta", std::to_string(spec.beta)}});
}

SmolyakInterpolant::SmolyakInterpolant(const GridLevelSpec& spec, const GridFunction& f) : spec_(spec) {
    indices_ = smolyak_indices(spec);
    const NestedLevels lv(spec.mu);
    finest_ = lv.finest;
    finest_count_ = lv.finest_count;
    if (std::log2(static_cast<double>(finest_count_)) * static_cast<double>(spec.beta) >= 63.0) {
        throw SizeError("sparse grid too large to index");
    }
    levels_ = lv.nodes;
    to_finest_ = lv.to_finest;

    const auto& xs = lv.nodes[finest_].nodes;
    std::vector<double> point(spec.beta);
    for (const auto& idx : union_indices(spec, lv, indices_)) {
        for (std::size_t k = 0; k < spec.beta; ++k) point[k] = xs[idx[k]];
        values_.emplace(key(idx), f(point));
    }
}

std::uint64_t SmolyakInterpolant::key(std::span<const std::size_t> fine_index) const {
    std::uint64_t k = 0;
    for (std::size_t i : fine_index) k = k * finest_count_ + i;
    return k;
}

double SmolyakInterpolant::operator()(std::span<const double> query) const {
    const std::size_t beta = spec_.beta;
    if (query.size() != beta) throw ShapeError("query dimension does not match the interpolant");
    for (double x : query) {
        if (!(x >= -1.0 && x <= 1.0)) throw DomainError("query lies outside [-1,1]^d");
    }

    // diff[k][j]: 1-D difference basis D^j at query[k] on the level-j nodes.
    std::vector<std::vector<std::vector<double>>> diff(beta, std::vector<std::vector<double>>(finest_ + 1));
    for (std::size_t k = 0; k < beta; ++k) {
        std::vector<double> coarser;
        for (std::size_t j = 1; j <= finest_; ++j) {
            std::vector<double> basis = barycentric_basis(levels_[j], query[k]);
            diff[k][j] = basis;
            if (j >= 2) {
                for (std::size_t i = 0; i < coarser.size(); ++i) diff[k][j][NestedLevels::embed(j, i)] -= coarser[i];
            }
            coarser = std::move(basis);
        }
    }

    double acc = 0.0;
    std::vector<std::size_t> fine(beta);
    std::vector<std::size_t> counts(beta);
    for (const auto& multi : indices_) {
        for (std::size_t k = 0; k < beta; ++k) counts[k] = levels_[multi[k]].nodes.size();
        detail::for_each_index(counts, [&](std::span<const std::size_t> idx) {
            double w = 1.0;
            for (std::size_t k = 0; k < beta && w != 0.0; ++k) w *= diff[k][multi[k]][idx[k]];
            if (w == 0.0) return;
            for (std::size_t k = 0; k < beta; ++k) fine[k] = to_finest_[multi[k]][idx[k]];
            acc += w * values_.at(key(fine));
        });
    }
    return acc;
}

double smolyak_interpolate(const GridLevelSpec& spec, const GridFunction& f, std::span<const double> query) {
    return SmolyakInterpolant(spec, f)(query);
}

QuadratureRule sparse_quadrature_rule(const GridLevelSpec& spec) {
    const auto multis = smolyak_indices(spec);
    const NestedLevels lv(spec.mu);
    const std::size_t beta = spec.beta;

    // 1-D difference weights per level.
    std::vector<std::vector<double>> dw(lv.finest + 1);
    for (std::size_t j = 1; j <= lv.finest; ++j) {
        dw[j] = cc_weights(j).weights;
        if (j >= 2) {
            const auto coarser = cc_weights(j - 1).weights;
            for (std::size_t i = 0; i < coarser.size(); ++i) dw[j][NestedLevels::embed(j, i)] -= coarser[i];
        }
    }

    std::map<std::vector<std::size_t>, double> acc;
    for (const auto& idx : union_indices(spec, lv, multis)) acc.emplace(idx, 0.0);
    std::vector<std::size_t> fine(beta);
    for (const auto& multi : multis) {
        detail::for_each_index(counts_for(lv, multi), [&](std::span<const std::size_t> idx) {
            double w = 1.0;
            for (std::size_t k = 0; k < beta; ++k) {
                w *= dw[multi[k]][idx[k]];
                fine[k] = lv.to_finest[multi[k]][idx[k]];
            }
            acc[fine] += w;
        });
    }

    QuadratureRule rule;
    rule.dims = beta;
    const auto& xs = lv.nodes[lv.finest].nodes;
    for (const auto& [idx, w] : acc) {
        for (std::size_t i : idx) rule.nodes.push_back(xs[i]);
        rule.weights.push_back(w);
    }
    return rule;
}

double sparse_quadrature(const GridLevelSpec& spec, const GridFunction& f) {
    const QuadratureRule rule = sparse_quadrature_rule(spec);
    double acc = 0.0;
    for (std::size_t r = 0; r < rule.weights.size(); ++r) {
        acc += rule.weights[r] * f(std::span<const double>(rule.nodes.data() + r * rule.dims, rule.dims));
    }
    return acc;
}

}  // namespace doeforge
