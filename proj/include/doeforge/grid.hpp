#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "doeforge/core.hpp"

namespace doeforge {

// Level mu and dimension beta of an isotropic Smolyak construction.
struct GridLevelSpec {
    std::size_t mu = 1;
    std::size_t beta = 1;
};

// n_j = 1 for j = 1, 2^(j-1) + 1 otherwise.
std::size_t cgl_count(std::size_t level);

struct NodeSet1D {
    std::size_t level = 1;
    std::vector<double> nodes;  // strictly increasing, nested across levels
};

// Chebyshev-Gauss-Lobatto nodes x_i = -cos(pi (i-1) / (n_j - 1)); level 1 is {0}.
// Evaluated as sin(pi (2(i-1) - (n_j-1)) / (2(n_j-1))) so that nested nodes
// and mirrored nodes agree bit-for-bit and the midpoint is exactly 0.
NodeSet1D cgl_nodes(std::size_t level);

struct QuadratureWeights {
    std::size_t level = 1;
    std::vector<double> weights;  // sum 2, symmetric
};

// Clenshaw-Curtis weights on the CGL nodes:
//   endpoints 1 / (n (n-2)),
//   interior  2/(n-1) [1 - cos(pi (i-1)) / (n (n-2)) - 2 sum_{k=1}^{(n-3)/2} cos(2 pi k (i-1)/(n-1)) / (4k^2 - 1)].
// Level 1 (single node) carries the full interval length 2.
QuadratureWeights cc_weights(std::size_t level);

// 1-D Lagrange basis values L_i(x) by the product formula.
std::vector<double> lagrange_basis(const NodeSet1D& nodes, double x);
// Same values through the barycentric form for CGL nodes (weights (-1)^i, halved at the ends).
std::vector<double> barycentric_basis(const NodeSet1D& nodes, double x);

// Tensor product of CGL node sets; rows lexicographic, first dimension slowest.
SampleSet full_grid(const std::vector<std::size_t>& levels);

// Tensor-product Lagrange interpolant through f_values given in full_grid row order.
double lagrange_interpolate(const std::vector<std::size_t>& levels, std::span<const double> f_values,
                            std::span<const double> query);

// Multi-indices j (each j_k >= 1) with sum j_k <= mu + beta - 1, lexicographic.
std::vector<std::vector<std::size_t>> smolyak_indices(const GridLevelSpec& spec);

// Union of the tensor grids over smolyak_indices; rows sorted lexicographically.
SampleSet sparse_grid(const GridLevelSpec& spec);

using GridFunction = std::function<double(std::span<const double>)>;

// Smolyak interpolant
//   A(f) = sum_{|j| <= mu+beta-1} (D^{j_1} x ... x D^{j_beta})(f),  D^j = U^j - U^{j-1},
// with U^j the barycentric Chebyshev-Lagrange interpolant on level j. f is
// evaluated once per sparse-grid node when the interpolant is built.
class SmolyakInterpolant {
public:
    SmolyakInterpolant(const GridLevelSpec& spec, const GridFunction& f);

    double operator()(std::span<const double> query) const;
    std::size_t evaluations() const { return values_.size(); }
    const GridLevelSpec& spec() const { return spec_; }

private:
    std::uint64_t key(std::span<const std::size_t> fine_index) const;

    GridLevelSpec spec_;
    std::size_t finest_ = 1;            // finest 1-D level
    std::size_t finest_count_ = 1;
    std::vector<NodeSet1D> levels_;     // index = level
    std::vector<std::vector<std::size_t>> to_finest_;  // per level: node -> finest index
    std::vector<std::vector<std::size_t>> indices_;
    std::unordered_map<std::uint64_t, double> values_;
};

double smolyak_interpolate(const GridLevelSpec& spec, const GridFunction& f, std::span<const double> query);

struct QuadratureRule {
    std::size_t dims = 1;
    std::vector<double> nodes;    // rows, sorted like sparse_grid
    std::vector<double> weights;  // one per row
};

// Smolyak combination of the 1-D Clenshaw-Curtis rules, accumulated per node.
QuadratureRule sparse_quadrature_rule(const GridLevelSpec& spec);
// Estimate of the integral of f over [-1,1]^beta.
double sparse_quadrature(const GridLevelSpec& spec, const GridFunction& f);

// ---------------------------------------------------------------- rotation

struct RotationSpec {
    double theta = 0.0;
    // Plane (i, j), i < j, rotates x_i' = cos x_i - sin x_j, x_j' = sin x_i + cos x_j.
    std::vector<std::pair<std::size_t, std::size_t>> planes;

    // Every plane (i, j), i < j, in lexicographic order.
    static RotationSpec all_planes(double theta, std::size_t dims);
};

// Composite matrix R = G_last ... G_first (row-major, dims x dims).
std::vector<double> rotation_matrix(std::size_t dims, const RotationSpec& spec);

// Rotates a CodedPM1 set, then scales uniformly by 1 / max|x| if any
// coordinate leaves [-1,1]. Records "theta" and "rotation_scale" in params.
SampleSet rotate_points(const SampleSet& s, const RotationSpec& spec);

enum class RotationObjective { Maximin, CenteredL2 };

struct RotationResult {
    double theta = 0.0;
    double objective = 0.0;
    SampleSet points;
};

// Grid search theta = 0, step, 2 step, ... <= pi/4 over rotate_points with
// all planes. Maximin maximises the minimum distance in coded units;
// CenteredL2 minimises the discrepancy of the set mapped to [0,1]^d. Ties go
// to the smaller angle.
RotationResult optimize_rotation(const SampleSet& s, RotationObjective objective, double step);

}  // namespace doeforge
