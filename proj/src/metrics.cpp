#include "doeforge/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "doeforge/errors.hpp"

namespace doeforge {
namespace {

void require_unit_cube(std::span<const double> points) {
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!(points[i] >= 0.0 && points[i] <= 1.0)) {
            throw DomainError("metric needs points in [0,1]^d");
        }
    }
}

std::size_t row_count(std::span<const double> points, std::size_t dims) {
    if (dims == 0) throw DimensionError("need at least one dimension");
    if (points.size() % dims != 0) throw ShapeError("point buffer is not a multiple of the dimension");
    return points.size() / dims;
}

// Corner sweep of the star-discrepancy enumeration. `open`/`closed` hold the
// indices (sorted by last coordinate) of points strictly below / at most the
// current corner in the leading coordinates.
class StarEnumerator {
public:
    StarEnumerator(std::span<const double> pts, std::size_t n, std::size_t d) : pts_(pts), n_(n), d_(d) {
        grids_.resize(d);
        for (std::size_t k = 0; k < d; ++k) {
            auto& g = grids_[k];
            for (std::size_t i = 0; i < n; ++i) g.push_back(pts[i * d + k]);
            g.push_back(1.0);
            std::sort(g.begin(), g.end());
            g.erase(std::unique(g.begin(), g.end()), g.end());
        }
    }

    double run() {
        std::vector<std::size_t> all(n_);
        std::iota(all.begin(), all.end(), 0);
        const std::size_t last = d_ - 1;
        std::stable_sort(all.begin(), all.end(),
                         [&](std::size_t a, std::size_t b) { return coord(a, last) < coord(b, last); });
        descend(0, all, all, 1.0);
        return best_;
    }

private:
    double coord(std::size_t i, std::size_t k) const { return pts_[i * d_ + k]; }

    void descend(std::size_t k, const std::vector<std::size_t>& open, const std::vector<std::size_t>& closed,
                 double volume) {
        const double inv_n = 1.0 / static_cast<double>(n_);
        if (k + 1 == d_) {
            // Sweep the last coordinate; both lists are sorted along it.
            std::size_t o = 0;
            std::size_t c = 0;
            for (double y : grids_[k]) {
                while (o < open.size() && coord(open[o], k) < y) ++o;
                while (c < closed.size() && coord(closed[c], k) <= y) ++c;
                const double vol = volume * y;
                best_ = std::max(best_, vol - static_cast<double>(o) * inv_n);
                best_ = std::max(best_, static_cast<double>(c) * inv_n - vol);
            }
            return;
        }
        std::vector<std::size_t> sub_open;
        std::vector<std::size_t> sub_closed;
        for (double y : grids_[k]) {
            sub_open.clear();
            sub_closed.clear();
            for (std::size_t i : open) {
                if (coord(i, k) < y) sub_open.push_back(i);
            }
            for (std::size_t i : closed) {
                if (coord(i, k) <= y) sub_closed.push_back(i);
            }
            descend(k + 1, sub_open, sub_closed, volume * y);
        }
    }

    std::span<const double> pts_;
    std::size_t n_;
    std::size_t d_;
    std::vector<std::vector<double>> grids_;
    double best_ = 0.0;
};

}  // namespace

double maximin_distance(const SampleSet& s) {
    const std::size_t n = s.size();
    const std::size_t d = s.dims();
    if (n < 2) throw SizeError("maximin distance needs at least two points");
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < d; ++k) {
                const double diff = s(i, k) - s(j, k);
                acc += diff * diff;
            }
            best = std::min(best, acc);
        }
    }
    return std::sqrt(best);
}

double centered_l2_discrepancy(std::span<const double> pts, std::size_t d) {
    const std::size_t n = row_count(pts, d);
    if (n == 0) throw SizeError("need at least one point");
    require_unit_cube(pts);
    const double nd = static_cast<double>(n);

    double single = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double prod = 1.0;
        for (std::size_t k = 0; k < d; ++k) {
            const double z = std::abs(pts[i * d + k] - 0.5);
            prod *= 1.0 + 0.5 * z - 0.5 * z * z;
        }
        single += prod;
    }
    double pair = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double prod = 1.0;
            for (std::size_t k = 0; k < d; ++k) {
                const double xi = pts[i * d + k];
                const double xj = pts[j * d + k];
                prod *= 1.0 + 0.5 * std::abs(xi - 0.5) + 0.5 * std::abs(xj - 0.5) - 0.5 * std::abs(xi - xj);
            }
            pair += prod;
        }
    }
    const double sq = std::pow(13.0 / 12.0, static_cast<double>(d)) - 2.0 / nd * single + pair / (nd * nd);
    return std::sqrt(std::max(sq, 0.0));
}

double centered_l2_discrepancy(const SampleSet& s) { return centered_l2_discrepancy(s.data(), s.dims()); }

bool star_discrepancy_within_budget(std::size_t n, std::size_t d) {
    return n >= 1 && n <= kStarMaxPoints && d >= 1 && d <= kStarMaxDims;
}

double star_discrepancy_smallcase(std::span<const double> pts, std::size_t d) {
    const std::size_t n = row_count(pts, d);
    if (!star_discrepancy_within_budget(n, d)) {
        throw SizeError("exact star discrepancy is limited to n <= " + std::to_string(kStarMaxPoints) +
                        " and d <= " + std::to_string(kStarMaxDims));
    }
    require_unit_cube(pts);
    return StarEnumerator(pts, n, d).run();
}

double star_discrepancy_smallcase(const SampleSet& s) { return star_discrepancy_smallcase(s.data(), s.dims()); }

double mse(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw ShapeError("mse: lengths differ (" + std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
    }
    if (a.empty()) throw ShapeError("mse: empty vectors");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = a[i] - b[i];
        acc += diff * diff;
    }
    return acc / static_cast<double>(a.size());
}

MetricReport score(const SampleSet& s, double elapsed_seconds, bool with_star) {
    const SampleSet unit = normalize_to_unit_cube(s);
    MetricReport r;
    r.method = s.method();
    r.n = s.size();
    r.d = s.dims();
    r.maximin = r.n >= 2 ? maximin_distance(unit) : 0.0;
    r.centered_l2 = centered_l2_discrepancy(unit);
    if (with_star && star_discrepancy_within_budget(r.n, r.d)) r.star_disc = star_discrepancy_smallcase(unit);
    r.elapsed = elapsed_seconds;
    return r;
}

}  // namespace doeforge
