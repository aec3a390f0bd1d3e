#include "doeforge/core.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <system_error>

#include "doeforge/errors.hpp"

namespace doeforge {

DesignSpace::DesignSpace(std::vector<Bounds> bounds) : bounds_(std::move(bounds)) {
    if (bounds_.empty()) throw DimensionError("design space needs at least one dimension");
    for (std::size_t k = 0; k < bounds_.size(); ++k) {
        const auto& b = bounds_[k];
        if (!std::isfinite(b.lo) || !std::isfinite(b.hi) || !(b.lo < b.hi)) {
            throw DomainError("dimension " + std::to_string(k + 1) + ": bounds must satisfy lo < hi");
        }
    }
}

DesignSpace DesignSpace::unit_cube(std::size_t dims) {
    return DesignSpace(std::vector<Bounds>(dims, Bounds{0.0, 1.0}));
}

DesignSpace DesignSpace::coded_cube(std::size_t dims, double half_width) {
    return DesignSpace(std::vector<Bounds>(dims, Bounds{-half_width, half_width}));
}

bool DesignSpace::contains(std::span<const double> point) const {
    if (point.size() != dims()) return false;
    for (std::size_t k = 0; k < point.size(); ++k) {
        if (!(point[k] >= bounds_[k].lo && point[k] <= bounds_[k].hi)) return false;
    }
    return true;
}

const char* to_string(DomainKind kind) {
    switch (kind) {
        case DomainKind::UnitCube01: return "unit_cube";
        case DomainKind::CodedPM1: return "coded_pm1";
        case DomainKind::User: return "user";
    }
    return "?";
}

Domain Domain::coded(double half_width) {
    if (!(half_width >= 1.0) || !std::isfinite(half_width)) {
        throw DomainError("coded half-width must be >= 1");
    }
    return Domain(DomainKind::CodedPM1, half_width, std::nullopt);
}

const DesignSpace& Domain::space() const {
    if (!space_) throw DomainError("domain has no user design space");
    return *space_;
}

Bounds Domain::axis(std::size_t k) const {
    switch (kind_) {
        case DomainKind::UnitCube01: return {0.0, 1.0};
        case DomainKind::CodedPM1: return {-half_width_, half_width_};
        case DomainKind::User: return space_->bounds().at(k);
    }
    return {};
}

bool Domain::contains(std::span<const double> point) const {
    if (kind_ == DomainKind::User) return space_->contains(point);
    const Bounds b = axis(0);
    for (double x : point) {
        if (!(x >= b.lo && x <= b.hi)) return false;
    }
    return true;
}

SampleSet::SampleSet(std::vector<double> points, std::size_t dims, Domain domain, std::string method,
                     std::optional<std::uint64_t> seed, Params params)
    : points_(std::move(points)),
      dims_(dims),
      domain_(std::move(domain)),
      method_(std::move(method)),
      seed_(seed),
      params_(std::move(params)) {
    if (dims_ == 0) throw DimensionError("sample set needs at least one dimension");
    if (points_.empty()) throw SizeError("sample set needs at least one point");
    if (points_.size() % dims_ != 0) throw ShapeError("point buffer is not a multiple of the dimension");
    if (domain_.kind() == DomainKind::User && domain_.space().dims() != dims_) {
        throw DimensionError("declared design space dimension does not match the points");
    }
    for (std::size_t i = 0; i < size(); ++i) {
        if (!domain_.contains(row(i))) {
            throw DomainError("point " + std::to_string(i + 1) + " lies outside the declared " +
                              to_string(domain_.kind()) + " domain");
        }
    }
}

SampleSet SampleSet::with_prepended(std::span<const double> origin_row) const {
    if (origin_row.size() != dims_) throw DimensionError("prepended row has wrong dimension");
    std::vector<double> pts(origin_row.begin(), origin_row.end());
    pts.insert(pts.end(), points_.begin(), points_.end());
    return SampleSet(std::move(pts), dims_, domain_, method_, seed_, params_);
}

SampleSet scale_to_domain(const SampleSet& s, const DesignSpace& target) {
    const std::size_t d = s.dims();
    if (target.dims() != d) {
        throw DimensionError("target space has " + std::to_string(target.dims()) +
                             " dimensions, sample set has " + std::to_string(d));
    }
    const DomainKind kind = s.domain().kind();
    if (kind == DomainKind::User) throw DomainError("sample set is already in a user domain");

    std::vector<double> out(s.data().size());
    std::vector<Bounds> declared(d);
    const double hw = s.domain().coded_half_width();
    for (std::size_t k = 0; k < d; ++k) {
        const Bounds b = target[k];
        if (kind == DomainKind::UnitCube01) {
            declared[k] = b;
        } else {
            const double half = 0.5 * b.width();
            declared[k] = hw == 1.0 ? b : Bounds{b.mid() - hw * half, b.mid() + hw * half};
        }
    }
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t k = 0; k < d; ++k) {
            const Bounds b = target[k];
            const double x = s(i, k);
            double y = kind == DomainKind::UnitCube01 ? b.lo + x * b.width()
                                                      : b.mid() + x * (0.5 * b.width());
            // Rounding must not push boundary points out of the closed box.
            y = std::min(std::max(y, declared[k].lo), declared[k].hi);
            out[i * d + k] = y;
        }
    }
    Params params = s.params();
    params["canonical_domain"] = to_string(kind);
    return SampleSet(std::move(out), d, Domain::user(DesignSpace(declared)), s.method(), s.seed(),
                     std::move(params));
}

SampleSet unscale_from_domain(const SampleSet& s, const DesignSpace& original, DomainKind canonical,
                              double coded_half_width) {
    const std::size_t d = s.dims();
    if (original.dims() != d) throw DimensionError("space dimension does not match the sample set");
    if (canonical == DomainKind::User) throw DomainError("canonical domain must be unit or coded");
    std::vector<double> out(s.data().size());
    const Bounds lim = canonical == DomainKind::UnitCube01 ? Bounds{0.0, 1.0}
                                                           : Bounds{-coded_half_width, coded_half_width};
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t k = 0; k < d; ++k) {
            const Bounds b = original[k];
            const double y = s(i, k);
            double x = canonical == DomainKind::UnitCube01 ? (y - b.lo) / b.width()
                                                           : (y - b.mid()) / (0.5 * b.width());
            out[i * d + k] = std::min(std::max(x, lim.lo), lim.hi);
        }
    }
    Domain dom = canonical == DomainKind::UnitCube01 ? Domain::unit_cube() : Domain::coded(coded_half_width);
    return SampleSet(std::move(out), d, std::move(dom), s.method(), s.seed(), s.params());
}

SampleSet normalize_to_unit_cube(const SampleSet& s) {
    if (s.domain().kind() == DomainKind::UnitCube01) return s;
    const std::size_t d = s.dims();
    std::vector<double> out(s.data().size());
    for (std::size_t k = 0; k < d; ++k) {
        const Bounds b = s.domain().axis(k);
        for (std::size_t i = 0; i < s.size(); ++i) {
            const double x = (s(i, k) - b.lo) / b.width();
            out[i * d + k] = std::min(std::max(x, 0.0), 1.0);
        }
    }
    return SampleSet(std::move(out), d, Domain::unit_cube(), s.method(), s.seed(), s.params());
}

std::string format_real(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    if (ec != std::errc{}) throw Error("cannot format real");
    return std::string(buf, ptr);
}

}  // namespace doeforge
