#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace doeforge {

// Upper bound on the number of points any generator will materialise.
inline constexpr std::size_t kMaxPoints = 10'000'000;

struct Bounds {
    double lo = 0.0;
    double hi = 1.0;

    double width() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
    bool operator==(const Bounds&) const = default;
};

// Axis-aligned hyper-rectangle. Invariant: dims >= 1 and lo < hi on every axis.
class DesignSpace {
public:
    explicit DesignSpace(std::vector<Bounds> bounds);

    static DesignSpace unit_cube(std::size_t dims);
    static DesignSpace coded_cube(std::size_t dims, double half_width = 1.0);

    std::size_t dims() const { return bounds_.size(); }
    const std::vector<Bounds>& bounds() const { return bounds_; }
    const Bounds& operator[](std::size_t k) const { return bounds_[k]; }

    bool contains(std::span<const double> point) const;
    bool operator==(const DesignSpace&) const = default;

private:
    std::vector<Bounds> bounds_;
};

enum class DomainKind { UnitCube01, CodedPM1, User };

const char* to_string(DomainKind kind);

// Declared domain of a SampleSet.
//
// CodedPM1 is [-1,1]^d in coded units. Circumscribed central composite designs
// place axial points beyond the coded cube; they declare a coded half-width
// alpha > 1 so the containment invariant still holds, while +-1 keeps meaning
// the factor bounds.
class Domain {
public:
    static Domain unit_cube() { return Domain(DomainKind::UnitCube01, 1.0, std::nullopt); }
    static Domain coded(double half_width = 1.0);
    static Domain user(DesignSpace space) { return Domain(DomainKind::User, 1.0, std::move(space)); }

    DomainKind kind() const { return kind_; }
    double coded_half_width() const { return half_width_; }
    const DesignSpace& space() const;  // User only

    // Bounds of coordinate k as declared by the domain.
    Bounds axis(std::size_t k) const;
    bool contains(std::span<const double> point) const;

    bool operator==(const Domain&) const = default;

private:
    Domain(DomainKind kind, double half_width, std::optional<DesignSpace> space)
        : kind_(kind), half_width_(half_width), space_(std::move(space)) {}

    DomainKind kind_;
    double half_width_;
    std::optional<DesignSpace> space_;
};

using Params = std::map<std::string, std::string>;

// Ordered n x d point matrix (row-major) with provenance.
// Invariants: n >= 1, d >= 1, every row inside the declared domain (closed bounds).
class SampleSet {
public:
    SampleSet(std::vector<double> points, std::size_t dims, Domain domain, std::string method,
              std::optional<std::uint64_t> seed = std::nullopt, Params params = {});

    std::size_t size() const { return points_.size() / dims_; }
    std::size_t dims() const { return dims_; }

    std::span<const double> row(std::size_t i) const {
        return {points_.data() + i * dims_, dims_};
    }
    double operator()(std::size_t i, std::size_t k) const { return points_[i * dims_ + k]; }

    const std::vector<double>& data() const { return points_; }
    const Domain& domain() const { return domain_; }
    const std::string& method() const { return method_; }
    const std::optional<std::uint64_t>& seed() const { return seed_; }
    const Params& params() const { return params_; }

    void set_param(const std::string& key, std::string value) { params_[key] = std::move(value); }

    // Point set with row 0 set to `origin_row` prepended (used by include_zero options).
    SampleSet with_prepended(std::span<const double> origin_row) const;

private:
    std::vector<double> points_;
    std::size_t dims_;
    Domain domain_;
    std::string method_;
    std::optional<std::uint64_t> seed_;
    Params params_;
};

// Affine map from the canonical domain (UnitCube01 or CodedPM1) onto `target`.
// UnitCube01: x -> lo + x (hi - lo). CodedPM1: x -> mid + x (hi - lo) / 2, so
// coded +-1 hits the bounds; points of a CodedPM1 set with half-width alpha > 1
// land in the target widened by alpha about its midpoint.
SampleSet scale_to_domain(const SampleSet& s, const DesignSpace& target);

// Inverse of scale_to_domain: `original` is the target that was passed to it.
SampleSet unscale_from_domain(const SampleSet& s, const DesignSpace& original, DomainKind canonical,
                              double coded_half_width = 1.0);

// Affine map of the set's declared domain onto [0,1]^d.
SampleSet normalize_to_unit_cube(const SampleSet& s);

// Formats a double with 17 significant digits (round-trips exactly).
std::string format_real(double v);

}  // namespace doeforge
