#include <gtest/gtest.h>

#include <charconv>
#include <cmath>
#include <limits>

#include "doeforge/core.hpp"
#include "doeforge/errors.hpp"

namespace doeforge {
namespace {

TEST(DesignSpace, RejectsEmptyAndInvertedBounds) {
    EXPECT_THROW(DesignSpace({}), DimensionError);
    EXPECT_THROW(DesignSpace({{0.0, 1.0}, {2.0, 2.0}}), DomainError);
    EXPECT_THROW(DesignSpace({{1.0, 0.0}}), DomainError);
    EXPECT_NO_THROW(DesignSpace({{-3.0, 5.0}}));
}

TEST(DesignSpace, ContainsIsClosed) {
    const DesignSpace s({{-1.0, 1.0}, {0.0, 2.0}});
    const double inside[] = {1.0, 0.0};
    const double outside[] = {1.0, 2.0000001};
    EXPECT_TRUE(s.contains(inside));
    EXPECT_FALSE(s.contains(outside));
}

TEST(Domain, CodedHalfWidthMustCoverUnitCube) {
    EXPECT_THROW(Domain::coded(0.5), DomainError);
    const auto d = Domain::coded(2.0);
    EXPECT_EQ(d.axis(0).lo, -2.0);
    EXPECT_EQ(d.axis(3).hi, 2.0);
    EXPECT_THROW(d.space(), DomainError);
}

TEST(SampleSet, ValidatesShapeAndContainment) {
    EXPECT_THROW(SampleSet({}, 2, Domain::unit_cube(), "t"), SizeError);
    EXPECT_THROW(SampleSet({0.1, 0.2, 0.3}, 2, Domain::unit_cube(), "t"), ShapeError);
    EXPECT_THROW(SampleSet({0.1}, 0, Domain::unit_cube(), "t"), DimensionError);
    EXPECT_THROW(SampleSet({0.1, 1.5}, 2, Domain::unit_cube(), "t"), DomainError);
    EXPECT_THROW(SampleSet({0.1, 0.5}, 2, Domain::user(DesignSpace({{0.0, 1.0}})), "t"), DimensionError);
    const SampleSet s({0.1, 0.2, 0.3, 0.4}, 2, Domain::unit_cube(), "t", 7u);
    EXPECT_EQ(s.size(), 2u);
    EXPECT_EQ(s(1, 0), 0.3);
    EXPECT_EQ(*s.seed(), 7u);
}

TEST(SampleSet, WithPrependedAddsRowFirst) {
    const SampleSet s({0.5, 0.5}, 2, Domain::unit_cube(), "t");
    const double origin[] = {0.0, 0.0};
    const auto t = s.with_prepended(origin);
    ASSERT_EQ(t.size(), 2u);
    EXPECT_EQ(t(0, 0), 0.0);
    EXPECT_EQ(t(1, 1), 0.5);
}

TEST(Scaling, UnitCubeMapsAffinelyAndBack) {
    const SampleSet s({0.0, 1.0, 0.25, 0.5}, 2, Domain::unit_cube(), "t");
    const DesignSpace target({{-1.0, 1.0}, {10.0, 20.0}});
    const auto y = scale_to_domain(s, target);
    EXPECT_EQ(y.domain().kind(), DomainKind::User);
    EXPECT_DOUBLE_EQ(y(0, 0), -1.0);
    EXPECT_DOUBLE_EQ(y(0, 1), 20.0);
    EXPECT_DOUBLE_EQ(y(1, 0), -0.5);
    EXPECT_DOUBLE_EQ(y(1, 1), 15.0);
    EXPECT_EQ(y.params().at("canonical_domain"), "unit_cube");
    const auto back = unscale_from_domain(y, target, DomainKind::UnitCube01);
    for (std::size_t i = 0; i < s.data().size(); ++i) EXPECT_NEAR(back.data()[i], s.data()[i], 1e-15);
}

TEST(Scaling, CodedEndpointsHitBounds) {
    const SampleSet s({-1.0, 1.0, 0.0, 0.0}, 2, Domain::coded(), "t");
    const auto y = scale_to_domain(s, DesignSpace({{2.0, 4.0}, {0.0, 1.0}}));
    EXPECT_EQ(y(0, 0), 2.0);
    EXPECT_EQ(y(0, 1), 1.0);
    EXPECT_EQ(y(1, 0), 3.0);
    EXPECT_EQ(y(1, 1), 0.5);
}

TEST(Scaling, WideCodedDomainWidensDeclaredBox) {
    const SampleSet s({-2.0, 2.0}, 1, Domain::coded(2.0), "t");
    const auto y = scale_to_domain(s, DesignSpace({{0.0, 1.0}}));
    EXPECT_DOUBLE_EQ(y(0, 0), -0.5);
    EXPECT_DOUBLE_EQ(y(1, 0), 1.5);
    EXPECT_DOUBLE_EQ(y.domain().space()[0].lo, -0.5);
    EXPECT_DOUBLE_EQ(y.domain().space()[0].hi, 1.5);
}

TEST(Scaling, RejectsMismatchedOrUserInput) {
    const SampleSet s({0.5}, 1, Domain::unit_cube(), "t");
    EXPECT_THROW(scale_to_domain(s, DesignSpace({{0.0, 1.0}, {0.0, 1.0}})), DimensionError);
    const auto y = scale_to_domain(s, DesignSpace({{0.0, 2.0}}));
    EXPECT_THROW(scale_to_domain(y, DesignSpace({{0.0, 2.0}})), DomainError);
}

TEST(Scaling, NormalizeUserAndCodedToUnit) {
    const SampleSet c({-1.0, 0.0, 1.0}, 1, Domain::coded(), "t");
    const auto u = normalize_to_unit_cube(c);
    EXPECT_EQ(u(0, 0), 0.0);
    EXPECT_EQ(u(1, 0), 0.5);
    EXPECT_EQ(u(2, 0), 1.0);
}

TEST(FormatReal, RoundTripsExactly) {
    const double values[] = {0.1, 1.0 / 3.0, -2.5e-300, 1e300, std::numeric_limits<double>::denorm_min(),
                             0.30000000000000004, 123456789.123456789};
    for (double v : values) {
        const auto text = format_real(v);
        double back = 0.0;
        std::from_chars(text.data(), text.data() + text.size(), back);
        EXPECT_EQ(back, v) << text;
    }
    EXPECT_EQ(format_real(0.5), "0.5");
    EXPECT_EQ(format_real(0.1), "0.10000000000000001");
}

}  // namespace
}  // namespace doeforge
