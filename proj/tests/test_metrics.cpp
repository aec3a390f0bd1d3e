#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "doeforge/errors.hpp"
#include "doeforge/metrics.hpp"
#include "doeforge/quasi_random.hpp"
#include "doeforge/random_designs.hpp"
#include "oracles.hpp"

namespace doeforge {
namespace {

std::vector<oracle::Point> rows(const SampleSet& s) {
    std::vector<oracle::Point> out;
    for (std::size_t i = 0; i < s.size(); ++i) out.emplace_back(s.row(i).begin(), s.row(i).end());
    return out;
}

// numpy.random.default_rng(7).random((10, 3))
const std::vector<double> kScipyPoints = {
    0.625095466604667,   0.8972138009695755,  0.7756856902451935,  0.22520718999059186, 0.30016628491122543,
    0.8735534453962619,  0.005265304565574724, 0.8212284183827663, 0.7970694287520462,  0.4679349528437208,
    0.3030324268193135,  0.2784256121007733,  0.2548695876541246,  0.4450763058826466,  0.5045482589579533,
    0.5534973520744925,  0.9955002834343927,  0.7926619192137531,  0.6221792294411627,  0.9889601476818849,
    0.21530869823559895, 0.16021203385784455, 0.6125396042730308,  0.04394200796138337, 0.03568027877359614,
    0.5148888202713703,  0.4662060253252891,  0.9171677731928523,  0.6292262544910104,  0.5141176465995139};

TEST(CenteredL2, MatchesFrozenScipy) {
    // scipy.stats.qmc.discrepancy(x, method="CD") returns the squared value.
    EXPECT_NEAR(centered_l2_discrepancy(kScipyPoints, 3), std::sqrt(0.06390602933918443), 1e-14);
    std::vector<double> two;
    for (std::size_t i = 0; i < 10; ++i) {
        two.push_back(kScipyPoints[3 * i]);
        two.push_back(kScipyPoints[3 * i + 1]);
    }
    EXPECT_NEAR(centered_l2_discrepancy(two, 2), std::sqrt(0.0481444001427167), 1e-14);
}

TEST(CenteredL2, SinglePointClosedForm) {
    // One point at the center: CD^2 = (13/12)^d - 2 + 1.
    const double center[] = {0.5, 0.5};
    EXPECT_NEAR(centered_l2_discrepancy(center, 2), std::sqrt(13.0 * 13.0 / 144.0 - 1.0), 1e-15);
    const double outside[] = {1.5};
    EXPECT_THROW(centered_l2_discrepancy(outside, 1), DomainError);
}

TEST(StarDiscrepancy, MatchesBruteForce) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        for (std::size_t d : {1u, 2u, 3u}) {
            const auto s = uniform_random(12, d, make_stream(seed));
            EXPECT_NEAR(star_discrepancy_smallcase(s), oracle::star_discrepancy(rows(s)), 1e-15);
        }
    }
    const auto h = hammersley(32, 2);
    EXPECT_NEAR(star_discrepancy_smallcase(h), oracle::star_discrepancy(rows(h)), 1e-15);
    const auto z = halton(16, 3, {true});
    EXPECT_NEAR(star_discrepancy_smallcase(z), oracle::star_discrepancy(rows(z)), 1e-15);
}

TEST(StarDiscrepancy, HandCases) {
    const double mid[] = {0.5};
    EXPECT_DOUBLE_EQ(star_discrepancy_smallcase(mid, 1), 0.5);
    // Centered 1-D grid (2i-1)/(2n) attains the optimum 1/(2n).
    const double grid[] = {0.125, 0.375, 0.625, 0.875};
    EXPECT_DOUBLE_EQ(star_discrepancy_smallcase(grid, 1), 0.125);
}

TEST(StarDiscrepancy, Budget) {
    EXPECT_TRUE(star_discrepancy_within_budget(512, 3));
    EXPECT_FALSE(star_discrepancy_within_budget(513, 2));
    EXPECT_FALSE(star_discrepancy_within_budget(10, 4));
    const auto big = uniform_random(600, 2, make_stream(1));
    EXPECT_THROW(star_discrepancy_smallcase(big), SizeError);
}

TEST(Maximin, MatchesBruteForce) {
    const auto s = uniform_random(40, 3, make_stream(2));
    EXPECT_NEAR(maximin_distance(s), oracle::min_distance(rows(s)), 1e-15);
    const SampleSet one({0.2, 0.2}, 2, Domain::unit_cube(), "t");
    EXPECT_THROW(maximin_distance(one), SizeError);
}

TEST(Mse, Basic) {
    const double a[] = {1.0, 2.0, 3.0};
    const double b[] = {1.0, 0.0, 6.0};
    EXPECT_DOUBLE_EQ(mse(a, b), 13.0 / 3.0);
    EXPECT_THROW(mse(std::span<const double>(a, 2), b), ShapeError);
    EXPECT_THROW(mse(std::span<const double>(), std::span<const double>()), ShapeError);
}

TEST(Score, NormalizesAndRespectsBudget) {
    const SampleSet coded({-1.0, -1.0, 1.0, 1.0}, 2, Domain::coded(), "grid");
    const auto r = score(coded);
    EXPECT_EQ(r.method, "grid");
    EXPECT_NEAR(r.maximin, std::sqrt(2.0), 1e-15);
    ASSERT_TRUE(r.star_disc.has_value());
    EXPECT_FALSE(score(coded, 0.0, false).star_disc.has_value());
    EXPECT_FALSE(score(uniform_random(20, 5, make_stream(1))).star_disc.has_value());
}

}  // namespace
}  // namespace doeforge
