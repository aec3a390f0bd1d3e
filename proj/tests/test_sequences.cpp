#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <vector>

#include "doeforge/errors.hpp"
#include "doeforge/quasi_random.hpp"
#include "oracles.hpp"

namespace doeforge {
namespace {

SequenceOptions with_zero(SequenceOptions::Order order = SequenceOptions::Order::Binary) {
    SequenceOptions o;
    o.include_zero = true;
    o.order = order;
    return o;
}

// Every elementary interval prod [a_k b^-e_k, (a_k+1) b^-e_k) with sum e_k = m
// holds exactly one of the b^m points.
bool is_zero_net(const SampleSet& s, std::uint64_t b, std::size_t m) {
    const std::size_t d = s.dims();
    std::vector<std::size_t> e(d, 0);
    std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t k, std::size_t left) -> bool {
        if (k + 1 == d) {
            e[k] = left;
            std::map<std::vector<std::uint64_t>, int> cells;
            for (std::size_t i = 0; i < s.size(); ++i) {
                std::vector<std::uint64_t> key(d);
                for (std::size_t c = 0; c < d; ++c) {
                    key[c] = static_cast<std::uint64_t>(std::floor(s(i, c) * std::pow(double(b), double(e[c]))));
                }
                if (++cells[key] > 1) return false;
            }
            return true;
        }
        for (std::size_t v = 0; v <= left; ++v) {
            e[k] = v;
            if (!rec(k + 1, left - v)) return false;
        }
        return true;
    };
    return rec(0, m);
}

TEST(RadicalInverse, MatchesRationalOracle) {
    for (std::uint64_t base : {2u, 3u, 5u, 7u, 11u, 31u}) {
        for (std::uint64_t i = 0; i < 2000; ++i) {
            EXPECT_EQ(radical_inverse(base, i), oracle::radical_inverse(base, i)) << base << " " << i;
        }
    }
    EXPECT_EQ(radical_inverse(2, 0), 0.0);
    EXPECT_EQ(radical_inverse(3, 5), 7.0 / 9.0);  // 5 = 12_3 -> 0.21_3
    EXPECT_THROW(radical_inverse(1, 3), DomainError);
}

TEST(Primes, FirstAndNext) {
    EXPECT_EQ(first_primes(6), (std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13}));
    EXPECT_EQ(smallest_prime_at_least(8), 11u);
    EXPECT_EQ(smallest_prime_at_least(13), 13u);
    EXPECT_EQ(faure_base(1), 2u);
    EXPECT_EQ(faure_base(4), 5u);
}

TEST(Halton, BasesTwoAndThreeHandValues) {
    const auto s = halton(8, 2);
    const double b2[] = {1. / 2, 1. / 4, 3. / 4, 1. / 8, 5. / 8, 3. / 8, 7. / 8, 1. / 16};
    const double b3[] = {1. / 3, 2. / 3, 1. / 9, 4. / 9, 7. / 9, 2. / 9, 5. / 9, 8. / 9};
    for (std::size_t i = 0; i < 8; ++i) {
        EXPECT_EQ(s(i, 0), b2[i]);
        EXPECT_EQ(s(i, 1), b3[i]);
    }
}

TEST(Halton, MatchesFrozenScipyUnscrambled) {
    // scipy.stats.qmc.Halton(d=3, scramble=False).random(8)
    const double ref[8][3] = {{0.0, 0.0, 0.0},
                              {0.5, 0.3333333333333333, 0.2},
                              {0.25, 0.6666666666666666, 0.4},
                              {0.75, 0.1111111111111111, 0.6000000000000001},
                              {0.125, 0.4444444444444444, 0.8},
                              {0.625, 0.7777777777777777, 0.04},
                              {0.375, 0.2222222222222222, 0.24000000000000002},
                              {0.875, 0.5555555555555556, 0.44}};
    const auto s = halton(8, 3, with_zero());
    for (std::size_t i = 0; i < 8; ++i) {
        for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(s(i, k), ref[i][k], 1e-15);
    }
}

TEST(Hammersley, FourPointsTwoDims) {
    const auto s = hammersley(4, 2);
    const double ref[4][2] = {{0.25, 0.5}, {0.5, 0.25}, {0.75, 0.75}, {1.0, 0.125}};
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_EQ(s(i, 0), ref[i][0]);
        EXPECT_EQ(s(i, 1), ref[i][1]);
    }
    EXPECT_THROW(hammersley(4, 1), DimensionError);
}

TEST(Hammersley, HigherDimsUseConsecutivePrimes) {
    const auto s = hammersley(10, 4);
    for (std::size_t i = 0; i < 10; ++i) {
        EXPECT_EQ(s(i, 0), double(i + 1) / 10.0);
        EXPECT_EQ(s(i, 1), oracle::radical_inverse(2, i + 1));
        EXPECT_EQ(s(i, 2), oracle::radical_inverse(3, i + 1));
        EXPECT_EQ(s(i, 3), oracle::radical_inverse(5, i + 1));
    }
}

TEST(Sobol, FirstDimensionIsVanDerCorputByXor) {
    // Direction numbers v_k = 2^-k; x_i = XOR of v_k over the set bits of i.
    const auto s = sobol(15, 1);
    for (std::uint64_t i = 1; i <= 15; ++i) {
        std::uint32_t acc = 0;
        for (unsigned k = 0; k < 32; ++k) {
            if ((i >> k) & 1u) acc ^= 1u << (31 - k);
        }
        EXPECT_EQ(s(i - 1, 0), std::ldexp(double(acc), -32)) << i;
    }
    EXPECT_EQ(s(0, 0), 0.5);
    EXPECT_EQ(s(2, 0), 0.75);
}

TEST(Sobol, GrayOrderMatchesFrozenScipy) {
    // scipy.stats.qmc.Sobol(d=5, scramble=False).random(16)
    const double ref[16][5] = {
        {0.0, 0.0, 0.0, 0.0, 0.0},
        {0.5, 0.5, 0.5, 0.5, 0.5},
        {0.75, 0.25, 0.25, 0.25, 0.75},
        {0.25, 0.75, 0.75, 0.75, 0.25},
        {0.375, 0.375, 0.625, 0.875, 0.375},
        {0.875, 0.875, 0.125, 0.375, 0.875},
        {0.625, 0.125, 0.875, 0.625, 0.625},
        {0.125, 0.625, 0.375, 0.125, 0.125},
        {0.1875, 0.3125, 0.9375, 0.4375, 0.5625},
        {0.6875, 0.8125, 0.4375, 0.9375, 0.0625},
        {0.9375, 0.0625, 0.6875, 0.1875, 0.3125},
        {0.4375, 0.5625, 0.1875, 0.6875, 0.8125},
        {0.3125, 0.1875, 0.3125, 0.5625, 0.9375},
        {0.8125, 0.6875, 0.8125, 0.0625, 0.4375},
        {0.5625, 0.4375, 0.0625, 0.8125, 0.1875},
        {0.0625, 0.9375, 0.5625, 0.3125, 0.6875},
    };
    const auto s = sobol(16, 5, with_zero(SequenceOptions::Order::Gray));
    for (std::size_t i = 0; i < 16; ++i) {
        for (std::size_t k = 0; k < 5; ++k) EXPECT_EQ(s(i, k), ref[i][k]) << i << "," << k;
    }
}

TEST(Sobol, BinaryAndGrayAgreeAsSetsOnDyadicBlocks) {
    auto a = sobol(64, 4, with_zero()).data();
    auto b = sobol(64, 4, with_zero(SequenceOptions::Order::Gray)).data();
    std::vector<std::vector<double>> ra, rb;
    for (std::size_t i = 0; i < 64; ++i) {
        ra.emplace_back(a.begin() + i * 4, a.begin() + i * 4 + 4);
        rb.emplace_back(b.begin() + i * 4, b.begin() + i * 4 + 4);
    }
    std::sort(ra.begin(), ra.end());
    std::sort(rb.begin(), rb.end());
    EXPECT_EQ(ra, rb);
}

TEST(Sobol, FirstTwoDimensionsFormNets) {
    for (std::size_t m = 1; m <= 8; ++m) {
        EXPECT_TRUE(is_zero_net(sobol(std::size_t{1} << m, 2, with_zero()), 2, m)) << m;
    }
}

TEST(Sobol, DirectionIntegersFromRecurrence) {
    const auto p = SobolParams::catalog(3);
    // Dimension 2: q=1, m1=1 -> V_i = V_{i-1} ^ (V_{i-1} >> 1) starting from 2^31.
    const auto v = p.direction_integers(1);
    std::uint32_t expect = 1u << 31;
    for (unsigned i = 0; i < 32; ++i) {
        EXPECT_EQ(v[i], expect) << i;
        expect = expect ^ (expect >> 1);
    }
    EXPECT_EQ(SobolParams::catalog_size(), 50u);
    EXPECT_THROW(SobolParams::catalog(51), DimensionError);
}

TEST(Sobol, ParseRejectsInvalidDirectionNumbers) {
    EXPECT_NO_THROW(SobolParams::parse("1 0 0\n2 1 0 1\n"));
    EXPECT_THROW(SobolParams::parse("1 0 0\n2 1 0 2\n"), ParseError);   // even m
    EXPECT_THROW(SobolParams::parse("1 0 0\n2 2 1 1 5\n"), ParseError); // m2 >= 4
    EXPECT_THROW(SobolParams::parse("1 0 0\n2 1 0\n"), ParseError);     // missing m1
}

TEST(Sobol, CustomParamsUsedVerbatim) {
    const auto params = SobolParams::parse("1 0 0\n2 1 0 1\n");
    const auto a = sobol(32, 2, params);
    const auto b = sobol(32, 2);
    EXPECT_EQ(a.data(), b.data());
    EXPECT_EQ(b.params().at("direction_numbers"), "joe-kuo-6.21201");
}

TEST(Faure, FirstDimensionIsVanDerCorputInBase) {
    const auto s = faure(30, 3);
    for (std::size_t i = 0; i < 30; ++i) EXPECT_EQ(s(i, 0), oracle::radical_inverse(3, i + 1));
    EXPECT_EQ(s.params().at("base"), "3");
}

TEST(Faure, AlignedBlocksAreZeroNets) {
    EXPECT_TRUE(is_zero_net(faure(27, 3, with_zero()), 3, 3));
    EXPECT_TRUE(is_zero_net(faure(25, 4, with_zero()), 5, 2));
    EXPECT_TRUE(is_zero_net(faure(125, 5, with_zero()), 5, 3));
}

TEST(Faure, StratifiesFirstBasePoints) {
    const auto s = faure(5, 5, with_zero());
    for (std::size_t k = 0; k < 5; ++k) {
        std::vector<int> hits(5, 0);
        for (std::size_t i = 0; i < 5; ++i) ++hits[static_cast<std::size_t>(s(i, k) * 5)];
        for (int h : hits) EXPECT_EQ(h, 1);
    }
}

TEST(Sequences, IncludeZeroPrependsOrigin) {
    const auto h = halton(4, 2, with_zero());
    EXPECT_EQ(h(0, 0), 0.0);
    EXPECT_EQ(h(1, 0), 0.5);
    const auto f = faure(4, 2, with_zero());
    EXPECT_EQ(f(0, 1), 0.0);
}

TEST(Sequences, Guards) {
    EXPECT_THROW(halton(0, 2), SizeError);
    EXPECT_THROW(sobol(4, 0), DimensionError);
    EXPECT_THROW(sobol(4, 51), DimensionError);
}

}  // namespace
}  // namespace doeforge
