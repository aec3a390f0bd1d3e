#include <cmath>

#include "doeforge/errors.hpp"
#include "doeforge/quasi_random.hpp"

namespace doeforge {
namespace {

bool is_prime(std::uint64_t x) {
    if (x < 2) return false;
    for (std::uint64_t f = 2; f * f <= x; ++f) {
        if (x % f == 0) return false;
    }
    return true;
}

void check_count(std::size_t n, std::size_t d) {
    if (n == 0) throw SizeError("need at least one point");
    if (d == 0) throw DimensionError("need at least one dimension");
    if (n > kMaxPoints / d) throw SizeError("design exceeds the point-count guard");
}

// Digits of `index` in `base` (least significant first) reversed into
// numerator / base^len. Exact while both fit in 53 bits.
double digits_to_fraction(const std::vector<std::uint64_t>& digits, std::uint64_t base) {
    unsigned __int128 num = 0;
    unsigned __int128 den = 1;
    for (std::uint64_t a : digits) {
        num = num * base + a;
        den *= base;
    }
    return static_cast<double>(num) / static_cast<double>(den);
}

std::vector<std::uint64_t> base_digits(std::uint64_t index, std::uint64_t base) {
    std::vector<std::uint64_t> digits;
    while (index > 0) {
        digits.push_back(index % base);
        index /= base;
    }
    return digits;
}

}  // namespace

double radical_inverse(std::uint64_t base, std::uint64_t index) {
    if (base < 2) throw DomainError("radical inverse base must be >= 2");
    return digits_to_fraction(base_digits(index, base), base);
}

std::vector<std::uint64_t> first_primes(std::size_t count) {
    std::vector<std::uint64_t> out;
    out.reserve(count);
    for (std::uint64_t x = 2; out.size() < count; ++x) {
        if (is_prime(x)) out.push_back(x);
    }
    return out;
}

std::uint64_t smallest_prime_at_least(std::uint64_t x) {
    while (!is_prime(x)) ++x;
    return x;
}

SampleSet halton(std::size_t n, std::size_t d, const SequenceOptions& opts) {
    check_count(n, d);
    const auto primes = first_primes(d);
    const std::uint64_t first = opts.include_zero ? 0 : 1;
    std::vector<double> pts;
    pts.reserve(n * d);
    for (std::uint64_t i = first; i < first + n; ++i) {
        for (std::size_t k = 0; k < d; ++k) pts.push_back(radical_inverse(primes[k], i));
    }
    return SampleSet(std::move(pts), d, Domain::unit_cube(), "halton", std::nullopt,
                     {{"include_zero", opts.include_zero ? "true" : "false"}});
}

SampleSet hammersley(std::size_t n, std::size_t d) {
    if (d < 2) throw DimensionError("Hammersley needs at least two dimensions");
    check_count(n, d);
    const auto primes = first_primes(d - 1);
    std::vector<double> pts;
    pts.reserve(n * d);
    const auto nd = static_cast<double>(n);
    for (std::uint64_t i = 1; i <= n; ++i) {
        pts.push_back(static_cast<double>(i) / nd);
        for (std::size_t k = 0; k + 1 < d; ++k) pts.push_back(radical_inverse(primes[k], i));
    }
    return SampleSet(std::move(pts), d, Domain::unit_cube(), "hammersley");
}

std::uint64_t faure_base(std::size_t d) {
    return smallest_prime_at_least(std::max<std::uint64_t>(2, d));
}

SampleSet faure(std::size_t n, std::size_t d, const SequenceOptions& opts) {
    check_count(n, d);
    const std::uint64_t base = faure_base(d);
    const std::uint64_t first = opts.include_zero ? 0 : 1;
    const std::uint64_t last = first + n - 1;

    // Pascal triangle mod base, large enough for the longest index.
    const std::size_t max_digits = std::max<std::size_t>(1, base_digits(last, base).size());
    std::vector<std::vector<std::uint64_t>> binom(max_digits, std::vector<std::uint64_t>(max_digits, 0));
    for (std::size_t l = 0; l < max_digits; ++l) {
        binom[l][0] = 1;
        for (std::size_t j = 1; j <= l; ++j) binom[l][j] = (binom[l - 1][j - 1] + (j < l ? binom[l - 1][j] : 0)) % base;
    }
    // power[k][e] = k^e mod base
    std::vector<std::vector<std::uint64_t>> power(d, std::vector<std::uint64_t>(max_digits, 1));
    for (std::size_t k = 0; k < d; ++k) {
        for (std::size_t e = 1; e < max_digits; ++e) power[k][e] = power[k][e - 1] * (k % base) % base;
    }

    std::vector<double> pts;
    pts.reserve(n * d);
    std::vector<std::uint64_t> transformed;
    for (std::uint64_t i = first; i <= last; ++i) {
        const auto digits = base_digits(i, base);
        const std::size_t p = digits.size();
        for (std::size_t k = 0; k < d; ++k) {
            // (C^k)_{lj} = binom(l, j) k^(l-j) mod base
            transformed.assign(p, 0);
            for (std::size_t j = 0; j < p; ++j) {
                std::uint64_t acc = 0;
                for (std::size_t l = j; l < p; ++l) acc = (acc + binom[l][j] * power[k][l - j] % base * digits[l]) % base;
                transformed[j] = acc;
            }
            pts.push_back(digits_to_fraction(transformed, base));
        }
    }
    return SampleSet(std::move(pts), d, Domain::unit_cube(), "faure", std::nullopt,
                     {{"base", std::to_string(base)}, {"include_zero", opts.include_zero ? "true" : "false"}});
}

}  // namespace doeforge
