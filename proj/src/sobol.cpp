#include <fstream>
#include <sstream>
#include <string>

#include "doeforge/errors.hpp"
#include "doeforge/quasi_random.hpp"

namespace doeforge {
namespace detail {
extern const std::string_view kSobolCatalogText;
}  // namespace detail

namespace {

const SobolParams& bundled_catalog() {
    static const SobolParams params = SobolParams::parse(detail::kSobolCatalogText);
    return params;
}

}  // namespace

SobolParams SobolParams::parse(std::string_view text) {
    SobolParams params;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        long long dim = 0;
        if (!(fields >> dim)) {
            if (line.find_first_not_of(" \t\r") != std::string::npos) throw ParseError("expected a dimension index", line_no);
            continue;
        }
        long long q = 0;
        long long a = 0;
        if (!(fields >> q >> a) || q < 0 || q > 31 || a < 0) throw ParseError("expected 'd q a m1..mq'", line_no);
        if (static_cast<std::size_t>(dim) != params.dimensions.size() + 1) {
            throw ParseError("dimensions must be listed in order starting at 1", line_no);
        }
        SobolDimension dimension;
        dimension.degree = static_cast<unsigned>(q);
        dimension.coefficients = static_cast<std::uint32_t>(a);
        if (q > 0 && (static_cast<unsigned long long>(a) >> (q - 1)) != 0) {
            throw ParseError("polynomial coefficients do not fit in q-1 bits", line_no);
        }
        for (long long i = 1; i <= q; ++i) {
            long long mi = 0;
            if (!(fields >> mi)) throw ParseError("missing initial direction number m" + std::to_string(i), line_no);
            if (mi <= 0 || mi % 2 == 0 || mi >= (1LL << i)) {
                throw ParseError("m" + std::to_string(i) + " must be odd and below 2^" + std::to_string(i), line_no);
            }
            dimension.m.push_back(static_cast<std::uint32_t>(mi));
        }
        std::string extra;
        if (fields >> extra) throw ParseError("trailing fields", line_no);
        params.dimensions.push_back(std::move(dimension));
    }
    if (params.dimensions.empty()) throw ParseError("no Sobol dimensions found");
    return params;
}

SobolParams SobolParams::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

std::size_t SobolParams::catalog_size() { return bundled_catalog().dimensions.size(); }

SobolParams SobolParams::catalog(std::size_t d) {
    const SobolParams& all = bundled_catalog();
    if (d == 0) throw DimensionError("need at least one dimension");
    if (d > all.dimensions.size()) {
        throw DimensionError("Sobol catalog covers " + std::to_string(all.dimensions.size()) + " dimensions, requested " +
                             std::to_string(d));
    }
    SobolParams out;
    out.bits = all.bits;
    out.dimensions.assign(all.dimensions.begin(), all.dimensions.begin() + static_cast<std::ptrdiff_t>(d));
    return out;
}

std::vector<std::uint32_t> SobolParams::direction_integers(std::size_t j) const {
    const SobolDimension& dim = dimensions.at(j);
    const unsigned w = bits;
    std::vector<std::uint32_t> v(w + 1, 0);  // 1-based
    if (dim.degree == 0) {
        for (unsigned i = 1; i <= w; ++i) v[i] = std::uint32_t{1} << (w - i);
        return {v.begin() + 1, v.end()};
    }
    const unsigned q = dim.degree;
    for (unsigned i = 1; i <= q && i <= w; ++i) v[i] = dim.m[i - 1] << (w - i);
    for (unsigned i = q + 1; i <= w; ++i) {
        // v_i = b_1 v_{i-1} ^ ... ^ b_{q-1} v_{i-q+1} ^ v_{i-q} ^ (v_{i-q} / 2^q)
        std::uint32_t x = v[i - q] ^ (v[i - q] >> q);
        for (unsigned k = 1; k < q; ++k) {
            if ((dim.coefficients >> (q - 1 - k)) & 1U) x ^= v[i - k];
        }
        v[i] = x;
    }
    return {v.begin() + 1, v.end()};
}

SampleSet sobol(std::size_t n, std::size_t d, const SobolParams& params, const SequenceOptions& opts) {
    if (n == 0) throw SizeError("need at least one point");
    if (d == 0) throw DimensionError("need at least one dimension");
    if (d > params.dimensions.size()) {
        throw DimensionError("Sobol parameters cover " + std::to_string(params.dimensions.size()) +
                             " dimensions, requested " + std::to_string(d));
    }
    if (params.bits != 32) throw DimensionError("Sobol generator works with 32-bit direction numbers");
    if (n > kMaxPoints / d) throw SizeError("design exceeds the point-count guard");
    const std::uint64_t first = opts.include_zero ? 0 : 1;
    if (first + n - 1 >= (std::uint64_t{1} << params.bits)) throw SizeError("index exceeds 2^w - 1");

    std::vector<std::vector<std::uint32_t>> v(d);
    for (std::size_t j = 0; j < d; ++j) v[j] = params.direction_integers(j);

    const double scale = 0x1.0p-32;
    const bool gray = opts.order == SequenceOptions::Order::Gray;
    std::vector<double> pts;
    pts.reserve(n * d);
    for (std::uint64_t i = first; i < first + n; ++i) {
        const std::uint64_t digits = gray ? (i ^ (i >> 1)) : i;
        for (std::size_t j = 0; j < d; ++j) {
            std::uint32_t x = 0;
            for (unsigned b = 0; b < params.bits; ++b) {
                if ((digits >> b) & 1U) x ^= v[j][b];
            }
            pts.push_back(static_cast<double>(x) * scale);
        }
    }
    return SampleSet(std::move(pts), d, Domain::unit_cube(), "sobol", std::nullopt,
                     {{"order", gray ? "gray" : "binary"},
                      {"include_zero", opts.include_zero ? "true" : "false"}});
}

SampleSet sobol(std::size_t n, std::size_t d, const SequenceOptions& opts) {
    SampleSet s = sobol(n, d, SobolParams::catalog(d), opts);
    s.set_param("direction_numbers", "joe-kuo-6.21201");
    return s;
}

}  // namespace doeforge
