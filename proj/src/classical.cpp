#include "doeforge/classical.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "doeforge/errors.hpp"
#include "doeforge/quasi_random.hpp"
#include "strata.hpp"

namespace doeforge {
namespace {

constexpr std::size_t kMaxFactors = 20;

void check_factor_count(std::size_t n, std::size_t min_n, const char* what) {
    if (n < min_n) {
        throw DimensionError(std::string(what) + " needs at least " + std::to_string(min_n) + " factors");
    }
    if (n > kMaxFactors) {
        throw SizeError(std::string(what) + ": at most " + std::to_string(kMaxFactors) + " factors");
    }
}

// Lexicographic enumeration of {0..levels-1}^n, first index slowest.
template <typename Fn>
void for_each_tuple(std::size_t n, std::size_t levels, Fn&& fn) {
    std::vector<std::size_t> idx(n, 0);
    while (true) {
        fn(idx);
        std::size_t k = n;
        while (k > 0) {
            --k;
            if (++idx[k] < levels) break;
            idx[k] = 0;
            if (k == 0) return;
        }
        if (n == 0) return;
    }
}

std::size_t checked_pow(std::size_t base, std::size_t exp) {
    std::size_t r = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        if (r > kMaxPoints / base) throw SizeError("design exceeds the point-count guard");
        r *= base;
    }
    return r;
}

std::vector<double> two_level_cube(std::size_t n, double magnitude) {
    std::vector<double> pts;
    pts.reserve(checked_pow(2, n) * n);
    for_each_tuple(n, 2, [&](const std::vector<std::size_t>& idx) {
        for (std::size_t k = 0; k < n; ++k) pts.push_back(idx[k] == 0 ? -magnitude : magnitude);
    });
    return pts;
}

struct Generator {
    std::size_t target;              // generated factor index
    std::vector<std::size_t> bases;  // referenced base factors
    bool negated = false;
};

std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::size_t factor_index(char c, std::size_t n, const std::string& gen) {
    const char u = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (u < 'A' || u > 'Z') throw ParseError("generator '" + gen + "': '" + std::string(1, c) + "' is not a factor letter");
    const auto idx = static_cast<std::size_t>(u - 'A');
    if (idx >= n) throw GeneratorError("generator '" + gen + "' references factor " + std::string(1, u) + " beyond the design");
    return idx;
}

Generator parse_generator(const std::string& raw, std::size_t n, std::size_t base_count) {
    const std::string gen = trim(raw);
    const auto eq = gen.find('=');
    if (eq == std::string::npos || gen.find('=', eq + 1) != std::string::npos) {
        throw ParseError("generator '" + gen + "' must look like D=ABC");
    }
    const std::string lhs = trim(std::string_view(gen).substr(0, eq));
    std::string rhs = trim(std::string_view(gen).substr(eq + 1));
    if (lhs.size() != 1) throw ParseError("generator '" + gen + "': left side must be a single factor letter");
    Generator g;
    g.target = factor_index(lhs[0], n, gen);
    if (g.target < base_count) {
        throw GeneratorError("generator '" + gen + "' redefines base factor " + lhs);
    }
    if (!rhs.empty() && (rhs[0] == '-' || rhs[0] == '+')) {
        g.negated = rhs[0] == '-';
        rhs = trim(std::string_view(rhs).substr(1));
    }
    if (rhs.empty()) throw ParseError("generator '" + gen + "' has an empty right side");
    std::set<std::size_t> seen;
    for (char c : rhs) {
        const std::size_t idx = factor_index(c, n, gen);
        if (idx >= base_count) {
            throw GeneratorError("generator '" + gen + "' references generated factor " + std::string(1, c));
        }
        if (!seen.insert(idx).second) {
            throw GeneratorError("generator '" + gen + "' repeats factor " + std::string(1, c));
        }
        g.bases.push_back(idx);
    }
    return g;
}

}  // namespace

SampleSet full_factorial(std::size_t n, int levels) {
    check_factor_count(n, 1, "full factorial");
    if (levels != 2 && levels != 3) throw LevelError("full factorial supports 2 or 3 levels");
    const auto lv = static_cast<std::size_t>(levels);
    std::vector<double> pts;
    pts.reserve(checked_pow(lv, n) * n);
    const double values2[] = {-1.0, 1.0};
    const double values3[] = {-1.0, 0.0, 1.0};
    const double* values = levels == 2 ? values2 : values3;
    for_each_tuple(n, lv, [&](const std::vector<std::size_t>& idx) {
        for (std::size_t k = 0; k < n; ++k) pts.push_back(values[idx[k]]);
    });
    return SampleSet(std::move(pts), n, Domain::coded(), "factorial", std::nullopt,
                     {{"levels", std::to_string(levels)}});
}

SampleSet fractional_factorial(std::size_t n, const std::vector<std::string>& generators) {
    check_factor_count(n, 1, "fractional factorial");
    const std::size_t k = generators.size();
    if (k >= n) throw GeneratorError("need fewer generators than factors");
    const std::size_t base_count = n - k;

    std::vector<Generator> gens;
    std::set<std::size_t> defined;
    for (const auto& raw : generators) {
        Generator g = parse_generator(raw, n, base_count);
        if (!defined.insert(g.target).second) {
            throw GeneratorError("factor " + std::string(1, static_cast<char>('A' + g.target)) + " is defined twice");
        }
        gens.push_back(std::move(g));
    }

    std::vector<double> pts;
    pts.reserve(checked_pow(2, base_count) * n);
    std::vector<double> row(n);
    for_each_tuple(base_count, 2, [&](const std::vector<std::size_t>& idx) {
        for (std::size_t b = 0; b < base_count; ++b) row[b] = idx[b] == 0 ? -1.0 : 1.0;
        for (const auto& g : gens) {
            double v = g.negated ? -1.0 : 1.0;
            for (std::size_t b : g.bases) v *= row[b];
            row[g.target] = v;
        }
        pts.insert(pts.end(), row.begin(), row.end());
    });

    std::string joined;
    for (const auto& g : generators) joined += (joined.empty() ? "" : ",") + trim(g);
    return SampleSet(std::move(pts), n, Domain::coded(), "fractional", std::nullopt,
                     {{"generators", joined}});
}

double rotatable_alpha(std::size_t n) {
    return std::pow(std::ldexp(1.0, static_cast<int>(n)), 0.25);
}

SampleSet central_composite(std::size_t n, const CcdVariant& variant) {
    check_factor_count(n, 2, "central composite design");
    double alpha = variant.alpha.value_or(rotatable_alpha(n));
    if (variant.kind == CcdKind::Faced) alpha = 1.0;
    if (!(alpha >= 1.0) || !std::isfinite(alpha)) throw DomainError("CCD alpha must be >= 1");

    double cube = 1.0;
    double axial = alpha;
    const char* name = "ccc";
    switch (variant.kind) {
        case CcdKind::Circumscribed: break;
        case CcdKind::Inscribed:
            cube = 1.0 / alpha;
            axial = 1.0;
            name = "cci";
            break;
        case CcdKind::Faced:
            axial = 1.0;
            name = "ccf";
            break;
    }

    std::vector<double> pts = two_level_cube(n, cube);
    for (std::size_t k = 0; k < n; ++k) {
        for (double sign : {-1.0, 1.0}) {
            for (std::size_t c = 0; c < n; ++c) pts.push_back(c == k ? sign * axial : 0.0);
        }
    }
    pts.insert(pts.end(), n, 0.0);

    return SampleSet(std::move(pts), n, Domain::coded(std::max(1.0, axial)), "ccd", std::nullopt,
                     {{"variant", name}, {"alpha", format_real(alpha)}});
}

SampleSet box_behnken(std::size_t n) {
    check_factor_count(n, 3, "Box-Behnken design");
    std::vector<double> pts;
    pts.reserve((2 * n * (n - 1) + 1) * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            for (double si : {-1.0, 1.0}) {
                for (double sj : {-1.0, 1.0}) {
                    for (std::size_t c = 0; c < n; ++c) pts.push_back(c == i ? si : (c == j ? sj : 0.0));
                }
            }
        }
    }
    pts.insert(pts.end(), n, 0.0);
    return SampleSet(std::move(pts), n, Domain::coded(), "bbd");
}

SampleSet doehlert(std::size_t n) {
    check_factor_count(n, 2, "Doehlert design");
    // v_k = centroid(v_0..v_{k-1}) + h_k e_k, h_k = sqrt((k+1)/(2k)) for unit edge.
    std::vector<std::vector<double>> v(n + 1, std::vector<double>(n, 0.0));
    for (std::size_t k = 1; k <= n; ++k) {
        for (std::size_t c = 0; c + 1 < k; ++c) {
            double sum = 0.0;
            for (std::size_t a = 0; a < k; ++a) sum += v[a][c];
            v[k][c] = sum / static_cast<double>(k);
        }
        const double kd = static_cast<double>(k);
        v[k][k - 1] = std::sqrt((kd + 1.0) / (2.0 * kd));
    }

    std::vector<double> pts;
    pts.reserve((n * n + n + 1) * n);
    auto push_diff = [&](std::size_t a, std::size_t b, double sign) {
        for (std::size_t c = 0; c < n; ++c) {
            const double x = sign * (v[a][c] - v[b][c]);
            pts.push_back(std::clamp(x, -1.0, 1.0));
        }
    };
    for (double sign : {1.0, -1.0}) {
        for (std::size_t a = 1; a <= n; ++a) {
            for (std::size_t b = 0; b < a; ++b) push_diff(a, b, sign);
        }
    }
    pts.insert(pts.end(), n, 0.0);
    return SampleSet(std::move(pts), n, Domain::coded(), "doehlert");
}

OrthogonalArray OrthogonalArray::from_rows(const std::vector<std::vector<int>>& rows,
                                           std::vector<int> levels, std::size_t strength) {
    OrthogonalArray a;
    a.rows = rows.size();
    a.cols = rows.empty() ? 0 : rows.front().size();
    a.levels = std::move(levels);
    a.strength = strength;
    for (const auto& r : rows) {
        if (r.size() != a.cols) throw ShapeError("orthogonal array rows differ in length");
        a.table.insert(a.table.end(), r.begin(), r.end());
    }
    if (a.levels.size() != a.cols) throw ShapeError("need one level count per column");
    return a;
}

OaCheck oa_verify(const OrthogonalArray& a) {
    OaCheck out;
    auto fail = [&](std::string msg, std::vector<std::size_t> cols = {}) {
        out.ok = false;
        out.message = std::move(msg);
        out.violating_columns = std::move(cols);
        return out;
    };
    if (a.rows == 0 || a.cols == 0) return fail("array is empty");
    if (a.table.size() != a.rows * a.cols || a.levels.size() != a.cols) return fail("array shape is inconsistent");
    for (std::size_t c = 0; c < a.cols; ++c) {
        if (a.levels[c] < 1) return fail("column " + std::to_string(c + 1) + " has no levels", {c});
        for (std::size_t r = 0; r < a.rows; ++r) {
            const int v = a(r, c);
            if (v < 0 || v >= a.levels[c]) {
                return fail("entry (" + std::to_string(r + 1) + "," + std::to_string(c + 1) +
                                ") is outside [0," + std::to_string(a.levels[c]) + ")",
                            {c});
            }
        }
    }
    const std::size_t t = a.strength;
    if (t > a.cols) return fail("strength exceeds the number of columns");
    if (t == 0) return out;

    // Walk every t-subset of columns in lexicographic order.
    std::vector<std::size_t> subset(t);
    for (std::size_t i = 0; i < t; ++i) subset[i] = i;
    while (true) {
        std::size_t combos = 1;
        for (std::size_t c : subset) combos *= static_cast<std::size_t>(a.levels[c]);
        if (a.rows % combos != 0) {
            return fail("N=" + std::to_string(a.rows) + " is not a multiple of the " + std::to_string(combos) +
                            " level combinations",
                        subset);
        }
        const std::size_t expected = a.rows / combos;
        std::vector<std::size_t> counts(combos, 0);
        for (std::size_t r = 0; r < a.rows; ++r) {
            std::size_t key = 0;
            for (std::size_t c : subset) key = key * static_cast<std::size_t>(a.levels[c]) + static_cast<std::size_t>(a(r, c));
            ++counts[key];
        }
        for (std::size_t key = 0; key < combos; ++key) {
            if (counts[key] != expected) {
                std::ostringstream msg;
                msg << "columns";
                for (std::size_t c : subset) msg << ' ' << c + 1;
                msg << ": a level combination appears " << counts[key] << " times, expected " << expected;
                return fail(msg.str(), subset);
            }
        }
        // next subset
        std::size_t i = t;
        while (i > 0 && subset[i - 1] == a.cols - t + i - 1) --i;
        if (i == 0) break;
        ++subset[i - 1];
        for (std::size_t j = i; j < t; ++j) subset[j] = subset[j - 1] + 1;
    }
    return out;
}

OrthogonalArray oa_from_fractional(std::size_t n, const std::vector<std::string>& generators,
                                   std::size_t strength) {
    const SampleSet ff = fractional_factorial(n, generators);
    OrthogonalArray a;
    a.rows = ff.size();
    a.cols = n;
    a.levels.assign(n, 2);
    a.strength = strength;
    a.table.reserve(ff.data().size());
    for (double x : ff.data()) a.table.push_back(x > 0.0 ? 1 : 0);
    return a;
}

std::vector<std::string> oa_catalog_names() {
    return {"OA(4,3,2,2)", "OA(8,4,2,3)", "OA(8,7,2,2)", "OA(16,15,2,2)"};
}

OrthogonalArray oa_bose(std::size_t p) {
    if (p < 2 || p > 1000 || smallest_prime_at_least(p) != p) throw LevelError("Bose construction needs a prime p");
    std::vector<std::vector<int>> rows;
    for (std::size_t a = 0; a < p; ++a) {
        for (std::size_t b = 0; b < p; ++b) {
            std::vector<int> r{static_cast<int>(b)};
            for (std::size_t k = 0; k < p; ++k) r.push_back(static_cast<int>((a + k * b) % p));
            rows.push_back(std::move(r));
        }
    }
    return OrthogonalArray::from_rows(rows, std::vector<int>(p + 1, static_cast<int>(p)), 2);
}

OrthogonalArray oa_stack(const OrthogonalArray& a, std::size_t copies) {
    if (copies == 0) throw SizeError("need at least one copy");
    OrthogonalArray out = a;
    out.rows = a.rows * copies;
    out.table.clear();
    for (std::size_t c = 0; c < copies; ++c) out.table.insert(out.table.end(), a.table.begin(), a.table.end());
    return out;
}

OrthogonalArray oa_catalog(std::string_view name) {
    if (name == "OA(4,3,2,2)") {
        return OrthogonalArray::from_rows({{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}}, {2, 2, 2}, 2);
    }
    if (name == "OA(8,4,2,3)") return oa_from_fractional(4, {"D=ABC"}, 3);
    if (name == "OA(8,7,2,2)") return oa_from_fractional(7, {"D=AB", "E=AC", "F=BC", "G=ABC"}, 2);
    if (name == "OA(16,15,2,2)") {
        return oa_from_fractional(15,
                                  {"E=AB", "F=AC", "G=AD", "H=BC", "I=BD", "J=CD", "K=ABC", "L=ABD", "M=ACD",
                                   "N=BCD", "O=ABCD"},
                                  2);
    }
    throw LevelError("unknown orthogonal array '" + std::string(name) + "'");
}

namespace {

int parse_int(std::string_view s, std::size_t line) {
    const std::string t = trim(s);
    int v = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty()) {
        throw ParseError("'" + t + "' is not an integer", line);
    }
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

}  // namespace

OrthogonalArray parse_oa_csv(std::string_view text) {
    std::optional<std::size_t> strength;
    std::vector<int> levels;
    bool have_header = false;
    std::size_t cols = 0;
    std::vector<std::vector<int>> rows;

    std::size_t line_no = 0;
    for (std::string_view line : split(text, '\n')) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (trim(line).empty()) continue;
        if (line.front() == '#') {
            std::istringstream meta{std::string(line.substr(1))};
            std::string tok;
            while (meta >> tok) {
                const auto eq = tok.find('=');
                if (eq == std::string::npos) throw ParseError("malformed metadata token '" + tok + "'", line_no);
                const std::string key = tok.substr(0, eq);
                const std::string val = tok.substr(eq + 1);
                if (key == "strength") {
                    strength = static_cast<std::size_t>(parse_int(val, line_no));
                } else if (key == "levels") {
                    levels.clear();
                    for (auto part : split(val, ',')) levels.push_back(parse_int(part, line_no));
                } else {
                    throw ParseError("unknown metadata key '" + key + "'", line_no);
                }
            }
            continue;
        }
        const auto fields = split(line, ',');
        if (!have_header) {
            for (std::size_t c = 0; c < fields.size(); ++c) {
                if (trim(fields[c]) != "c" + std::to_string(c + 1)) {
                    throw ParseError("header must be c1,...,cm", line_no);
                }
            }
            cols = fields.size();
            have_header = true;
            continue;
        }
        if (fields.size() != cols) {
            throw ParseError("expected " + std::to_string(cols) + " fields, found " + std::to_string(fields.size()),
                             line_no);
        }
        std::vector<int> r;
        r.reserve(cols);
        for (auto f : fields) r.push_back(parse_int(f, line_no));
        rows.push_back(std::move(r));
    }
    if (!have_header) throw ParseError("missing c1,...,cm header");
    if (!strength) throw ParseError("missing #strength= metadata");
    if (levels.size() == 1 && cols > 1) levels.assign(cols, levels.front());
    if (levels.size() != cols) throw ParseError("levels= must list one count per column");
    if (rows.empty()) throw ParseError("array has no rows");
    return OrthogonalArray::from_rows(rows, levels, *strength);
}

OrthogonalArray read_oa_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_oa_csv(buf.str());
}

std::string format_oa_csv(const OrthogonalArray& a) {
    std::ostringstream out;
    out << "#strength=" << a.strength << " levels=";
    for (std::size_t c = 0; c < a.cols; ++c) out << (c ? "," : "") << a.levels[c];
    out << '\n';
    for (std::size_t c = 0; c < a.cols; ++c) out << (c ? "," : "") << 'c' << c + 1;
    out << '\n';
    for (std::size_t r = 0; r < a.rows; ++r) {
        for (std::size_t c = 0; c < a.cols; ++c) out << (c ? "," : "") << a(r, c);
        out << '\n';
    }
    return out.str();
}

SampleSet oa_lhs(const OrthogonalArray& a, RandomStream stream) {
    if (a.rows == 0 || a.cols == 0 || a.table.size() != a.rows * a.cols || a.levels.size() != a.cols) {
        throw ShapeError("orthogonal array shape is inconsistent");
    }
    const int s = a.levels.front();
    if (s < 1 || std::any_of(a.levels.begin(), a.levels.end(), [s](int l) { return l != s; })) {
        throw LevelError("OA-based LHS needs the same level count in every column");
    }
    const auto su = static_cast<std::size_t>(s);
    if (a.rows % su != 0) throw LevelError("row count must be a multiple of the level count");
    const std::size_t per_level = a.rows / su;
    const std::size_t n = a.rows;
    const std::size_t m = a.cols;

    std::vector<double> pts(n * m);
    for (std::size_t c = 0; c < m; ++c) {
        std::vector<std::vector<std::size_t>> rows_at(su);
        for (std::size_t r = 0; r < n; ++r) {
            const int v = a(r, c);
            if (v < 0 || v >= s) throw LevelError("entry outside the declared level range");
            rows_at[static_cast<std::size_t>(v)].push_back(r);
        }
        for (std::size_t lv = 0; lv < su; ++lv) {
            if (rows_at[lv].size() != per_level) {
                throw LevelError("column " + std::to_string(c + 1) + " does not use every level equally often");
            }
            const auto perm = stream.permutation(per_level);
            for (std::size_t t = 0; t < per_level; ++t) {
                const std::size_t stratum = lv * per_level + perm[t];
                pts[rows_at[lv][t] * m + c] = detail::stratum_point(stratum, stream.uniform(), n);
            }
        }
    }
    return SampleSet(std::move(pts), m, Domain::unit_cube(), "oa-lhs", stream.seed(),
                     {{"oa_rows", std::to_string(n)},
                      {"oa_strength", std::to_string(a.strength)},
                      {"rng", std::string(RandomStream::kAlgorithm)},
                      {"substream", std::to_string(stream.substream())}});
}

}  // namespace doeforge
