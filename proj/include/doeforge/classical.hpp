#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "doeforge/core.hpp"
#include "doeforge/random_stream.hpp"

namespace doeforge {

// Full factorial with 2 ({-1,+1}) or 3 ({-1,0,+1}) levels per factor, rows in
// lexicographic order (first factor varies slowest).
SampleSet full_factorial(std::size_t n, int levels);

// Two-level regular fraction 2^(n-k). Base factors are the first n-k letters
// (A, B, ...); every generator defines one of the remaining letters as a
// product of base factors, e.g. "D=ABC" or "E=-AB".
SampleSet fractional_factorial(std::size_t n, const std::vector<std::string>& generators);

enum class CcdKind { Circumscribed, Inscribed, Faced };

struct CcdVariant {
    CcdKind kind = CcdKind::Circumscribed;
    // Axial distance; defaults to the rotatable value (2^n)^(1/4). Faced forces 1.
    std::optional<double> alpha;
};

double rotatable_alpha(std::size_t n);

// 2^n cube points, then 2n axial points (-a, +a per factor), then the center.
SampleSet central_composite(std::size_t n, const CcdVariant& variant = {});

// For each factor pair (i<j): (+-1, +-1) in (i, j), zero elsewhere; one center point last.
SampleSet box_behnken(std::size_t n);

// Center plus every difference v_a - v_b of a unit-edge regular simplex with
// v_0 at the origin and v_1 = e_1; n^2 + n + 1 points.
SampleSet doehlert(std::size_t n);

// Integer array with declared per-column level counts and strength.
struct OrthogonalArray {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<int> levels;   // per column
    std::size_t strength = 0;
    std::vector<int> table;    // rows x cols, row-major

    int operator()(std::size_t r, std::size_t c) const { return table[r * cols + c]; }
    int& operator()(std::size_t r, std::size_t c) { return table[r * cols + c]; }

    static OrthogonalArray from_rows(const std::vector<std::vector<int>>& rows,
                                     std::vector<int> levels, std::size_t strength);
};

struct OaCheck {
    bool ok = true;
    std::vector<std::size_t> violating_columns;  // first failing subset, 0-based
    std::string message;

    explicit operator bool() const { return ok; }
};

// Balance check: every `strength`-column projection contains each level
// combination exactly N / prod(s_i) times.
OaCheck oa_verify(const OrthogonalArray& a);

// Two-level array read off a fractional factorial (-1 -> 0, +1 -> 1).
OrthogonalArray oa_from_fractional(std::size_t n, const std::vector<std::string>& generators,
                                   std::size_t strength);

// Bose construction OA(p^2, p+1, p, 2) for prime p: row (a, b) holds
// b, a, a+b, a+2b, ..., a+(p-1)b mod p.
OrthogonalArray oa_bose(std::size_t p);

// Array repeated `copies` times (same strength, index multiplied).
OrthogonalArray oa_stack(const OrthogonalArray& a, std::size_t copies);

// Built-in arrays: "OA(4,3,2,2)", "OA(8,4,2,3)", "OA(8,7,2,2)", "OA(16,15,2,2)".
OrthogonalArray oa_catalog(std::string_view name);
std::vector<std::string> oa_catalog_names();

// CSV form: "#strength=t levels=s1,...,sm", header "c1,...,cm", integer rows.
OrthogonalArray read_oa_csv(const std::filesystem::path& path);
OrthogonalArray parse_oa_csv(std::string_view text);
std::string format_oa_csv(const OrthogonalArray& a);

// Orthogonal-array-based Latin hypercube on [0,1)^m with N strata per axis.
SampleSet oa_lhs(const OrthogonalArray& a, RandomStream stream);

}  // namespace doeforge
