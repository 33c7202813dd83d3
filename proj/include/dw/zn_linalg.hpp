#pragma once
// Linear algebra over Z/n for composite n: Howell normal form of a row span.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace dw {

enum class Exec { serial, parallel };

using ZnRow = std::vector<std::uint32_t>;

// Row span of generators in (Z/n)^width. Pivots are taken only in the first
// data_cols columns; rows vanishing there are kept in `tail` and span the
// intersection of the row span with {0} x (Z/n)^(width - data_cols).
struct Howell {
    std::uint32_t n = 1;
    std::size_t data_cols = 0;
    std::size_t width = 0;
    std::vector<ZnRow> rows;
    std::vector<std::size_t> pivot_col;
    std::vector<std::uint32_t> pivot_val;  // divides n
    std::vector<ZnRow> tail;

    // Order of the projection of the span to the data columns.
    mpz_class span_order() const;
    // If v (data part only) lies in the projected span, returns coefficients c
    // over the trailing columns with v = sum_i c_i * (generator i restricted to data),
    // assuming the trailing block of the input was an identity.
    std::optional<ZnRow> solve(const ZnRow& v) const;
    bool contains(const ZnRow& v) const;
};

Howell howell(std::vector<ZnRow> rows, std::uint32_t n, std::size_t data_cols,
              Exec exec = Exec::parallel);

// Order of the subgroup of (Z/n)^width generated by the rows.
mpz_class span_order(std::vector<ZnRow> rows, std::uint32_t n, Exec exec = Exec::parallel);

std::uint32_t unit_normalizer(std::uint32_t a, std::uint32_t n);

}  // namespace dw
