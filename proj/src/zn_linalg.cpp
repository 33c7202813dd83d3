#include "dw/zn_linalg.hpp"

#include <numeric>
#include <stdexcept>

#include "dw/arith.hpp"

namespace dw {

namespace {

using u32 = std::uint32_t;

// r <- (s*r + t*o), o <- (u*r + v*o), from column c on.
void mix(ZnRow& r, ZnRow& o, u64 s, u64 t, u64 u, u64 v, u32 n, std::size_t c) {
    const std::size_t w = r.size();
    for (std::size_t j = c; j < w; ++j) {
        u64 a = r[j], b = o[j];
        r[j] = static_cast<u32>((s * a + t * b) % n);
        o[j] = static_cast<u32>((u * a + v * b) % n);
    }
}

void scale(ZnRow& r, u64 k, u32 n, std::size_t c) {
    for (std::size_t j = c; j < r.size(); ++j) r[j] = static_cast<u32>(r[j] * k % n);
}

// row -= k * piv, from column c on.
inline void axpy(ZnRow& row, const ZnRow& piv, u64 k, u32 n, std::size_t c) {
    if (k == 0) return;
    const u64 neg = n - k;
    const std::size_t w = row.size();
    for (std::size_t j = c; j < w; ++j) {
        u32 p = piv[j];
        if (p) row[j] = static_cast<u32>((row[j] + neg * p) % n);
    }
}

u64 umod(i64 a, u32 n) {
    return static_cast<u64>(mod_floor(a, n));
}

bool is_zero(const ZnRow& r, std::size_t from, std::size_t to) {
    for (std::size_t j = from; j < to; ++j)
        if (r[j]) return false;
    return true;
}

void eliminate(std::vector<ZnRow>& active, const ZnRow& piv, u32 g, u32 n, std::size_t c,
               Exec exec) {
    const std::ptrdiff_t m = static_cast<std::ptrdiff_t>(active.size());
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 16)
        for (std::ptrdiff_t i = 0; i < m; ++i) {
            u32 b = active[i][c];
            if (b) axpy(active[i], piv, b / g, n, c);
        }
    } else {
        for (std::ptrdiff_t i = 0; i < m; ++i) {
            u32 b = active[i][c];
            if (b) axpy(active[i], piv, b / g, n, c);
        }
    }
}

}  // namespace

std::uint32_t unit_normalizer(std::uint32_t a, std::uint32_t n) {
    // Unit u mod n with u*a = gcd(a, n) mod n.
    u32 g = std::gcd(a, n);
    u32 ap = a / g, np = n / g;
    if (np == 1) return 1;
    i64 s, t;
    xgcd(ap % np, np, s, t);
    u64 u = umod(s, np);
    while (std::gcd<u64, u64>(u, n) != 1) u += np;
    return static_cast<u32>(u % n);
}

Howell howell(std::vector<ZnRow> rows, std::uint32_t n, std::size_t data_cols, Exec exec) {
    Howell h;
    h.n = n;
    h.data_cols = data_cols;
    h.width = rows.empty() ? data_cols : rows.front().size();
    for (auto& r : rows) {
        if (r.size() != h.width) throw std::invalid_argument("howell: ragged rows");
        for (auto& x : r) x %= n;
    }
    std::vector<ZnRow> active;
    active.reserve(rows.size());
    for (auto& r : rows)
        if (!is_zero(r, 0, h.width)) active.push_back(std::move(r));

    for (std::size_t c = 0; c < data_cols && !active.empty(); ++c) {
        // Pivot candidate: the entry with the smallest gcd with n.
        std::ptrdiff_t best = -1;
        u32 best_g = n;
        for (std::size_t i = 0; i < active.size(); ++i) {
            u32 b = active[i][c];
            if (!b) continue;
            u32 g = std::gcd(b, n);
            if (g < best_g) {
                best_g = g;
                best = static_cast<std::ptrdiff_t>(i);
                if (g == 1) break;
            }
        }
        if (best < 0) continue;
        ZnRow piv = std::move(active[best]);
        active[best] = std::move(active.back());
        active.pop_back();
        u32 g = std::gcd(piv[c], n);
        // Sequential gcd merges for entries not divisible by the pivot gcd.
        for (auto& r : active) {
            u32 b = r[c];
            if (!b || b % g == 0) continue;
            i64 s, t;
            i64 a = piv[c];
            i64 gg = xgcd(a, b, s, t);
            mix(piv, r, umod(s, n), umod(t, n), umod(-(static_cast<i64>(b) / gg), n),
                umod(a / gg, n), n, c);
            g = std::gcd(piv[c], n);
        }
        u32 u = unit_normalizer(piv[c], n);
        if (u != 1) scale(piv, u, n, c);
        g = piv[c];
        eliminate(active, piv, g, n, c, exec);
        if (g != 1) {
            ZnRow extra = piv;
            scale(extra, n / g, n, c);
            if (!is_zero(extra, c, h.width)) active.push_back(std::move(extra));
        }
        // Drop rows that became zero.
        std::size_t k = 0;
        for (std::size_t i = 0; i < active.size(); ++i)
            if (!is_zero(active[i], c, h.width)) {
                if (k != i) active[k] = std::move(active[i]);
                ++k;
            }
        active.resize(k);
        h.rows.push_back(std::move(piv));
        h.pivot_col.push_back(c);
        h.pivot_val.push_back(g);
    }
    for (auto& r : active)
        if (!is_zero(r, 0, h.width)) h.tail.push_back(std::move(r));
    return h;
}

mpz_class Howell::span_order() const {
    mpz_class out = 1;
    for (u32 g : pivot_val) out *= n / g;
    return out;
}

std::optional<ZnRow> Howell::solve(const ZnRow& v) const {
    ZnRow x(width, 0);
    for (std::size_t j = 0; j < data_cols && j < v.size(); ++j) x[j] = v[j] % n;
    std::size_t k = 0;
    for (std::size_t c = 0; c < data_cols; ++c) {
        if (k < rows.size() && pivot_col[k] == c) {
            if (x[c] % pivot_val[k]) return std::nullopt;
            axpy(x, rows[k], x[c] / pivot_val[k], n, c);
            ++k;
        } else if (x[c]) {
            return std::nullopt;
        }
    }
    ZnRow coeff(width - data_cols);
    for (std::size_t j = data_cols; j < width; ++j) coeff[j - data_cols] = (n - x[j]) % n;
    return coeff;
}

bool Howell::contains(const ZnRow& v) const {
    return solve(v).has_value();
}

mpz_class span_order(std::vector<ZnRow> rows, std::uint32_t n, Exec exec) {
    if (rows.empty()) return 1;
    std::size_t w = rows.front().size();
    return howell(std::move(rows), n, w, exec).span_order();
}

}  // namespace dw
