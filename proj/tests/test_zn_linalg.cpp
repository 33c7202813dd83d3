#include <random>

#include "doctest.h"
#include "dw/zn_linalg.hpp"

using namespace dw;

namespace {

// Subgroup order by closing the span explicitly (tiny cases only).
std::size_t brute_span(const std::vector<ZnRow>& rows, std::uint32_t n) {
    std::vector<ZnRow> seen{ZnRow(rows.empty() ? 0 : rows[0].size(), 0)};
    for (std::size_t i = 0; i < seen.size(); ++i)
        for (const auto& r : rows) {
            ZnRow s = seen[i];
            for (std::size_t j = 0; j < s.size(); ++j) s[j] = (s[j] + r[j]) % n;
            bool found = false;
            for (const auto& t : seen) found = found || t == s;
            if (!found) seen.push_back(s);
        }
    return seen.size();
}

}  // namespace

TEST_CASE("span orders over Z/n match explicit closure") {
    std::mt19937_64 rng(41);
    for (std::uint32_t n : {2u, 4u, 6u, 8u, 9u, 12u})
        for (int rep = 0; rep < 30; ++rep) {
            std::size_t w = 1 + rng() % 3, k = rng() % 4;
            std::vector<ZnRow> rows(k, ZnRow(w));
            for (auto& r : rows)
                for (auto& x : r) x = static_cast<std::uint32_t>(rng() % n);
            auto expect = brute_span(rows, n);
            CHECK(span_order(rows, n, Exec::serial) == expect);
            CHECK(span_order(rows, n, Exec::parallel) == expect);
        }
}

TEST_CASE("Howell solve returns combination coefficients") {
    std::mt19937_64 rng(42);
    for (std::uint32_t n : {4u, 6u, 12u})
        for (int rep = 0; rep < 20; ++rep) {
            std::size_t w = 3, k = 3;
            std::vector<ZnRow> gens(k, ZnRow(w));
            for (auto& r : gens)
                for (auto& x : r) x = static_cast<std::uint32_t>(rng() % n);
            std::vector<ZnRow> aug;
            for (std::size_t i = 0; i < k; ++i) {
                ZnRow r = gens[i];
                r.resize(w + k, 0);
                r[w + i] = 1;
                aug.push_back(r);
            }
            Howell h = howell(aug, n, w);
            ZnRow target(w, 0);
            std::vector<std::uint32_t> c(k);
            for (std::size_t i = 0; i < k; ++i) {
                c[i] = static_cast<std::uint32_t>(rng() % n);
                for (std::size_t j = 0; j < w; ++j) target[j] = (target[j] + c[i] * gens[i][j]) % n;
            }
            auto sol = h.solve(target);
            REQUIRE(sol.has_value());
            ZnRow back(w, 0);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < w; ++j) back[j] = (back[j] + (*sol)[i] * gens[i][j]) % n;
            CHECK(back == target);
        }
    Howell h = howell({{2, 0, 1}}, 4, 2);
    CHECK_FALSE(h.solve({1, 0}).has_value());
    CHECK(unit_normalizer(6, 8) * 6 % 8 == 2);
}
