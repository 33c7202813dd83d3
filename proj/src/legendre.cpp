#include <stdexcept>

#include "dw/relative_quartic.hpp"

namespace dw {

namespace {

std::optional<ConicSolution> solve(const mpz_class& a, const mpz_class& b, unsigned depth) {
    if (depth > 400) throw std::runtime_error("legendre descent did not terminate");
    if (b == 1) return ConicSolution{1, 0, 1};
    if (a == 1) return ConicSolution{b + 1, b - 1, 2};
    if (a < 0 && b < 0) return std::nullopt;
    if (a == b) {
        if (a == -1) return std::nullopt;
        auto s = solve(a, mpz_class(-1), depth + 1);
        if (!s) return std::nullopt;
        return ConicSolution{a * s->y, s->x, s->z};
    }
    if (abs(a) > abs(b)) {
        auto s = solve(b, a, depth + 1);
        if (!s) return std::nullopt;
        return ConicSolution{s->x, s->z, s->y};
    }
    auto t = sqrt_mod_squarefree(a, abs(b));
    if (!t) return std::nullopt;
    mpz_class m = (*t * *t - a) / b;
    if (m == 0) return std::nullopt;
    auto sq = squarefree_split(m);
    auto s = solve(a, sq.core, depth + 1);
    if (!s) return std::nullopt;
    return ConicSolution{*t * s->x + a * s->y, s->x + *t * s->y, sq.root * sq.core * s->z};
}

}  // namespace

std::optional<ConicSolution> legendre_solve(const mpz_class& a, const mpz_class& b) {
    if (a == 0 || b == 0) throw std::invalid_argument("legendre_solve: zero coefficient");
    auto s = solve(a, b, 0);
    if (!s) return s;
    if (s->z == 0 || s->x * s->x - a * s->y * s->y != b * s->z * s->z)
        throw std::logic_error("legendre_solve: invalid solution");
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), s->x.get_mpz_t(), s->y.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), s->z.get_mpz_t());
    s->x /= g;
    s->y /= g;
    s->z /= g;
    if (s->z < 0) {
        s->x = -s->x;
        s->y = -s->y;
        s->z = -s->z;
    }
    return s;
}

}  // namespace dw
