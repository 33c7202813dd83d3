#include "dw/arith.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace dw {

i64 mod_floor(i64 a, i64 n) {
    i64 r = a % n;
    return r < 0 ? r + n : r;
}

i64 powmod(i64 b, u64 e, i64 n) {
    i128 r = 1 % n, x = mod_floor(b, n);
    while (e) {
        if (e & 1) r = r * x % n;
        x = x * x % n;
        e >>= 1;
    }
    return static_cast<i64>(r);
}

i64 xgcd(i64 a, i64 b, i64& s, i64& t) {
    i64 s0 = 1, t0 = 0, s1 = 0, t1 = 1;
    while (b != 0) {
        i64 q = a / b;
        i64 r = a - q * b;
        a = b;
        b = r;
        i64 ns = s0 - q * s1, nt = t0 - q * t1;
        s0 = s1;
        t0 = t1;
        s1 = ns;
        t1 = nt;
    }
    if (a < 0) {
        a = -a;
        s0 = -s0;
        t0 = -t0;
    }
    s = s0;
    t = t0;
    return a;
}

std::vector<u64> primes_up_to(u64 n) {
    std::vector<bool> comp(n + 1, false);
    std::vector<u64> out;
    for (u64 i = 2; i <= n; ++i) {
        if (comp[i]) continue;
        out.push_back(i);
        for (u64 j = i * i; j <= n; j += i) comp[j] = true;
    }
    return out;
}

namespace {

const std::vector<u64>& small_primes() {
    static const std::vector<u64> ps = primes_up_to(1000000);
    return ps;
}

bool mr_round(const mpz_class& n, const mpz_class& d, unsigned s, unsigned long a) {
    mpz_class x, base = a;
    mpz_class nm1 = n - 1;
    mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == nm1) return true;
    for (unsigned r = 1; r < s; ++r) {
        x = x * x % n;
        if (x == nm1) return true;
    }
    return false;
}

mpz_class rho(const mpz_class& n, unsigned long c) {
    // Brent's cycle detection with batched gcds.
    mpz_class y = 2, x, ys, q = 1, g = 1;
    const unsigned m = 128;
    unsigned long r = 1;
    auto f = [&](mpz_class& v) {
        v = (v * v + c) % n;
    };
    do {
        x = y;
        for (unsigned long i = 0; i < r; ++i) f(y);
        unsigned long k = 0;
        while (k < r && g == 1) {
            ys = y;
            for (unsigned long i = 0; i < std::min<unsigned long>(m, r - k); ++i) {
                f(y);
                mpz_class diff = x - y;
                if (diff < 0) diff = -diff;
                q = q * diff % n;
            }
            mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            k += m;
        }
        r *= 2;
        if (r > (1UL << 26)) return n;
    } while (g == 1);
    if (g == n) {
        do {
            f(ys);
            mpz_class diff = x - ys;
            if (diff < 0) diff = -diff;
            mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        } while (g == 1);
    }
    return g;
}

void factor_rec(const mpz_class& n, std::map<mpz_class, unsigned>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out[n]++;
        return;
    }
    mpz_class r;
    if (mpz_perfect_square_p(n.get_mpz_t())) {
        mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
        factor_rec(r, out);
        factor_rec(r, out);
        return;
    }
    for (unsigned long c = 1; c < 64; ++c) {
        mpz_class g = rho(n, c);
        if (g != n && g != 1) {
            factor_rec(g, out);
            factor_rec(n / g, out);
            return;
        }
    }
    throw FactorizationError("Pollard rho attempts exhausted");
}

}  // namespace

bool is_prime(const mpz_class& n) {
    if (n < 2) return false;
    static const unsigned long small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
    for (unsigned long p : small) {
        if (n == p) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
    }
    mpz_class d = n - 1;
    unsigned s = 0;
    while (mpz_even_p(d.get_mpz_t())) {
        d >>= 1;
        ++s;
    }
    static const mpz_class det_bound("3317044064679887385961981");
    if (n < det_bound) {
        for (unsigned long a : small)
            if (!mr_round(n, d, s, a)) return false;
        return true;
    }
    const auto& ps = small_primes();
    for (std::size_t i = 0; i < 64; ++i)
        if (!mr_round(n, d, s, ps[i])) return false;
    return true;
}

bool is_prime_u64(u64 n) {
    return is_prime(mpz_class(static_cast<unsigned long>(n)));
}

std::vector<PrimePower> factor(const mpz_class& n_in) {
    if (n_in == 0) throw std::invalid_argument("factor: zero");
    mpz_class n = abs(n_in);
    std::map<mpz_class, unsigned> acc;
    for (u64 p : small_primes()) {
        if (mpz_class(static_cast<unsigned long>(p)) * p > n) break;
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            acc[mpz_class(static_cast<unsigned long>(p))]++;
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
        }
    }
    if (n > 1) factor_rec(n, acc);
    std::vector<PrimePower> out;
    for (auto& [p, e] : acc) out.push_back({p, e});
    return out;
}

std::vector<mpz_class> prime_divisors(const mpz_class& n) {
    std::vector<mpz_class> out;
    for (auto& pp : factor(n)) out.push_back(pp.p);
    return out;
}

SquarefreeSplit squarefree_split(const mpz_class& n) {
    SquarefreeSplit s{n < 0 ? mpz_class(-1) : mpz_class(1), 1};
    for (auto& pp : factor(n)) {
        if (pp.e % 2) s.core *= pp.p;
        for (unsigned i = 0; i < pp.e / 2; ++i) s.root *= pp.p;
    }
    return s;
}

int kronecker(const mpz_class& a, const mpz_class& n) {
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

int legendre(i64 a, i64 p) {
    return kronecker(mpz_class(static_cast<long>(a)), mpz_class(static_cast<long>(p)));
}

std::optional<mpz_class> sqrt_mod_prime(const mpz_class& a_in, const mpz_class& p) {
    mpz_class a = a_in % p;
    if (a < 0) a += p;
    if (a == 0) return mpz_class(0);
    if (p == 2) return a;
    if (kronecker(a, p) != 1) return std::nullopt;
    mpz_class q = p - 1;
    unsigned s = 0;
    while (mpz_even_p(q.get_mpz_t())) {
        q >>= 1;
        ++s;
    }
    mpz_class z = 2;
    while (kronecker(z, p) != -1) ++z;
    mpz_class c, x, t, e;
    mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    e = (q + 1) / 2;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    mpz_powm(t.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    unsigned m = s;
    while (t != 1) {
        unsigned i = 0;
        mpz_class tt = t;
        while (tt != 1) {
            tt = tt * tt % p;
            ++i;
        }
        mpz_class b = c;
        for (unsigned j = 0; j + i + 1 < m; ++j) b = b * b % p;
        x = x * b % p;
        c = b * b % p;
        t = t * c % p;
        m = i;
    }
    return x;
}

std::optional<mpz_class> sqrt_mod_squarefree(const mpz_class& a, const mpz_class& n) {
    if (n == 1) return mpz_class(0);
    mpz_class x = 0, mod = 1;
    for (auto& pp : factor(n)) {
        if (pp.e != 1) throw std::invalid_argument("sqrt_mod_squarefree: modulus not squarefree");
        auto r = sqrt_mod_prime(a, pp.p);
        if (!r) return std::nullopt;
        // CRT combine x (mod mod) with r (mod p).
        mpz_class inv;
        mpz_invert(inv.get_mpz_t(), mod.get_mpz_t(), pp.p.get_mpz_t());
        mpz_class k = ((*r - x) % pp.p) * inv % pp.p;
        if (k < 0) k += pp.p;
        x += mod * k;
        mod *= pp.p;
    }
    if (2 * x > n) x -= n;
    return x;
}

mpz_class padic_sqrt(const mpz_class& a, const mpz_class& q, unsigned k) {
    mpz_class mod;
    mpz_pow_ui(mod.get_mpz_t(), q.get_mpz_t(), k);
    if (q == 2) {
        mpz_class am = a % 8;
        if (am < 0) am += 8;
        if (am != 1) throw std::invalid_argument("padic_sqrt: not a 2-adic unit square");
        mpz_class x = 1;
        for (unsigned j = 3; j < k; ++j) {
            // x^2 = a mod 2^j; fix mod 2^(j+1)
            mpz_class m2;
            mpz_ui_pow_ui(m2.get_mpz_t(), 2, j + 1);
            mpz_class diff = (x * x - a) % m2;
            if (diff != 0) {
                mpz_class add;
                mpz_ui_pow_ui(add.get_mpz_t(), 2, j - 1);
                x += add;
            }
        }
        x %= mod;
        if (x < 0) x += mod;
        mpz_class x4 = x % 4;
        if (x4 != 1) x = mod - x;
        return x;
    }
    auto r = sqrt_mod_prime(a, q);
    if (!r || *r == 0) throw std::invalid_argument("padic_sqrt: not a unit square");
    mpz_class x = *r, cur = q;
    while (cur < mod) {
        cur *= cur;
        if (cur > mod) cur = mod;
        mpz_class inv, two_x = 2 * x;
        mpz_invert(inv.get_mpz_t(), two_x.get_mpz_t(), cur.get_mpz_t());
        x = (x - (x * x - a) * inv) % cur;
        if (x < 0) x += cur;
    }
    return x;
}

long valuation(const mpz_class& n, const mpz_class& q) {
    if (n == 0) return kInfValuation;
    mpz_class m = n;
    long v = 0;
    while (mpz_divisible_p(m.get_mpz_t(), q.get_mpz_t())) {
        mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), q.get_mpz_t());
        ++v;
    }
    return v;
}

long valuation(const mpq_class& x, const mpz_class& q) {
    if (x == 0) return kInfValuation;
    return valuation(x.get_num(), q) - valuation(x.get_den(), q);
}

}  // namespace dw
