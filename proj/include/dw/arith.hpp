#pragma once
// Integer arithmetic helpers: factorization, primality, modular roots.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace dw {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;

struct FactorizationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PrimePower {
    mpz_class p;
    unsigned e;
};

i64 mod_floor(i64 a, i64 n);
i64 powmod(i64 b, u64 e, i64 n);
// Extended gcd: returns g = gcd(a, b) >= 0 and s, t with s*a + t*b = g.
i64 xgcd(i64 a, i64 b, i64& s, i64& t);

// Miller-Rabin. Deterministic below 3.3e24 (first 13 prime bases);
// above that, 64 rounds with the first 64 primes as bases.
bool is_prime(const mpz_class& n);
bool is_prime_u64(u64 n);

// Factorization of |n| (n != 0): trial division to 1e6, then Pollard rho.
std::vector<PrimePower> factor(const mpz_class& n);
std::vector<mpz_class> prime_divisors(const mpz_class& n);

// n = core * root^2 with core squarefree and carrying the sign of n.
struct SquarefreeSplit {
    mpz_class core;
    mpz_class root;
};
SquarefreeSplit squarefree_split(const mpz_class& n);

int kronecker(const mpz_class& a, const mpz_class& n);
int legendre(i64 a, i64 p);

// Square root of a modulo an odd prime p (Tonelli-Shanks); nullopt if a is a non-residue.
std::optional<mpz_class> sqrt_mod_prime(const mpz_class& a, const mpz_class& p);
// Square root modulo a squarefree modulus n > 0 via CRT; result in (-n/2, n/2].
std::optional<mpz_class> sqrt_mod_squarefree(const mpz_class& a, const mpz_class& n);

// x with x^2 = a (mod q^k). For odd q: q does not divide a and a is a residue.
// For q = 2: a = 1 (mod 8); the root returned is 1 (mod 4).
mpz_class padic_sqrt(const mpz_class& a, const mpz_class& q, unsigned k);

// q-adic valuation; returns a large sentinel for 0.
constexpr long kInfValuation = 1L << 40;
long valuation(const mpz_class& n, const mpz_class& q);
long valuation(const mpq_class& x, const mpz_class& q);

std::vector<u64> primes_up_to(u64 n);

}  // namespace dw
