#pragma once
// Imaginary quadratic fields Q(sqrt d), d = p_1 ... p_r, each signed prime p_i = 1 (mod 4).

#include <gmpxx.h>

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "dw/arith.hpp"

namespace dw {

struct InvalidSpec : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct FieldSpec {
    std::vector<long> primes;  // signed
    mpz_class d;

    // Validates: |p| prime, p = 1 (mod 4), distinct |p|, product negative, d != -3.
    static FieldSpec make(std::vector<long> primes);
    std::size_t r() const { return primes.size(); }
    // (d - 1) / 4, so that omega^2 = omega + k for omega = (1 + sqrt d)/2.
    mpz_class k() const { return (d - 1) / 4; }
    // Signed product of the primes with indices in `mask` (bit i for p_{i+1}).
    mpz_class product(std::uint64_t mask) const;
    std::string to_string() const;
};

// u + v * omega
struct QuadInt {
    mpz_class u, v;

    QuadInt() = default;
    QuadInt(mpz_class u_, mpz_class v_) : u(std::move(u_)), v(std::move(v_)) {}
    static QuadInt integer(const mpz_class& n) { return QuadInt(n, 0); }
    // (x + y sqrt d)/2 with x = y (mod 2)
    static QuadInt from_half(const mpz_class& x, const mpz_class& y);
    bool operator==(const QuadInt& o) const { return u == o.u && v == o.v; }
};

QuadInt add(const QuadInt& a, const QuadInt& b);
QuadInt sub(const QuadInt& a, const QuadInt& b);
QuadInt mul(const FieldSpec& f, const QuadInt& a, const QuadInt& b);
QuadInt conj(const QuadInt& a);
mpz_class norm(const FieldSpec& f, const QuadInt& a);
mpz_class trace(const QuadInt& a);

// Integral ideal a Z + (b + c omega) Z with c | a, c | b, 0 <= b < a. Norm a * c.
struct QuadIdeal {
    mpz_class a, b, c;

    static QuadIdeal unit() { return {1, 0, 1}; }
    // Ideal generated (as O-ideal) by the given elements, not all zero.
    static QuadIdeal generated(const FieldSpec& f, const std::vector<QuadInt>& gens);
    static QuadIdeal principal(const FieldSpec& f, const QuadInt& x) { return generated(f, {x}); }
    mpz_class norm() const { return a * c; }
    bool contains(const QuadInt& x) const;
    std::vector<QuadInt> basis() const { return {QuadInt(a, 0), QuadInt(b, c)}; }
    bool operator==(const QuadIdeal& o) const { return a == o.a && b == o.b && c == o.c; }
    bool operator!=(const QuadIdeal& o) const { return !(*this == o); }
};

QuadIdeal mul(const FieldSpec& f, const QuadIdeal& x, const QuadIdeal& y);
QuadIdeal pow(const FieldSpec& f, const QuadIdeal& x, unsigned e);

enum class Splitting { split, inert, ramified };
const char* to_string(Splitting s);

// A prime of F over q. For split and ramified primes `root` is r in [0, q) with
// omega - r in the prime; inert primes have root = -1.
struct PrimeIdeal {
    mpz_class q;
    Splitting kind = Splitting::inert;
    mpz_class root = -1;

    QuadIdeal ideal() const;
    mpz_class norm() const { return kind == Splitting::inert ? q * q : q; }
    bool operator<(const PrimeIdeal& o) const {
        return q != o.q ? q < o.q : root < o.root;
    }
    bool operator==(const PrimeIdeal& o) const { return q == o.q && root == o.root; }
    std::string to_string() const;
};

struct SplittingResult {
    Splitting kind;
    std::vector<PrimeIdeal> primes;
};

SplittingResult prime_splitting(const FieldSpec& f, const mpz_class& q);

// The ramified prime above |p_i| (0-based index i).
PrimeIdeal ramified_prime(const FieldSpec& f, std::size_t i);

// Exponents of a fractional ideal; zero exponents are never stored.
using IdealFactorization = std::map<PrimeIdeal, long>;

// Root of t^2 - t - k modulo q^K lifting the root of a split prime.
mpz_class omega_root(const FieldSpec& f, const PrimeIdeal& p, unsigned K);

long valuation(const FieldSpec& f, const PrimeIdeal& p, const QuadInt& x);
long valuation(const FieldSpec& f, const PrimeIdeal& p, const QuadIdeal& I);
IdealFactorization factor_ideal(const FieldSpec& f, const QuadIdeal& I);
// I / den for a positive integer denominator.
IdealFactorization factor_ideal(const FieldSpec& f, const QuadIdeal& I, const mpz_class& den);
IdealFactorization factor_integer(const FieldSpec& f, const mpz_class& n);
void accumulate(IdealFactorization& acc, const IdealFactorization& x, long mult = 1);
// Product of the prime powers; requires non-negative exponents.
QuadIdeal ideal_from_factorization(const FieldSpec& f, const IdealFactorization& fac);

// Artin symbol of F(sqrt m)/F at a prime of F (m = p_I, a product of a subset of the
// primes): 1 iff the prime is inert in F(sqrt m). Values are in Z/2 (the bit for 1/2).
int artin_symbol(const FieldSpec& f, const mpz_class& m, const PrimeIdeal& p);
int artin_symbol(const FieldSpec& f, const mpz_class& m, const IdealFactorization& fac);
int artin_symbol(const FieldSpec& f, const mpz_class& m, const QuadIdeal& I);

}  // namespace dw
