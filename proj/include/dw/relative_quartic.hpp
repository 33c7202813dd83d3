#pragma once
// The relative quadratic extension M = F(sqrt m), m = p_J, over F = Q(sqrt d):
// elements u + v sqrt m, primes of M as primes of F with a splitting tag, norm
// equations and the ideal Hilbert 90 step of the cup-product recipe.

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dw/quadratic_field.hpp"

namespace dw {

// Nontrivial solution of x^2 - a y^2 = b z^2 with z != 0, for squarefree nonzero a, b.
struct ConicSolution {
    mpz_class x, y, z;
};
std::optional<ConicSolution> legendre_solve(const mpz_class& a, const mpz_class& b);

// F-element num / den with den > 0.
struct FElem {
    QuadInt num;
    mpz_class den = 1;
    static FElem rational(const mpq_class& q) {
        return FElem{QuadInt::integer(q.get_num()), q.get_den()};
    }
    bool is_rational() const { return num.v == 0; }
    mpq_class rational_value() const { return mpq_class(num.u, den); }
};
FElem normalized(FElem x);

struct RelField {
    FieldSpec f;
    std::uint64_t mask = 0;  // J
    mpz_class m;             // p_J
    mpz_class m2;            // d / p_J
};
// J must be nonempty and proper, so that M is a quadratic extension of F.
RelField make_rel_field(const FieldSpec& f, std::uint64_t mask);

// (u + v sqrt m) / den
struct RelElement {
    QuadInt u, v;
    mpz_class den = 1;
    bool operator==(const RelElement& o) const { return u == o.u && v == o.v && den == o.den; }
};
RelElement normalized(RelElement x);
RelElement rel_mul(const RelField& M, const RelElement& x, const RelElement& y);
RelElement rel_sigma(const RelElement& x);
FElem rel_norm(const RelField& M, const RelElement& x);
std::string to_string(const RelElement& x);

// A prime of M: a prime of F and, for primes split in M, which of the two lies over it.
// conj = 0 is the prime where sqrt m maps to the canonical local root.
struct RelPrime {
    PrimeIdeal p;
    bool split = false;
    int conj = 0;
    bool operator<(const RelPrime& o) const {
        if (!(p == o.p)) return p < o.p;
        return conj < o.conj;
    }
    bool operator==(const RelPrime& o) const { return p == o.p && split == o.split && conj == o.conj; }
    std::string to_string() const;
};
using RelIdealFactorization = std::map<RelPrime, long>;

// M/F is unramified at every finite prime, so the answer is split or inert.
Splitting rel_splitting(const RelField& M, const PrimeIdeal& p);
std::vector<RelPrime> rel_primes_above(const RelField& M, const PrimeIdeal& p);
long rel_valuation(const RelField& M, const RelPrime& P, const RelElement& x);
RelIdealFactorization rel_factor(const RelField& M, const RelElement& x);
RelIdealFactorization lift_ideal(const RelField& M, const IdealFactorization& a);
IdealFactorization rel_ideal_norm(const RelField& M, const RelIdealFactorization& a);
RelIdealFactorization rel_sigma(const RelIdealFactorization& a);
void accumulate(RelIdealFactorization& acc, const RelIdealFactorization& x, long mult = 1);

// b with c = b - sigma(b) (additively), or nullopt when c has a nonzero exponent at a
// prime fixed by sigma. Throws if the relative norm of c is nontrivial.
std::optional<RelIdealFactorization> hilbert90_ideal_solve(const RelField& M,
                                                           const RelIdealFactorization& c);

// Is -1 the relative norm of a unit of M?
struct UnitNormResult {
    mpz_class real_radicand;   // the positive one of m, d/m
    bool local_criterion = false;  // every odd prime of real_radicand is 1 mod 4
    bool period_found = false;
    bool minus_one = false;        // certified by an explicit unit
    mpz_class wx, wy;              // wx^2 - real_radicand wy^2 = -1 when minus_one
};
UnitNormResult unit_norm_group(const RelField& M, std::size_t max_steps = 20000);

enum class NormSearchRoute { descent, height_box };

struct NormSearchOptions {
    NormSearchRoute route = NormSearchRoute::descent;
    unsigned aux_primes = 8;
    unsigned aux_prime_limit = 400;
    std::size_t max_witnesses = 1;
    // height box: coefficient bound grows x2 from box_start up to box_cap,
    // with at most max_candidates candidates in total
    unsigned box_start = 8;
    unsigned box_cap = 1u << 16;
    std::size_t max_candidates = 20000000;
    bool allow_unit_sign = false;
};

struct SearchExhausted : std::runtime_error {
    std::string bound;
    explicit SearchExhausted(const std::string& b)
        : std::runtime_error("norm equation search exhausted (" + b + ")"), bound(b) {}
};

struct NormWitness {
    RelElement b;
    int sign = 1;       // norm(b) = sign * target
    std::string tag;    // which search step produced it
};

// Witnesses with norm_{M/F}(b) = target (or -target when allowed), in a fixed order.
// Throws SearchExhausted when none is found.
std::vector<NormWitness> norm_equation_search(const RelField& M, const FElem& target,
                                              const NormSearchOptions& opt = {});

// A dual element (a, a) of H^2(X, Z/2), with a rational and 2 a + (a) = 0.
struct DualPair {
    IdealFactorization ideal;
    mpq_class a;
};

struct CupEval {
    int value = 0;
    std::vector<int> per_witness;  // values for each usable witness
    std::vector<RelElement> witnesses;
    std::size_t rejected = 0;      // witnesses failing the Hilbert 90 step
    bool diagonal = false;
    bool consistent() const {
        for (int v : per_witness)
            if (v != value) return false;
        return true;
    }
};

// (x u y)(a, a) for x, y the classes of F(sqrt p_J), F(sqrt p_K).
CupEval cup_eval(const FieldSpec& f, std::uint64_t J, std::uint64_t K, const DualPair& dual,
                 const NormSearchOptions& opt = {});

}  // namespace dw
