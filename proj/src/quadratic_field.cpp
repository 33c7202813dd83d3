#include "dw/quadratic_field.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace dw {

FieldSpec FieldSpec::make(std::vector<long> primes) {
    if (primes.empty()) throw InvalidSpec("at least one prime is required");
    for (long p : primes)
        if (mod_floor(p, 4) != 1) throw InvalidSpec("primes must be ≡ 1 (mod 4)");
    std::set<long> seen;
    mpz_class d = 1;
    for (long p : primes) {
        if (!is_prime(mpz_class(std::labs(p))))
            throw InvalidSpec("not a signed prime: " + std::to_string(p));
        if (!seen.insert(std::labs(p)).second) throw InvalidSpec("primes must be distinct");
        d *= p;
    }
    if (d >= 0) throw InvalidSpec("the product of the primes must be negative");
    if (d == -3) throw InvalidSpec("d = -3 is excluded (extra units)");
    return FieldSpec{std::move(primes), d};
}

mpz_class FieldSpec::product(std::uint64_t mask) const {
    mpz_class m = 1;
    for (std::size_t i = 0; i < primes.size(); ++i)
        if ((mask >> i) & 1u) m *= primes[i];
    return m;
}

std::string FieldSpec::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < primes.size(); ++i) s += (i ? "," : "") + std::to_string(primes[i]);
    return s;
}

QuadInt QuadInt::from_half(const mpz_class& x, const mpz_class& y) {
    // (x + y sqrt d)/2 = (x - y)/2 + y omega
    mpz_class t = x - y;
    if (!mpz_even_p(t.get_mpz_t())) throw std::invalid_argument("from_half: parity mismatch");
    return QuadInt(t / 2, y);
}

QuadInt add(const QuadInt& a, const QuadInt& b) {
    return QuadInt(a.u + b.u, a.v + b.v);
}

QuadInt sub(const QuadInt& a, const QuadInt& b) {
    return QuadInt(a.u - b.u, a.v - b.v);
}

QuadInt mul(const FieldSpec& f, const QuadInt& a, const QuadInt& b) {
    mpz_class bv = a.v * b.v;
    return QuadInt(a.u * b.u + bv * f.k(), a.u * b.v + a.v * b.u + bv);
}

QuadInt conj(const QuadInt& a) {
    return QuadInt(a.u + a.v, -a.v);
}

mpz_class norm(const FieldSpec& f, const QuadInt& a) {
    return a.u * a.u + a.u * a.v - f.k() * a.v * a.v;
}

mpz_class trace(const QuadInt& a) {
    return 2 * a.u + a.v;
}

namespace {

// Hermite form of the Z-lattice spanned by vectors (u, v).
QuadIdeal lattice_hnf(const std::vector<QuadInt>& vecs) {
    mpz_class pu = 0, pv = 0, A = 0;
    for (const auto& x : vecs) {
        mpz_class u = x.u, v = x.v;
        while (v != 0) {
            if (pv != 0) {
                mpz_class q = pv / v;
                pu -= q * u;
                pv -= q * v;
            }
            std::swap(pu, u);
            std::swap(pv, v);
        }
        mpz_gcd(A.get_mpz_t(), A.get_mpz_t(), u.get_mpz_t());
    }
    if (A == 0 || pv == 0) throw std::invalid_argument("ideal: lattice is not of full rank");
    if (pv < 0) {
        pu = -pu;
        pv = -pv;
    }
    mpz_class b;
    mpz_fdiv_r(b.get_mpz_t(), pu.get_mpz_t(), A.get_mpz_t());
    return QuadIdeal{A, b, pv};
}

}  // namespace

QuadIdeal QuadIdeal::generated(const FieldSpec& f, const std::vector<QuadInt>& gens) {
    std::vector<QuadInt> vecs;
    const QuadInt omega(0, 1);
    for (const auto& g : gens) {
        vecs.push_back(g);
        vecs.push_back(mul(f, g, omega));
    }
    QuadIdeal I = lattice_hnf(vecs);
    if (I.a % I.c != 0 || I.b % I.c != 0) throw std::logic_error("ideal: HNF is not an ideal");
    return I;
}

bool QuadIdeal::contains(const QuadInt& x) const {
    if (x.v % c != 0) return false;
    mpz_class t = x.u - (x.v / c) * b;
    return t % a == 0;
}

QuadIdeal mul(const FieldSpec& f, const QuadIdeal& x, const QuadIdeal& y) {
    std::vector<QuadInt> vecs;
    for (const auto& s : x.basis())
        for (const auto& t : y.basis()) vecs.push_back(mul(f, s, t));
    return lattice_hnf(vecs);
}

QuadIdeal pow(const FieldSpec& f, const QuadIdeal& x, unsigned e) {
    QuadIdeal r = QuadIdeal::unit();
    for (unsigned i = 0; i < e; ++i) r = mul(f, r, x);
    return r;
}

const char* to_string(Splitting s) {
    switch (s) {
        case Splitting::split: return "split";
        case Splitting::inert: return "inert";
        case Splitting::ramified: return "ramified";
    }
    return "?";
}

QuadIdeal PrimeIdeal::ideal() const {
    if (kind == Splitting::inert) return QuadIdeal{q, 0, q};
    mpz_class b;
    mpz_class mr = -root;
    mpz_fdiv_r(b.get_mpz_t(), mr.get_mpz_t(), q.get_mpz_t());
    return QuadIdeal{q, b, 1};
}

std::string PrimeIdeal::to_string() const {
    if (kind == Splitting::inert) return "(" + q.get_str() + ")";
    return "(" + q.get_str() + ", w-" + root.get_str() + ")";
}

SplittingResult prime_splitting(const FieldSpec& f, const mpz_class& q) {
    if (q < 2 || !is_prime(q)) throw std::invalid_argument("prime_splitting: q must be prime");
    if (q == 2) {
        mpz_class r8;
        mpz_fdiv_r_ui(r8.get_mpz_t(), f.d.get_mpz_t(), 8);
        if (r8 == 1)
            return {Splitting::split,
                    {PrimeIdeal{q, Splitting::split, 0}, PrimeIdeal{q, Splitting::split, 1}}};
        return {Splitting::inert, {PrimeIdeal{q, Splitting::inert, -1}}};
    }
    if (f.d % q == 0) return {Splitting::ramified, {PrimeIdeal{q, Splitting::ramified, (q + 1) / 2}}};
    if (kronecker(f.d, q) == -1) return {Splitting::inert, {PrimeIdeal{q, Splitting::inert, -1}}};
    mpz_class delta = *sqrt_mod_prime(f.d, q);
    mpz_class half = (q + 1) / 2;
    mpz_class r1 = (1 + delta) * half % q, r2 = (1 - delta) * half % q;
    if (r1 < 0) r1 += q;
    if (r2 < 0) r2 += q;
    if (r2 < r1) std::swap(r1, r2);
    return {Splitting::split, {PrimeIdeal{q, Splitting::split, r1}, PrimeIdeal{q, Splitting::split, r2}}};
}

PrimeIdeal ramified_prime(const FieldSpec& f, std::size_t i) {
    return prime_splitting(f, mpz_class(std::labs(f.primes.at(i)))).primes[0];
}

namespace {

// Root of t^2 - t - k modulo q^K lifted from r.
mpz_class hensel_omega(const mpz_class& k, const mpz_class& r, const mpz_class& q, unsigned K) {
    mpz_class mod;
    mpz_pow_ui(mod.get_mpz_t(), q.get_mpz_t(), K);
    mpz_class t = r, cur = q;
    while (cur < mod) {
        cur *= cur;
        if (cur > mod) cur = mod;
        mpz_class fx = t * t - t - k, dfx = 2 * t - 1, inv;
        if (!mpz_invert(inv.get_mpz_t(), dfx.get_mpz_t(), cur.get_mpz_t()))
            throw std::logic_error("hensel: derivative not a unit");
        t = (t - fx * inv) % cur;
        if (t < 0) t += cur;
    }
    return t;
}

long vmin(long a, long b) {
    return a < b ? a : b;
}

}  // namespace

mpz_class omega_root(const FieldSpec& f, const PrimeIdeal& p, unsigned K) {
    if (p.kind != Splitting::split) throw std::invalid_argument("omega_root: prime is not split");
    return hensel_omega(f.k(), p.root, p.q, K);
}

long valuation(const FieldSpec& f, const PrimeIdeal& p, const QuadInt& x) {
    if (x.u == 0 && x.v == 0) return kInfValuation;
    switch (p.kind) {
        case Splitting::inert: return vmin(valuation(x.u, p.q), valuation(x.v, p.q));
        case Splitting::ramified: return valuation(norm(f, x), p.q);
        case Splitting::split: {
            long nv = valuation(norm(f, x), p.q);
            unsigned K = static_cast<unsigned>(nv + 1);
            mpz_class rho = hensel_omega(f.k(), p.root, p.q, K);
            mpz_class mod;
            mpz_pow_ui(mod.get_mpz_t(), p.q.get_mpz_t(), K);
            mpz_class val = (x.u + x.v * rho) % mod;
            long v = valuation(val, p.q);
            return v >= static_cast<long>(K) ? static_cast<long>(K) : v;
        }
    }
    return 0;
}

long valuation(const FieldSpec& f, const PrimeIdeal& p, const QuadIdeal& I) {
    return vmin(valuation(f, p, QuadInt(I.a, 0)), valuation(f, p, QuadInt(I.b, I.c)));
}

void accumulate(IdealFactorization& acc, const IdealFactorization& x, long mult) {
    for (const auto& [p, e] : x) {
        long& slot = acc[p];
        slot += mult * e;
        if (slot == 0) acc.erase(p);
    }
}

IdealFactorization factor_ideal(const FieldSpec& f, const QuadIdeal& I) {
    IdealFactorization out;
    mpz_class n = I.norm();
    if (n == 1) return out;
    for (const auto& q : prime_divisors(n))
        for (const auto& p : prime_splitting(f, q).primes) {
            long e = valuation(f, p, I);
            if (e) out[p] = e;
        }
    return out;
}

IdealFactorization factor_integer(const FieldSpec& f, const mpz_class& n) {
    IdealFactorization out;
    if (n == 0) throw std::invalid_argument("factor_integer: zero");
    for (const auto& pp : factor(n)) {
        auto sp = prime_splitting(f, pp.p);
        long e = static_cast<long>(pp.e);
        for (const auto& p : sp.primes) out[p] = sp.kind == Splitting::ramified ? 2 * e : e;
    }
    return out;
}

IdealFactorization factor_ideal(const FieldSpec& f, const QuadIdeal& I, const mpz_class& den) {
    IdealFactorization out = factor_ideal(f, I);
    accumulate(out, factor_integer(f, den), -1);
    return out;
}

QuadIdeal ideal_from_factorization(const FieldSpec& f, const IdealFactorization& fac) {
    QuadIdeal r = QuadIdeal::unit();
    for (const auto& [p, e] : fac) {
        if (e < 0) throw std::invalid_argument("ideal_from_factorization: negative exponent");
        r = mul(f, r, pow(f, p.ideal(), static_cast<unsigned>(e)));
    }
    return r;
}

int artin_symbol(const FieldSpec& f, const mpz_class& m, const PrimeIdeal& p) {
    if (f.d % m != 0) throw std::invalid_argument("artin_symbol: m must divide d");
    if (p.kind == Splitting::inert) return 0;
    if (p.q == 2) {
        mpz_class r8;
        mpz_fdiv_r_ui(r8.get_mpz_t(), m.get_mpz_t(), 8);
        return r8 == 5 ? 1 : 0;
    }
    mpz_class me = m;
    if (m % p.q == 0) me = f.d / m;
    return kronecker(me, p.q) == -1 ? 1 : 0;
}

int artin_symbol(const FieldSpec& f, const mpz_class& m, const IdealFactorization& fac) {
    long s = 0;
    for (const auto& [p, e] : fac)
        if (artin_symbol(f, m, p)) s += e;
    return static_cast<int>(mod_floor(s, 2));
}

int artin_symbol(const FieldSpec& f, const mpz_class& m, const QuadIdeal& I) {
    return artin_symbol(f, m, factor_ideal(f, I));
}

}  // namespace dw
