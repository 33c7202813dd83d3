#include "dw/relative_quartic.hpp"

#include <algorithm>
#include <sstream>

namespace dw {

namespace {

mpz_class gcd_all(std::initializer_list<const mpz_class*> xs) {
    mpz_class g = 0;
    for (const auto* x : xs) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x->get_mpz_t());
    return g;
}

mpz_class lcm(const mpz_class& a, const mpz_class& b) {
    mpz_class r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

mpz_class pmod(const mpz_class& a, const mpz_class& n) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t());
    return r;
}

}  // namespace

FElem normalized(FElem x) {
    if (x.den == 0) throw std::invalid_argument("FElem: zero denominator");
    if (x.den < 0) {
        x.den = -x.den;
        x.num.u = -x.num.u;
        x.num.v = -x.num.v;
    }
    mpz_class g = gcd_all({&x.num.u, &x.num.v, &x.den});
    if (g > 1) {
        x.num.u /= g;
        x.num.v /= g;
        x.den /= g;
    }
    return x;
}

RelField make_rel_field(const FieldSpec& f, std::uint64_t mask) {
    const std::uint64_t full = (std::uint64_t(1) << f.r()) - 1;
    if (mask == 0 || (mask & ~full) || mask == full)
        throw std::invalid_argument("relative field: J must be a nonempty proper subset");
    RelField M{f, mask, f.product(mask), 0};
    M.m2 = f.d / M.m;
    return M;
}

RelElement normalized(RelElement x) {
    if (x.den == 0) throw std::invalid_argument("RelElement: zero denominator");
    if (x.den < 0) {
        x.den = -x.den;
        x.u = QuadInt(-x.u.u, -x.u.v);
        x.v = QuadInt(-x.v.u, -x.v.v);
    }
    mpz_class g = gcd_all({&x.u.u, &x.u.v, &x.v.u, &x.v.v, &x.den});
    if (g > 1) {
        x.u = QuadInt(x.u.u / g, x.u.v / g);
        x.v = QuadInt(x.v.u / g, x.v.v / g);
        x.den /= g;
    }
    return x;
}

RelElement rel_mul(const RelField& M, const RelElement& x, const RelElement& y) {
    const FieldSpec& f = M.f;
    QuadInt u = add(mul(f, x.u, y.u), mul(f, QuadInt::integer(M.m), mul(f, x.v, y.v)));
    QuadInt v = add(mul(f, x.u, y.v), mul(f, x.v, y.u));
    return normalized(RelElement{u, v, x.den * y.den});
}

RelElement rel_sigma(const RelElement& x) {
    return RelElement{x.u, QuadInt(-x.v.u, -x.v.v), x.den};
}

FElem rel_norm(const RelField& M, const RelElement& x) {
    const FieldSpec& f = M.f;
    QuadInt n = sub(mul(f, x.u, x.u), mul(f, QuadInt::integer(M.m), mul(f, x.v, x.v)));
    return normalized(FElem{n, x.den * x.den});
}

std::string to_string(const RelElement& x) {
    std::ostringstream os;
    os << "((" << x.u.u << ")+(" << x.u.v << ")w + ((" << x.v.u << ")+(" << x.v.v << ")w)*s)/"
       << x.den;
    return os.str();
}

std::string RelPrime::to_string() const {
    return p.to_string() + (split ? (conj ? "'" : "") : "*");
}

// ---- local embeddings ----

namespace {

// Z_q[omega] / q^K, with sqrt m when it exists there.
struct Local {
    const FieldSpec* f;
    PrimeIdeal p;
    unsigned K;
    mpz_class mod, k, rho;
    bool has_mu = false;
    mpz_class mux, muy;  // sqrt m = mux + muy omega

    std::pair<mpz_class, mpz_class> mul(const mpz_class& x1, const mpz_class& y1, const mpz_class& x2,
                                        const mpz_class& y2) const {
        return {pmod(x1 * x2 + k * y1 * y2, mod), pmod(x1 * y2 + x2 * y1 + y1 * y2, mod)};
    }
};

bool is_local_unit_square(const mpz_class& a, const mpz_class& q) {
    if (q == 2) return pmod(a, 8) == 1;
    if (pmod(a, q) == 0) return false;
    return kronecker(a, q) == 1;
}

Local make_local(const RelField& M, const PrimeIdeal& p, unsigned K) {
    Local L;
    L.f = &M.f;
    L.p = p;
    L.K = K;
    mpz_pow_ui(L.mod.get_mpz_t(), p.q.get_mpz_t(), K);
    L.k = pmod(M.f.k(), L.mod);
    if (p.kind == Splitting::split) L.rho = omega_root(M.f, p, K);
    if (is_local_unit_square(M.m, p.q)) {
        L.has_mu = true;
        L.mux = padic_sqrt(M.m, p.q, K);
        L.muy = 0;
    } else if (is_local_unit_square(M.m2, p.q)) {
        // sqrt m = sqrt d * sqrt(m2) / m2, sqrt d = 2 omega - 1
        L.has_mu = true;
        mpz_class s = padic_sqrt(M.m2, p.q, K), inv, m2 = pmod(M.m2, L.mod);
        if (!mpz_invert(inv.get_mpz_t(), m2.get_mpz_t(), L.mod.get_mpz_t()))
            throw std::logic_error("local: m2 not a unit");
        s = pmod(s * inv, L.mod);
        L.mux = pmod(-s, L.mod);
        L.muy = pmod(2 * s, L.mod);
    }
    if (p.kind == Splitting::split && L.has_mu && L.muy != 0) {
        // Collapse to Z_q through omega -> rho.
        L.mux = pmod(L.mux + L.muy * L.rho, L.mod);
        L.muy = 0;
    }
    return L;
}

long vq(const mpz_class& x, const mpz_class& q) {
    return valuation(x, q);
}

// Valuation of x + y omega, or -1 if zero to the working precision.
long local_valuation(const Local& L, const mpz_class& x, const mpz_class& y) {
    const mpz_class& q = L.p.q;
    switch (L.p.kind) {
        case Splitting::split: {
            mpz_class z = pmod(x + y * L.rho, L.mod);
            return z == 0 ? -1 : vq(z, q);
        }
        case Splitting::inert: {
            mpz_class a = pmod(x, L.mod), b = pmod(y, L.mod);
            if (a == 0 && b == 0) return -1;
            return std::min(a == 0 ? kInfValuation : vq(a, q), b == 0 ? kInfValuation : vq(b, q));
        }
        case Splitting::ramified: {
            mpz_class a = pmod(2 * x + y, L.mod), b = pmod(y, L.mod);
            if (a == 0 && b == 0) return -1;
            long va = a == 0 ? kInfValuation : 2 * vq(a, q);
            long vb = b == 0 ? kInfValuation : 2 * vq(b, q) + 1;
            return std::min(va, vb);
        }
    }
    return -1;
}

long fvaluation(const FieldSpec& f, const PrimeIdeal& p, const FElem& x) {
    long e = p.kind == Splitting::ramified ? 2 : 1;
    return valuation(f, p, x.num) - e * valuation(x.den, p.q);
}

}  // namespace

Splitting rel_splitting(const RelField& M, const PrimeIdeal& p) {
    return make_local(M, p, 1).has_mu ? Splitting::split : Splitting::inert;
}

std::vector<RelPrime> rel_primes_above(const RelField& M, const PrimeIdeal& p) {
    if (rel_splitting(M, p) == Splitting::split) return {RelPrime{p, true, 0}, RelPrime{p, true, 1}};
    return {RelPrime{p, false, 0}};
}

long rel_valuation(const RelField& M, const RelPrime& P, const RelElement& x) {
    if (x.u.u == 0 && x.u.v == 0 && x.v.u == 0 && x.v.v == 0) return kInfValuation;
    if (!P.split) {
        long v = fvaluation(M.f, P.p, rel_norm(M, x));
        if (v % 2) throw std::logic_error("rel_valuation: odd norm valuation at an inert prime");
        return v / 2;
    }
    const long e = P.p.kind == Splitting::ramified ? 2 : 1;
    for (unsigned K = 48; K <= (1u << 14); K *= 2) {
        Local L = make_local(M, P.p, K);
        if (!L.has_mu) throw std::logic_error("rel_valuation: prime does not split");
        mpz_class mx = P.conj ? pmod(-L.mux, L.mod) : L.mux;
        mpz_class my = P.conj ? pmod(-L.muy, L.mod) : L.muy;
        auto [px, py] = L.mul(x.v.u, x.v.v, mx, my);
        long v = local_valuation(L, x.u.u + px, x.u.v + py);
        if (v >= 0) return v - e * valuation(x.den, P.p.q);
    }
    throw std::runtime_error("rel_valuation: precision limit reached");
}

RelIdealFactorization rel_factor(const RelField& M, const RelElement& x) {
    const FieldSpec& f = M.f;
    QuadInt n = sub(mul(f, x.u, x.u), mul(f, QuadInt::integer(M.m), mul(f, x.v, x.v)));
    mpz_class nn = norm(f, n);
    if (nn == 0) throw std::invalid_argument("rel_factor: zero element");
    std::vector<mpz_class> qs = prime_divisors(nn);
    if (x.den != 1)
        for (const auto& q : prime_divisors(x.den)) qs.push_back(q);
    std::sort(qs.begin(), qs.end());
    qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
    RelIdealFactorization out;
    for (const auto& q : qs)
        for (const auto& p : prime_splitting(f, q).primes)
            for (const auto& P : rel_primes_above(M, p)) {
                long v = rel_valuation(M, P, x);
                if (v) out[P] = v;
            }
    return out;
}

RelIdealFactorization lift_ideal(const RelField& M, const IdealFactorization& a) {
    RelIdealFactorization out;
    for (const auto& [p, e] : a)
        for (const auto& P : rel_primes_above(M, p)) out[P] += e;
    return out;
}

IdealFactorization rel_ideal_norm(const RelField& M, const RelIdealFactorization& a) {
    (void)M;
    IdealFactorization out;
    for (const auto& [P, e] : a) accumulate(out, IdealFactorization{{P.p, P.split ? e : 2 * e}});
    return out;
}

RelIdealFactorization rel_sigma(const RelIdealFactorization& a) {
    RelIdealFactorization out;
    for (const auto& [P, e] : a) {
        RelPrime Q = P;
        if (Q.split) Q.conj ^= 1;
        out[Q] = e;
    }
    return out;
}

void accumulate(RelIdealFactorization& acc, const RelIdealFactorization& x, long mult) {
    for (const auto& [P, e] : x) {
        long& slot = acc[P];
        slot += mult * e;
        if (slot == 0) acc.erase(P);
    }
}

std::optional<RelIdealFactorization> hilbert90_ideal_solve(const RelField& M,
                                                           const RelIdealFactorization& c) {
    if (!rel_ideal_norm(M, c).empty())
        throw std::invalid_argument("hilbert90: relative norm is not trivial");
    RelIdealFactorization b;
    for (const auto& [P, e] : c) {
        if (!P.split) return std::nullopt;
        if (P.conj == 0) b[P] = e;
    }
    // Primes where only the conjugate carries an exponent.
    for (const auto& [P, e] : c)
        if (P.split && P.conj == 1) {
            RelPrime Q = P;
            Q.conj = 0;
            if (!c.count(Q)) b[Q] = -e;
        }
    RelIdealFactorization check = b;
    accumulate(check, rel_sigma(b), -1);
    if (check != c) throw std::logic_error("hilbert90: reconstruction failed");
    return b;
}

// ---- units ----

UnitNormResult unit_norm_group(const RelField& M, std::size_t max_steps) {
    UnitNormResult r;
    r.real_radicand = M.m > 0 ? M.m : M.m2;
    const mpz_class& D = r.real_radicand;
    r.local_criterion = true;
    for (const auto& pp : factor(D))
        if (pp.p != 2 && pmod(pp.p, 4) != 1) r.local_criterion = false;
    // Continued fraction of sqrt D; the period parity decides the norm of the
    // fundamental unit of Z[sqrt D], and the last convergent is the witness.
    mpz_class a0;
    mpz_sqrt(a0.get_mpz_t(), D.get_mpz_t());
    if (a0 * a0 == D) throw std::logic_error("unit_norm_group: radicand is a square");
    mpz_class mm = 0, dd = 1, a = a0;
    mpz_class p_prev = 1, p = a0, q_prev = 0, q = 1;
    for (std::size_t step = 1; step <= max_steps; ++step) {
        mm = dd * a - mm;
        dd = (D - mm * mm) / dd;
        a = (a0 + mm) / dd;
        if (a == 2 * a0) {
            r.period_found = true;
            if (step % 2 == 1) {
                r.minus_one = true;
                r.wx = p;
                r.wy = q;
                if (p * p - D * q * q != -1) throw std::logic_error("unit_norm_group: bad witness");
            }
            break;
        }
        mpz_class pn = a * p + p_prev, qn = a * q + q_prev;
        p_prev = p;
        p = pn;
        q_prev = q;
        q = qn;
    }
    if (r.minus_one && !r.local_criterion)
        throw std::logic_error("unit_norm_group: unit witness contradicts the local criterion");
    return r;
}

// ---- norm equations ----

namespace {

std::optional<QuadInt> sqrt_in_OF(const FieldSpec& f, const QuadInt& a) {
    if (a.u == 0 && a.v == 0) return QuadInt(0, 0);
    mpz_class n2 = norm(f, a);
    if (n2 < 0 || !mpz_perfect_square_p(n2.get_mpz_t())) return std::nullopt;
    mpz_class n;
    mpz_sqrt(n.get_mpz_t(), n2.get_mpz_t());
    mpz_class t2 = trace(a) + 2 * n;
    if (t2 < 0 || !mpz_perfect_square_p(t2.get_mpz_t())) return std::nullopt;
    mpz_class s;
    mpz_sqrt(s.get_mpz_t(), t2.get_mpz_t());
    QuadInt b;
    if (s == 0) {
        // Trace zero: b = c sqrt d, a = c^2 d.
        if (a.v != 0 || a.u % f.d != 0) return std::nullopt;
        mpz_class c2 = a.u / f.d;
        if (c2 < 0 || !mpz_perfect_square_p(c2.get_mpz_t())) return std::nullopt;
        mpz_class c;
        mpz_sqrt(c.get_mpz_t(), c2.get_mpz_t());
        b = QuadInt(-c, 2 * c);
    } else {
        mpz_class x = a.u + n;
        if (x % s != 0 || a.v % s != 0) return std::nullopt;
        b = QuadInt(x / s, a.v / s);
    }
    if (!(mul(f, b, b) == a)) return std::nullopt;
    return b;
}

// b = (uA + uB sqrt d) + (vA + vB sqrt d) sqrt m with rational coordinates.
RelElement from_sqrt_d_coords(const mpq_class& uA, const mpq_class& uB, const mpq_class& vA,
                              const mpq_class& vB) {
    mpq_class c[4] = {uA - uB, 2 * uB, vA - vB, 2 * vB};
    mpz_class den = 1;
    for (auto& x : c) den = lcm(den, x.get_den());
    mpz_class z[4];
    for (int i = 0; i < 4; ++i) {
        mpq_class t = c[i] * den;
        z[i] = t.get_num();
    }
    return normalized(RelElement{QuadInt(z[0], z[1]), QuadInt(z[2], z[3]), den});
}

bool felem_equal(const FElem& a, const FElem& b) {
    FElem x = normalized(a), y = normalized(b);
    return x.num == y.num && x.den == y.den;
}

FElem negated(const FElem& a) {
    return FElem{QuadInt(-a.num.u, -a.num.v), a.den};
}

void descent_search(const RelField& M, const FElem& target, const std::vector<int>& signs,
                    const NormSearchOptions& opt, std::vector<NormWitness>& out) {
    const FieldSpec& f = M.f;
    const mpq_class tq = target.rational_value();
    const mpz_class T0 = tq.get_num() * tq.get_den();  // N(b') = T0, b = b' / den
    std::vector<mpz_class> base{-1};
    for (long p : f.primes) base.push_back(std::labs(p));
    if (abs(T0) > 1)
        for (const auto& q : prime_divisors(T0))
            if (std::find(base.begin(), base.end(), q) == base.end()) base.push_back(q);
    if (std::find(base.begin(), base.end(), mpz_class(2)) == base.end()) base.push_back(2);
    std::vector<mpz_class> good;
    for (u64 q : primes_up_to(opt.aux_prime_limit)) {
        if (good.size() >= opt.aux_primes) break;
        mpz_class Q = static_cast<unsigned long>(q);
        if (q == 2 || std::find(base.begin(), base.end(), Q) != base.end()) continue;
        if (kronecker(M.m, Q) == 1 && kronecker(M.m2, Q) == 1) good.push_back(Q);
    }
    std::vector<std::pair<mpz_class, std::string>> aux{{1, "1"}};
    for (const auto& g : good) aux.push_back({g, g.get_str()});
    for (std::size_t i = 0; i < good.size(); ++i)
        for (std::size_t j = i + 1; j < good.size(); ++j)
            aux.push_back({good[i] * good[j], good[i].get_str() + "*" + good[j].get_str()});
    const std::uint64_t masks = std::uint64_t(1) << base.size();
    for (const auto& [a, aname] : aux)
        for (std::uint64_t mask = 0; mask < masks; ++mask)
            for (int sign : signs) {
                const mpz_class T = sign * T0;
                mpz_class s = a;
                for (std::size_t i = 0; i < base.size(); ++i)
                    if ((mask >> i) & 1u) s *= base[i];
                const mpz_class s1 = squarefree_split(s).core;
                auto r1 = legendre_solve(M.m, s1);
                if (!r1) continue;
                auto ts = squarefree_split(T * s1);
                auto r2 = legendre_solve(M.m2, ts.core);
                if (!r2) continue;
                // b1 = (x1 + y1 sqrt m)/z1 of norm s1; b2 = k2 (x2 + y2 sqrt m2)/z2 of norm T s1;
                // b = b2 conj(b1) / s1, with sqrt m2 = sqrt d sqrt m / m.
                mpq_class c(ts.root, r2->z * r1->z * s1);
                c.canonicalize();
                c /= tq.get_den();
                mpq_class uA = c * r2->x * r1->x, uB = -c * r2->y * r1->y;
                mpq_class ym(r2->y * r1->x, M.m);
                ym.canonicalize();
                mpq_class vA = -c * r2->x * r1->y, vB = c * ym;
                RelElement b = from_sqrt_d_coords(uA, uB, vA, vB);
                FElem want = sign > 0 ? target : negated(target);
                if (!felem_equal(rel_norm(M, b), want))
                    throw std::logic_error("norm search: descent produced a wrong norm");
                out.push_back(NormWitness{b, sign, "aux=" + aname + " mask=" + std::to_string(mask)});
                if (out.size() >= opt.max_witnesses) return;
            }
}

void box_search(const RelField& M, const FElem& target, const std::vector<int>& signs,
                const NormSearchOptions& opt, std::vector<NormWitness>& out) {
    const FieldSpec& f = M.f;
    std::size_t candidates = 0;
    long prev = 0;
    for (long H = opt.box_start; H <= static_cast<long>(opt.box_cap); H *= 2) {
        for (long w = 1; w <= H; ++w)
            for (long v0 = -H; v0 <= H; ++v0)
                for (long v1 = -H; v1 <= H; ++v1) {
                    if (std::max({w, std::labs(v0), std::labs(v1)}) <= prev) continue;
                    if (++candidates > opt.max_candidates)
                        throw SearchExhausted("height box H=" + std::to_string(H) +
                                              " candidates=" + std::to_string(opt.max_candidates));
                    for (int sign : signs) {
                        // u^2 = sign tn td w^2 + m v^2, b = (u + v sqrt m) / (w td)
                        QuadInt v(v0, v1);
                        QuadInt lhs = mul(f, QuadInt::integer(sign * target.den * w * w), target.num);
                        QuadInt a = add(lhs, mul(f, QuadInt::integer(M.m), mul(f, v, v)));
                        auto u = sqrt_in_OF(f, a);
                        if (!u) continue;
                        RelElement b = normalized(RelElement{*u, v, target.den * w});
                        FElem want = sign > 0 ? target : negated(target);
                        if (!felem_equal(rel_norm(M, b), want))
                            throw std::logic_error("norm search: box produced a wrong norm");
                        out.push_back(NormWitness{b, sign,
                                                  "box w=" + std::to_string(w) + " v=" + std::to_string(v0) +
                                                      "," + std::to_string(v1)});
                        if (out.size() >= opt.max_witnesses) return;
                    }
                }
        prev = H;
    }
}

}  // namespace

std::vector<NormWitness> norm_equation_search(const RelField& M, const FElem& target_in,
                                              const NormSearchOptions& opt) {
    FElem target = normalized(target_in);
    if (target.num.u == 0 && target.num.v == 0) throw std::invalid_argument("norm search: zero target");
    std::vector<int> signs{1};
    if (opt.allow_unit_sign && unit_norm_group(M).minus_one) signs.push_back(-1);
    std::vector<NormWitness> out;
    if (target.num.u == target.den && target.num.v == 0) out.push_back(NormWitness{RelElement{QuadInt(1, 0), QuadInt(0, 0), 1}, 1, "one"});
    if (out.size() >= opt.max_witnesses) return out;
    if (opt.route == NormSearchRoute::descent) {
        if (!target.is_rational()) throw std::invalid_argument("norm search: descent needs a rational target");
        descent_search(M, target, signs, opt, out);
        if (out.empty())
            throw SearchExhausted("descent aux=" + std::to_string(opt.aux_primes) + " limit=" +
                                  std::to_string(opt.aux_prime_limit));
    } else {
        box_search(M, target, signs, opt, out);
        if (out.empty()) throw SearchExhausted("height box cap=" + std::to_string(opt.box_cap));
    }
    return out;
}

CupEval cup_eval(const FieldSpec& f, std::uint64_t J, std::uint64_t K, const DualPair& dual,
                 const NormSearchOptions& opt) {
    const std::uint64_t full = (std::uint64_t(1) << f.r()) - 1;
    CupEval res;
    if (J == 0 || J == full || K == 0 || K == full) return res;
    const mpz_class n = f.product(K);
    if (J == K || J == (full ^ K)) {
        res.diagonal = true;
        res.value = artin_symbol(f, n, dual.ideal);
        res.per_witness.push_back(res.value);
        return res;
    }
    RelField M = make_rel_field(f, J);
    mpq_class inv = 1 / dual.a;
    auto wit = norm_equation_search(M, FElem::rational(inv), opt);
    const RelIdealFactorization lifted = lift_ideal(M, dual.ideal);
    for (const auto& w : wit) {
        RelIdealFactorization c = lifted;
        accumulate(c, rel_factor(M, w.b), -1);
        auto b = hilbert90_ideal_solve(M, c);
        if (!b) {
            ++res.rejected;
            continue;
        }
        IdealFactorization nb = rel_ideal_norm(M, *b);
        accumulate(nb, dual.ideal);
        res.per_witness.push_back(artin_symbol(f, n, nb));
        res.witnesses.push_back(w.b);
    }
    if (res.per_witness.empty()) throw SearchExhausted("no witness passed the ideal step");
    res.value = res.per_witness.front();
    return res;
}

}  // namespace dw
