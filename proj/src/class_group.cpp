#include "dw/class_group.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace dw {

namespace {

i64 floor_div(i128 a, i128 b) {
    i128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return static_cast<i64>(q);
}

// b into (-a, a], c adjusted.
void normalize(i128& a, i128& b, i128& c) {
    // b' = b + 2 a k, k = floor((a - b) / 2a)
    i128 k = floor_div(a - b, 2 * a);
    i128 nb = b + 2 * a * k;
    c = c + k * (b + a * k);
    b = nb;
}

u64 form_key(i64 a, i64 b) {
    return (static_cast<u64>(a) << 32) ^ static_cast<u64>(static_cast<std::uint32_t>(b + (i64(1) << 31)));
}

}  // namespace

Form reduce(const Form& f) {
    if (f.a <= 0 || f.c <= 0) throw std::invalid_argument("reduce: form is not positive definite");
    i128 a = f.a, b = f.b, c = f.c;
    normalize(a, b, c);
    while (a > c) {
        std::swap(a, c);
        b = -b;
        normalize(a, b, c);
    }
    if (a == c && b < 0) b = -b;
    return Form{static_cast<i64>(a), static_cast<i64>(b), static_cast<i64>(c)};
}

bool is_reduced(const Form& f) {
    if (!(std::llabs(f.b) <= f.a && f.a <= f.c)) return false;
    if ((std::llabs(f.b) == f.a || f.a == f.c) && f.b < 0) return false;
    return true;
}

Form principal_form(i64 d) {
    return Form{1, 1, (1 - d) / 4};
}

Form compose(const Form& f1, const Form& f2, i64 d) {
    // Gauss composition in the Shanks/Cohen formulation, then reduction.
    Form x = f1, y = f2;
    if (x.a > y.a) std::swap(x, y);
    const i64 a1 = x.a, b1 = x.b, a2 = y.a, b2 = y.b, c2 = y.c;
    const i64 s = (b1 + b2) / 2, n = b2 - s;
    i64 y1, dd;
    if (a2 % a1 == 0) {
        y1 = 0;
        dd = a1;
    } else {
        i64 u, v;
        dd = xgcd(a2, a1, u, v);
        y1 = u;
    }
    i64 x2, y2, d1;
    if (s % dd == 0) {
        y2 = -1;
        x2 = 0;
        d1 = dd;
    } else {
        i64 u, v;
        d1 = xgcd(s, dd, u, v);
        x2 = u;
        y2 = -v;
    }
    const i64 v1 = a1 / d1, v2 = a2 / d1;
    i128 r = (static_cast<i128>(y1) * y2 % v1 * n - static_cast<i128>(x2) * c2) % v1;
    if (r < 0) r += v1;
    i128 b3 = b2 + 2 * static_cast<i128>(v2) * r;
    i128 a3 = static_cast<i128>(v1) * v2;
    i128 num = b3 * b3 - d;
    if (num % (4 * a3) != 0) throw std::logic_error("compose: non-integral result");
    i128 c3 = num / (4 * a3);
    // reduce() works on i64 entries; normalize first so they fit.
    normalize(a3, b3, c3);
    Form out{static_cast<i64>(a3), static_cast<i64>(b3), static_cast<i64>(c3)};
    return reduce(out);
}

Form power(const Form& f, i64 e, i64 d) {
    Form base = e < 0 ? inverse(f) : f;
    u64 k = static_cast<u64>(e < 0 ? -e : e);
    Form r = principal_form(d);
    while (k) {
        if (k & 1) r = compose(r, base, d);
        base = compose(base, base, d);
        k >>= 1;
    }
    return r;
}

namespace {

struct RootTable {
    i64 d;
    std::vector<i64> spf;   // smallest prime factor
    std::vector<i64> sqrt;  // sqrt of d mod p, -1 if none, -2 if p | d
};

RootTable root_table(i64 d, i64 amax) {
    RootTable t{d, std::vector<i64>(amax + 1, 0), std::vector<i64>(amax + 1, -1)};
    for (i64 i = 2; i <= amax; ++i) {
        if (t.spf[i]) continue;
        for (i64 j = i; j <= amax; j += i)
            if (!t.spf[j]) t.spf[j] = i;
        if (i == 2) continue;
        i64 dm = mod_floor(d, i);
        if (dm == 0) {
            t.sqrt[i] = -2;
        } else {
            auto r = sqrt_mod_prime(mpz_class(static_cast<long>(dm)), mpz_class(static_cast<long>(i)));
            if (r) t.sqrt[i] = r->get_si();
        }
    }
    return t;
}

// Roots x mod m of x^2 = d mod (the prime-power part), as (roots, modulus).
bool odd_roots(const RootTable& t, i64 p, unsigned e, std::vector<i64>& roots, i64& mod) {
    mod = 1;
    for (unsigned i = 0; i < e; ++i) mod *= p;
    roots.clear();
    if (t.sqrt[p] == -2) {
        if (e != 1) return false;
        roots.push_back(0);
        return true;
    }
    if (t.sqrt[p] < 0) return false;
    // Hensel lift.
    i64 r = t.sqrt[p], cur = p;
    while (cur < mod) {
        i64 next = std::min<i64>(cur * cur, mod);
        i64 fx = mod_floor(static_cast<i64>((static_cast<i128>(r) * r - t.d) % next), next);
        i64 inv = 0, tmp;
        xgcd(mod_floor(2 * r, next), next, inv, tmp);
        r = mod_floor(static_cast<i64>((r - static_cast<i128>(fx) * inv) % next), next);
        cur = next;
    }
    roots.push_back(r);
    if (mod - r != r) roots.push_back(mod - r);
    return true;
}

void crt_combine(std::vector<i64>& acc, i64& m1, const std::vector<i64>& roots, i64 m2) {
    i64 inv, tmp;
    xgcd(mod_floor(m1, m2), m2, inv, tmp);
    inv = mod_floor(inv, m2);
    std::vector<i64> out;
    out.reserve(acc.size() * roots.size());
    for (i64 x1 : acc)
        for (i64 x2 : roots) {
            i64 k = mod_floor(static_cast<i64>(static_cast<i128>(mod_floor(x2 - x1, m2)) * inv % m2), m2);
            out.push_back(x1 + m1 * k);
        }
    acc = std::move(out);
    m1 *= m2;
}

void forms_for_a(const RootTable& t, i64 a, std::vector<Form>& out) {
    const i64 d = t.d;
    std::vector<i64> acc{0}, roots;
    i64 m1 = 1, mod;
    // Power of 2: b mod 2^(v+1) with b^2 = d mod 2^(v+2).
    i64 rest = a;
    unsigned v = 0;
    while (rest % 2 == 0) {
        rest /= 2;
        ++v;
    }
    {
        i64 m2 = i64(1) << (v + 1), big = i64(1) << (v + 2);
        roots.clear();
        for (i64 b = 1; b < m2; b += 2)
            if (mod_floor(static_cast<i64>((static_cast<i128>(b) * b - d) % big), big) == 0) roots.push_back(b);
        if (roots.empty()) return;
        crt_combine(acc, m1, roots, m2);
    }
    while (rest > 1) {
        i64 p = t.spf[rest];
        unsigned e = 0;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        if (!odd_roots(t, p, e, roots, mod)) return;
        crt_combine(acc, m1, roots, mod);
    }
    std::vector<Form> local;
    for (i64 x : acc) {
        i64 b = x > a ? x - 2 * a : x;
        i128 num = static_cast<i128>(b) * b - d;
        if (num % (4 * a) != 0) throw std::logic_error("reduced_forms: bad root");
        i128 c = num / (4 * a);
        if (c < a) continue;
        if ((std::llabs(b) == a || c == a) && b < 0) continue;
        if (std::gcd(std::gcd(a, std::llabs(b)), static_cast<i64>(c)) != 1) continue;
        local.push_back(Form{a, b, static_cast<i64>(c)});
    }
    std::sort(local.begin(), local.end(), [](const Form& x, const Form& y) { return x.b < y.b; });
    out.insert(out.end(), local.begin(), local.end());
}

}  // namespace

std::vector<Form> reduced_forms(i64 d, Exec exec) {
    if (d >= 0 || mod_floor(d, 4) != 1) throw std::invalid_argument("reduced_forms: need d < 0, d = 1 mod 4");
    i64 amax = 1;
    while ((amax + 1) * (amax + 1) * 3 <= -d) ++amax;
    RootTable t = root_table(d, amax);
    std::vector<std::vector<Form>> per(amax + 1);
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 64)
        for (i64 a = 1; a <= amax; ++a) forms_for_a(t, a, per[a]);
    } else {
        for (i64 a = 1; a <= amax; ++a) forms_for_a(t, a, per[a]);
    }
    std::vector<Form> out;
    for (auto& v : per) out.insert(out.end(), v.begin(), v.end());
    return out;
}

Form form_of_ideal(const FieldSpec& f, const QuadIdeal& I) {
    if (I.a % I.c != 0 || I.b % I.c != 0) throw std::invalid_argument("form_of_ideal: not an ideal HNF");
    mpz_class A = I.a / I.c, beta = I.b / I.c;
    mpz_class B = -1 - 2 * beta;
    mpz_class num = B * B - f.d;
    mpz_class C = num / (4 * A);
    if (C * 4 * A != num) throw std::logic_error("form_of_ideal: non-integral form");
    // Pre-normalize in big integers so that the reduction starts from small entries.
    mpz_class k;
    mpz_class t = A - B, twoA = 2 * A;
    mpz_fdiv_q(k.get_mpz_t(), t.get_mpz_t(), twoA.get_mpz_t());
    mpz_class nb = B + twoA * k;
    C = C + k * (B + A * k);
    if (!A.fits_slong_p() || !nb.fits_slong_p() || !C.fits_slong_p())
        throw std::overflow_error("form_of_ideal: entries exceed 64 bits");
    return reduce(Form{A.get_si(), nb.get_si(), C.get_si()});
}

QuadIdeal ideal_of_form(const FieldSpec& f, const Form& q) {
    (void)f;
    if (q.b % 2 == 0) throw std::invalid_argument("ideal_of_form: b must be odd");
    mpz_class a = static_cast<long>(q.a);
    mpz_class beta = mpz_class(static_cast<long>(-q.b - 1)) / 2, b;
    mpz_fdiv_r(b.get_mpz_t(), beta.get_mpz_t(), a.get_mpz_t());
    return QuadIdeal{a, b, 1};
}

SmithForm smith_normal_form(const std::vector<std::vector<mpz_class>>& A) {
    const std::size_t m = A.size(), n = m ? A[0].size() : 0;
    SmithForm s;
    s.D = A;
    s.U.assign(m, std::vector<mpz_class>(m, 0));
    s.V.assign(n, std::vector<mpz_class>(n, 0));
    for (std::size_t i = 0; i < m; ++i) s.U[i][i] = 1;
    for (std::size_t j = 0; j < n; ++j) s.V[j][j] = 1;
    auto& D = s.D;
    auto row_swap = [&](std::size_t i, std::size_t k) {
        std::swap(D[i], D[k]);
        std::swap(s.U[i], s.U[k]);
    };
    auto col_swap = [&](std::size_t j, std::size_t k) {
        for (auto& r : D) std::swap(r[j], r[k]);
        for (auto& r : s.V) std::swap(r[j], r[k]);
    };
    // row_i -= q row_k
    auto row_sub = [&](std::size_t i, std::size_t k, const mpz_class& q) {
        for (std::size_t j = 0; j < n; ++j) D[i][j] -= q * D[k][j];
        for (std::size_t j = 0; j < m; ++j) s.U[i][j] -= q * s.U[k][j];
    };
    auto col_sub = [&](std::size_t j, std::size_t k, const mpz_class& q) {
        for (std::size_t i = 0; i < m; ++i) D[i][j] -= q * D[i][k];
        for (std::size_t i = 0; i < n; ++i) s.V[i][j] -= q * s.V[i][k];
    };
    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        for (;;) {
            // Smallest nonzero entry of the remaining block to (t, t).
            std::size_t bi = m, bj = n;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j)
                    if (D[i][j] != 0 && (bi == m || abs(D[i][j]) < abs(D[bi][bj]))) {
                        bi = i;
                        bj = j;
                    }
            if (bi == m) return s;
            row_swap(t, bi);
            col_swap(t, bj);
            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i)
                if (D[i][t] != 0) {
                    mpz_class q;
                    mpz_fdiv_q(q.get_mpz_t(), D[i][t].get_mpz_t(), D[t][t].get_mpz_t());
                    row_sub(i, t, q);
                    if (D[i][t] != 0) clean = false;
                }
            for (std::size_t j = t + 1; j < n; ++j)
                if (D[t][j] != 0) {
                    mpz_class q;
                    mpz_fdiv_q(q.get_mpz_t(), D[t][j].get_mpz_t(), D[t][t].get_mpz_t());
                    col_sub(j, t, q);
                    if (D[t][j] != 0) clean = false;
                }
            if (!clean) continue;
            // Divisibility of the rest by the pivot.
            std::size_t bad = m;
            for (std::size_t i = t + 1; i < m && bad == m; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (D[i][j] % D[t][t] != 0) {
                        bad = i;
                        break;
                    }
            if (bad == m) break;
            row_sub(t, bad, -1);
        }
        if (D[t][t] < 0) {
            for (std::size_t j = 0; j < n; ++j) D[t][j] = -D[t][j];
            for (std::size_t j = 0; j < m; ++j) s.U[t][j] = -s.U[t][j];
        }
    }
    return s;
}

ClassGroup::ClassGroup(const FieldSpec& f, const ClassGroupOptions& opt) : f_(f) {
    if (abs(f.d) > opt.max_disc)
        throw DiscriminantGuard("discriminant exceeds class-group guard " + opt.max_disc.get_str());
    d_ = f.d.get_si();
    forms_ = reduced_forms(d_, opt.exec);
    const std::size_t h = forms_.size();
    index_.reserve(h * 2);
    for (std::size_t i = 0; i < h; ++i) index_.emplace(form_key(forms_[i].a, forms_[i].b), i);

    // Subgroup extension by greedy generators.
    std::vector<std::vector<i64>> x(h);  // exponents over the greedy generators
    std::vector<char> in(h, 0);
    std::vector<std::size_t> members{lookup(principal_form(d_))};
    in[members[0]] = 1;
    std::vector<std::vector<i64>> rel;
    std::size_t k = 0;
    for (std::size_t cand = 0; cand < h && members.size() < h; ++cand) {
        if (in[cand]) continue;
        const Form g = forms_[cand];
        Form cur = g;
        i64 e = 1;
        std::size_t ci;
        while (!in[ci = lookup(cur)]) {
            cur = compose(cur, g, d_);
            ++e;
        }
        for (auto idx : members) x[idx].push_back(0);
        std::vector<i64> row(k + 1, 0);
        for (std::size_t j = 0; j < k; ++j) row[j] = -x[ci][j];
        row[k] = e;
        for (auto& r : rel) r.push_back(0);
        rel.push_back(row);
        const std::size_t old = members.size();
        Form gj = principal_form(d_);
        for (i64 j = 1; j < e; ++j) {
            gj = compose(gj, g, d_);
            for (std::size_t t = 0; t < old; ++t) {
                std::size_t idx = lookup(compose(gj, forms_[members[t]], d_));
                if (in[idx]) throw std::logic_error("class group: coset overlap");
                in[idx] = 1;
                x[idx] = x[members[t]];
                x[idx][k] = j;
                members.push_back(idx);
            }
        }
        ++k;
    }
    if (members.size() != h) throw std::logic_error("class group: enumeration incomplete");

    std::vector<std::vector<mpz_class>> R(k, std::vector<mpz_class>(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) R[i][j] = static_cast<long>(rel[i][j]);
    SmithForm s = smith_normal_form(R);
    std::vector<std::size_t> keep;
    mpz_class prod = 1;
    for (std::size_t j = 0; j < k; ++j) {
        prod *= s.D[j][j];
        if (s.D[j][j] > 1) {
            keep.push_back(j);
            inv_.push_back(s.D[j][j].get_si());
        }
    }
    if (prod != static_cast<long>(h)) throw std::logic_error("class group: relation determinant mismatch");
    coord_.assign(h, std::vector<i64>(keep.size(), 0));
    for (std::size_t idx = 0; idx < h; ++idx)
        for (std::size_t c = 0; c < keep.size(); ++c) {
            mpz_class acc = 0;
            for (std::size_t j = 0; j < k; ++j) acc += static_cast<long>(x[idx][j]) * s.V[j][keep[c]];
            mpz_class r;
            mpz_fdiv_r_ui(r.get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(inv_[c]));
            coord_[idx][c] = r.get_si();
        }
    gens_.assign(keep.size(), principal_form(d_));
    std::vector<char> found(keep.size(), 0);
    for (std::size_t idx = 0; idx < h; ++idx) {
        std::size_t nz = 0, pos = 0;
        for (std::size_t c = 0; c < keep.size(); ++c)
            if (coord_[idx][c]) {
                ++nz;
                pos = c;
            }
        if (nz == 1 && coord_[idx][pos] == 1 && !found[pos]) {
            gens_[pos] = forms_[idx];
            found[pos] = 1;
        }
    }
    for (char c : found)
        if (!c) throw std::logic_error("class group: missing generator");
}

std::size_t ClassGroup::lookup(const Form& q) const {
    auto it = index_.find(form_key(q.a, q.b));
    if (it == index_.end() || !(forms_[it->second] == q)) throw std::logic_error("class group: unknown form");
    return it->second;
}

std::vector<i64> ClassGroup::coords(const Form& q) const {
    return coord_[lookup(reduce(q))];
}

unsigned ClassGroup::two_rank() const {
    unsigned r = 0;
    for (i64 v : inv_)
        if (v % 2 == 0) ++r;
    return r;
}

bool ClassGroup::is_zero(const std::vector<i64>& c) const {
    for (std::size_t j = 0; j < c.size(); ++j)
        if (mod_floor(c[j], inv_[j]) != 0) return false;
    return true;
}

std::vector<i64> ClassGroup::add(const std::vector<i64>& x, const std::vector<i64>& y) const {
    std::vector<i64> out(inv_.size());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = mod_floor(x[j] + y[j], inv_[j]);
    return out;
}

namespace {

unsigned f2_rank(std::vector<u64> rows) {
    unsigned rank = 0;
    for (unsigned bit = 0; bit < 64; ++bit) {
        auto it = std::find_if(rows.begin(), rows.end(), [&](u64 r) { return (r >> bit) & 1u; });
        if (it == rows.end()) continue;
        u64 piv = *it;
        rows.erase(it);
        for (auto& r : rows)
            if ((r >> bit) & 1u) r ^= piv;
        ++rank;
    }
    return rank;
}

}  // namespace

TwoTorsionReport two_torsion(const ClassGroup& cg) {
    const FieldSpec& f = cg.field();
    TwoTorsionReport rep;
    rep.r = static_cast<unsigned>(f.r());
    rep.two_rank = cg.two_rank();
    const auto& inv = cg.invariants();
    std::vector<i64> sum(inv.size(), 0);
    rep.primes_are_two_torsion = true;
    std::vector<u64> bits;
    for (std::size_t i = 0; i < f.r(); ++i) {
        auto c = cg.ideal_class(ramified_prime(f, i).ideal());
        rep.prime_classes.push_back(c);
        sum = cg.add(sum, c);
        if (!cg.is_zero(cg.add(c, c))) rep.primes_are_two_torsion = false;
        u64 b = 0;
        for (std::size_t j = 0; j < inv.size(); ++j)
            if (c[j] != 0 && inv[j] % 2 == 0 && c[j] == inv[j] / 2) b |= u64(1) << j;
        bits.push_back(b);
    }
    rep.relation_holds = cg.is_zero(sum);
    rep.prime_span_rank = f2_rank(bits);
    std::vector<u64> genus_rows;
    for (std::size_t i = 0; i + 1 < f.r(); ++i) {
        std::vector<int> row;
        u64 b = 0;
        for (std::size_t j = 0; j < inv.size(); ++j) {
            int s = artin_symbol(f, mpz_class(f.primes[i]), ideal_of_form(f, cg.generator(j)));
            row.push_back(s);
            if (s) b |= u64(1) << j;
        }
        rep.genus_matrix.push_back(row);
        genus_rows.push_back(b);
    }
    rep.genus_rank = f2_rank(genus_rows);
    return rep;
}

}  // namespace dw
