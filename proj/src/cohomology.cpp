#include "dw/cohomology.hpp"

#include <algorithm>
#include <map>

#include "dw/arith.hpp"

namespace dw {

mpz_class CohomologyGroup::order() const {
    mpz_class o = 1;
    for (auto d : invariant_factors) o *= d;
    return o;
}

std::size_t coord_count(const ModulePtr& module, unsigned degree) {
    return Cochain::tuple_count(module->group()->order(), degree) * module->rank();
}

std::vector<ZnRow> differential_rows(const ModulePtr& module, unsigned degree) {
    const GModule& m = *module;
    const FiniteGroup& g = *module->group();
    const std::uint32_t n = m.torsion();
    const std::size_t k = m.rank();
    const std::size_t in = coord_count(module, degree);
    const std::size_t out = coord_count(module, degree + 1);
    if (in * out > 64 * cochain_guard())
        throw SizeGuardError("differential matrix exceeds size guard");
    std::vector<ZnRow> rows(in, ZnRow(out, 0));
    if (out == 0 || in == 0) return rows;

    // Action matrices: act[y][j'][j] = coordinate j' of y.e_j.
    std::vector<std::vector<std::uint32_t>> act(g.order(), std::vector<std::uint32_t>(k * k));
    for (std::size_t y = 0; y < g.order(); ++y)
        for (std::size_t j = 0; j < k; ++j) {
            auto c = m.coords(m.act(static_cast<FiniteGroup::Elem>(y), m.basis(j)));
            for (std::size_t jp = 0; jp < k; ++jp) act[y][jp * k + j] = c[jp];
        }

    const unsigned i = degree;
    const std::size_t base = g.order() - 1;
    auto index_of = [&](const FiniteGroup::Elem* y, unsigned len, bool& zero) {
        std::size_t idx = 0;
        zero = false;
        for (unsigned t = 0; t < len; ++t) {
            if (y[t] == 0) {
                zero = true;
                return idx;
            }
            idx = idx * base + (y[t] - 1);
        }
        return idx;
    };
    Cochain shape(module, i + 1);
    std::vector<FiniteGroup::Elem> y(i + 1), tmp(i + 1);
    for (std::size_t o = 0; o < shape.size(); ++o) {
        shape.decode(o, y.data());
        bool zero;
        std::size_t t0 = index_of(y.data() + 1, i, zero);
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t jp = 0; jp < k; ++jp) {
                auto& e = rows[t0 * k + j][o * k + jp];
                e = static_cast<std::uint32_t>((e + act[y[0]][jp * k + j]) % n);
            }
        for (unsigned kk = 0; kk < i; ++kk) {
            for (unsigned t = 0; t < kk; ++t) tmp[t] = y[t];
            tmp[kk] = g.mul(y[kk], y[kk + 1]);
            for (unsigned t = kk + 2; t <= i; ++t) tmp[t - 1] = y[t];
            std::size_t tk = index_of(tmp.data(), i, zero);
            if (zero) continue;
            std::uint32_t s = ((kk + 1) % 2) ? n - 1 : 1;
            for (std::size_t j = 0; j < k; ++j) {
                auto& e = rows[tk * k + j][o * k + j];
                e = (e + s) % n;
            }
        }
        std::size_t tl = index_of(y.data(), i, zero);
        std::uint32_t s = ((i + 1) % 2) ? n - 1 : 1;
        for (std::size_t j = 0; j < k; ++j) {
            auto& e = rows[tl * k + j][o * k + j];
            e = (e + s) % n;
        }
    }
    return rows;
}

std::vector<ZnRow> relation_rows(const ModulePtr& module, unsigned degree, std::size_t width,
                                 std::size_t offset) {
    const std::size_t k = module->rank();
    const std::size_t tuples = Cochain::tuple_count(module->group()->order(), degree);
    std::vector<ZnRow> rows;
    for (std::size_t j = 0; j < k; ++j) {
        std::uint32_t o = module->orders()[j];
        if (o == module->torsion()) continue;
        for (std::size_t t = 0; t < tuples; ++t) {
            ZnRow r(width, 0);
            r[offset + t * k + j] = o;
            rows.push_back(std::move(r));
        }
    }
    return rows;
}

namespace {

std::vector<ZnRow> coboundary_span_rows(const ModulePtr& module, unsigned degree) {
    const std::size_t m = coord_count(module, degree);
    std::vector<ZnRow> rows;
    if (degree > 0) rows = differential_rows(module, degree - 1);
    for (auto& r : relation_rows(module, degree, m, 0)) rows.push_back(std::move(r));
    return rows;
}

std::vector<ZnRow> kernel_rows(const ModulePtr& module, unsigned degree, Exec exec) {
    const std::size_t m = coord_count(module, degree);
    const std::size_t mo = coord_count(module, degree + 1);
    auto d = differential_rows(module, degree);
    std::vector<ZnRow> rows;
    rows.reserve(d.size());
    for (std::size_t r = 0; r < d.size(); ++r) {
        ZnRow row(mo + m, 0);
        std::copy(d[r].begin(), d[r].end(), row.begin());
        row[mo + r] = 1;
        rows.push_back(std::move(row));
    }
    d.clear();
    for (auto& r : relation_rows(module, degree + 1, mo + m, 0)) rows.push_back(std::move(r));
    Howell h = howell(std::move(rows), module->torsion(), mo, exec);
    std::vector<ZnRow> out;
    for (auto& t : h.tail) out.emplace_back(t.begin() + static_cast<std::ptrdiff_t>(mo), t.end());
    for (auto& r : relation_rows(module, degree, m, 0)) out.push_back(std::move(r));
    return out;
}

std::vector<std::uint32_t> prime_factors(std::uint32_t n) {
    std::vector<std::uint32_t> ps;
    for (std::uint32_t p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    if (n > 1) ps.push_back(n);
    return ps;
}

}  // namespace

mpz_class cocycle_count(const ModulePtr& module, unsigned degree, Exec exec) {
    auto z = kernel_rows(module, degree, exec);
    if (z.empty()) return 1;
    return span_order(std::move(z), module->torsion(), exec);
}

std::vector<Cochain> cocycle_generators(const ModulePtr& module, unsigned degree, Exec exec) {
    std::vector<Cochain> out;
    for (auto& r : kernel_rows(module, degree, exec))
        out.push_back(Cochain::from_coords(module, degree, r));
    return out;
}

CohomologyGroup cohomology(const ModulePtr& module, unsigned degree, Exec exec) {
    const std::uint32_t n = module->torsion();
    const std::size_t m = coord_count(module, degree);
    CohomologyGroup hg;
    hg.degree = degree;
    if (m == 0) return hg;

    auto brows = coboundary_span_rows(module, degree);
    auto zrows = kernel_rows(module, degree, exec);
    Howell hb = howell(brows, n, m, exec);
    const mpz_class b_order = hb.span_order();

    auto order_of = [&](std::uint32_t mult) {
        std::vector<ZnRow> rows = hb.rows;
        for (auto r : zrows) {
            for (auto& x : r) x = static_cast<std::uint32_t>((static_cast<u64>(x) * mult) % n);
            rows.push_back(std::move(r));
        }
        return mpz_class(span_order(std::move(rows), n, exec) / b_order);
    };

    // Primary decomposition from the orders of p^t H.
    std::map<std::uint32_t, std::vector<unsigned>> exps;  // prime -> exponents, descending
    for (std::uint32_t p : prime_factors(n)) {
        unsigned e = 0;
        for (std::uint32_t q = n; q % p == 0; q /= p) ++e;
        std::vector<mpz_class> sizes;
        std::uint32_t mult = 1;
        for (unsigned t = 0; t <= e; ++t) {
            sizes.push_back(order_of(mult));
            mult *= p;
        }
        std::vector<unsigned> count(e + 1, 0);  // count[t] = #factors with exponent > t
        for (unsigned t = 0; t < e; ++t) {
            mpz_class ratio = sizes[t] / sizes[t + 1];
            unsigned c = 0;
            while (ratio > 1) {
                ratio /= p;
                ++c;
            }
            count[t] = c;
        }
        std::vector<unsigned> ex;
        for (unsigned t = e; t-- > 0;) {
            unsigned exact = count[t] - count[t + 1];
            for (unsigned c = 0; c < exact; ++c) ex.push_back(t + 1);
        }
        exps[p] = ex;
    }
    std::size_t nf = 0;
    for (auto& [p, ex] : exps) nf = std::max(nf, ex.size());
    std::vector<std::uint32_t> factors(nf, 1);
    for (auto& [p, ex] : exps)
        for (std::size_t k = 0; k < ex.size(); ++k)
            for (unsigned t = 0; t < ex[k]; ++t) factors[k] *= p;
    std::sort(factors.begin(), factors.end());
    hg.invariant_factors = factors;

    // Greedy generators.
    Howell cur = hb;
    std::vector<ZnRow> chosen;
    for (auto& z : zrows) {
        if (cur.contains(z)) continue;
        chosen.push_back(z);
        std::vector<ZnRow> rows = cur.rows;
        rows.push_back(z);
        cur = howell(std::move(rows), n, m, exec);
        hg.generators.push_back(Cochain::from_coords(module, degree, z));
    }
    return hg;
}

bool is_cocycle(const Cochain& c) {
    return differential(c).is_zero();
}

CoboundarySolver::CoboundarySolver(ModulePtr module, unsigned degree, Exec exec)
    : module_(std::move(module)), degree_(degree) {
    if (degree == 0) throw std::invalid_argument("is_coboundary: degree must be positive");
    const std::size_t m = coord_count(module_, degree);
    const std::size_t mp = degree > 0 ? coord_count(module_, degree - 1) : 0;
    std::vector<ZnRow> rows;
    if (degree > 0) {
        auto d = differential_rows(module_, degree - 1);
        for (std::size_t r = 0; r < d.size(); ++r) {
            ZnRow row(m + mp, 0);
            std::copy(d[r].begin(), d[r].end(), row.begin());
            row[m + r] = 1;
            rows.push_back(std::move(row));
        }
    }
    for (auto& r : relation_rows(module_, degree, m + mp, 0)) rows.push_back(std::move(r));
    howell_ = howell(std::move(rows), module_->torsion(), m, exec);
    howell_.width = m + mp;
    order_ = howell_.span_order();
}

std::optional<Cochain> CoboundarySolver::solve(const Cochain& c) const {
    if (c.degree() != degree_ || !c.module()->same_underlying(*module_) ||
        c.group()->order() != module_->group()->order())
        throw std::invalid_argument("is_coboundary: cochain does not match solver");
    auto coeff = howell_.solve(c.to_coords());
    if (!coeff) return std::nullopt;
    Cochain b = Cochain::from_coords(c.module(), degree_ - 1, *coeff);
    if (differential(b) != c) throw std::logic_error("is_coboundary: witness verification failed");
    return b;
}

std::optional<Cochain> is_coboundary(const Cochain& c, Exec exec) {
    if (!is_cocycle(c)) throw std::invalid_argument("is_coboundary: input is not a cocycle");
    CoboundarySolver s(c.module(), c.degree(), exec);
    return s.solve(c);
}

Cochain bockstein(const Cochain& c, const ModulePtr& zm2) {
    const std::uint32_t m = c.module()->torsion();
    if (c.module()->rank() != 1 || zm2->rank() != 1 || zm2->torsion() != m * m)
        throw std::invalid_argument("bockstein: expects Z/m and Z/m^2 coefficients");
    Cochain lift = map_values(c, zm2, [](GModule::Elem v) { return v; });
    Cochain dl = differential(lift);
    return map_values(dl, c.module(), [m](GModule::Elem v) {
        if (v % m) throw std::logic_error("bockstein: lift differential not divisible");
        return v / m;
    });
}

}  // namespace dw

namespace dw {

CountingIdentity counting_identity(const ModulePtr& module) {
    CountingIdentity c;
    c.z1 = cocycle_count(module, 1);
    c.module_order = module->size();
    c.h0 = cohomology(module, 0).order();
    c.h1 = cohomology(module, 1).order();
    return c;
}

bool counting_identity_check(const ModulePtr& module) {
    return counting_identity(module).holds();
}

mpq_class euler_characteristic(const ModulePtr& module, unsigned max_degree) {
    mpq_class chi = 1;
    for (unsigned i = 0; i <= max_degree; ++i) {
        mpz_class h = cohomology(module, i).order();
        if (i % 2) chi /= h;
        else chi *= h;
    }
    chi.canonicalize();
    return chi;
}

}  // namespace dw
