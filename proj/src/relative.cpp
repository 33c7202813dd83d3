#include "dw/relative.hpp"

namespace dw {

RelativePair make_relative_pair(GroupPtr delta, std::vector<GroupHom> maps) {
    for (const auto& f : maps) {
        if (f.target->order() != delta->order())
            throw std::invalid_argument("relative pair: map does not land in Delta");
        if (!f.is_homomorphism()) throw std::invalid_argument("relative pair: not a homomorphism");
    }
    return RelativePair{std::move(delta), std::move(maps)};
}

bool RelativeCochain::is_zero() const {
    if (!alpha.is_zero()) return false;
    for (const auto& b : betas)
        if (!b.is_zero()) return false;
    return true;
}

bool RelativeCochain::operator==(const RelativeCochain& o) const {
    if (degree != o.degree || betas.size() != o.betas.size() || alpha != o.alpha) return false;
    for (std::size_t v = 0; v < betas.size(); ++v)
        if (betas[v] != o.betas[v]) return false;
    return true;
}

RelativeCochain RelativeCochain::operator+(const RelativeCochain& o) const {
    RelativeCochain r = *this;
    r.alpha = alpha + o.alpha;
    for (std::size_t v = 0; v < betas.size(); ++v) r.betas[v] = betas[v] + o.betas[v];
    return r;
}

RelativeCochain RelativeCochain::operator-(const RelativeCochain& o) const {
    return *this + o.scaled(-1);
}

RelativeCochain RelativeCochain::scaled(long k) const {
    RelativeCochain r = *this;
    r.alpha = alpha.scaled(k);
    for (auto& b : r.betas) b = b.scaled(k);
    return r;
}

RelativeComplex::RelativeComplex(RelativePair pair, ModulePtr module)
    : pair_(std::move(pair)), module_(std::move(module)) {
    if (module_->group()->order() != pair_.delta->order())
        throw std::invalid_argument("relative complex: module is not over Delta");
    for (const auto& f : pair_.maps) restricted_.push_back(module_->restrict_along(f));
}

RelativeCochain RelativeComplex::zero(unsigned degree) const {
    RelativeCochain rc{degree, Cochain(module_, degree), {}};
    if (degree > 0)
        for (const auto& m : restricted_) rc.betas.emplace_back(m, degree - 1);
    return rc;
}

RelativeCochain RelativeComplex::make(Cochain alpha, std::vector<Cochain> betas) const {
    const unsigned i = alpha.degree();
    if (i == 0 ? !betas.empty() : betas.size() != restricted_.size())
        throw std::invalid_argument("relative cochain: wrong number of boundary components");
    for (std::size_t v = 0; v < betas.size(); ++v)
        if (betas[v].degree() + 1 != i ||
            betas[v].group()->order() != pair_.maps[v].source->order())
            throw std::invalid_argument("relative cochain: boundary component mismatch");
    return RelativeCochain{i, std::move(alpha), std::move(betas)};
}

Cochain RelativeComplex::restrict(const Cochain& c, std::size_t v) const {
    return pullback(c, pair_.maps[v], restricted_[v]);
}

RelativeCochain RelativeComplex::differential(const RelativeCochain& rc) const {
    RelativeCochain out{rc.degree + 1, dw::differential(rc.alpha, Exec::serial), {}};
    for (std::size_t v = 0; v < restricted_.size(); ++v) {
        Cochain b = -restrict(rc.alpha, v);
        if (rc.degree > 0) b = b - dw::differential(rc.betas[v], Exec::serial);
        out.betas.push_back(std::move(b));
    }
    return out;
}

std::size_t RelativeComplex::coord_count(unsigned degree) const {
    std::size_t c = Cochain::tuple_count(pair_.delta->order(), degree) * module_->rank();
    if (degree > 0)
        for (std::size_t v = 0; v < restricted_.size(); ++v)
            c += Cochain::tuple_count(pair_.maps[v].source->order(), degree - 1) * module_->rank();
    return c;
}

ZnRow RelativeComplex::to_coords(const RelativeCochain& rc) const {
    ZnRow out = rc.alpha.to_coords();
    for (const auto& b : rc.betas) {
        ZnRow r = b.to_coords();
        out.insert(out.end(), r.begin(), r.end());
    }
    return out;
}

RelativeCochain RelativeComplex::from_coords(unsigned degree, const ZnRow& coords) const {
    if (coords.size() != coord_count(degree))
        throw std::invalid_argument("relative cochain: coordinate size");
    std::size_t pos = 0;
    auto take = [&](const ModulePtr& m, unsigned deg) {
        std::size_t len = Cochain::tuple_count(m->group()->order(), deg) * m->rank();
        ZnRow part(coords.begin() + pos, coords.begin() + pos + len);
        pos += len;
        return Cochain::from_coords(m, deg, part);
    };
    RelativeCochain rc{degree, take(module_, degree), {}};
    if (degree > 0)
        for (const auto& m : restricted_) rc.betas.push_back(take(m, degree - 1));
    return rc;
}

std::optional<RelativeCochain> RelativeComplex::solve_coboundary(const RelativeCochain& rc) const {
    if (rc.degree == 0) throw std::invalid_argument("relative coboundary: degree must be positive");
    const unsigned i = rc.degree;
    const std::size_t m = coord_count(i), mp = coord_count(i - 1);
    const std::uint32_t n = module_->torsion();
    // Coordinate orders of the target, for relation rows.
    RelativeCochain probe = zero(i);
    std::vector<std::uint32_t> orders;
    auto push_orders = [&](const Cochain& c) {
        for (std::size_t t = 0; t < c.size(); ++t)
            for (auto o : c.module()->orders()) orders.push_back(o);
    };
    push_orders(probe.alpha);
    for (const auto& b : probe.betas) push_orders(b);

    std::vector<ZnRow> rows;
    for (std::size_t k = 0; k < mp; ++k) {
        ZnRow e(mp, 0);
        e[k] = 1;
        ZnRow img = to_coords(differential(from_coords(i - 1, e)));
        ZnRow row(m + mp, 0);
        std::copy(img.begin(), img.end(), row.begin());
        row[m + k] = 1;
        rows.push_back(std::move(row));
    }
    for (std::size_t j = 0; j < m; ++j)
        if (orders[j] < n) {
            ZnRow row(m + mp, 0);
            row[j] = orders[j];
            rows.push_back(std::move(row));
        }
    Howell h = howell(std::move(rows), n, m, Exec::serial);
    h.width = m + mp;
    auto coeff = h.solve(to_coords(rc));
    if (!coeff) return std::nullopt;
    RelativeCochain b = from_coords(i - 1, *coeff);
    if (!(differential(b) == rc)) throw std::logic_error("relative coboundary: solve mismatch");
    return b;
}

RelativeCochain relative_cup(const RelativeComplex& src, const RelativeCochain& rc,
                             const Cochain& gamma, const Pairing& p, const RelativeComplex& dst) {
    const unsigned deg = rc.degree + gamma.degree();
    RelativeCochain out{deg, cup(rc.alpha, gamma, p, dst.module()), {}};
    for (std::size_t v = 0; v < src.pair().maps.size(); ++v) {
        if (deg == 0) break;
        if (rc.degree == 0) {
            out.betas.emplace_back(dst.restricted(v), deg - 1);
            continue;
        }
        Cochain gr = pullback(gamma, src.pair().maps[v]);
        out.betas.push_back(cup(rc.betas[v], gr, p, dst.restricted(v)));
    }
    return out;
}

RelativeCochain relative_cup(const Cochain& gamma, const RelativeComplex& src,
                             const RelativeCochain& rc, const Pairing& p,
                             const RelativeComplex& dst) {
    const unsigned j = gamma.degree(), deg = rc.degree + j;
    RelativeCochain out{deg, cup(gamma, rc.alpha, p, dst.module()), {}};
    for (std::size_t v = 0; v < src.pair().maps.size(); ++v) {
        if (deg == 0) break;
        if (rc.degree == 0) {
            out.betas.emplace_back(dst.restricted(v), deg - 1);
            continue;
        }
        Cochain gr = pullback(gamma, src.pair().maps[v]);
        Cochain c = cup(gr, rc.betas[v], p, dst.restricted(v));
        out.betas.push_back(j % 2 ? -c : c);
    }
    return out;
}

}  // namespace dw
