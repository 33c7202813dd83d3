#include "dw/gmodule.hpp"

#include <stdexcept>

namespace dw {

GModule::GModule(GroupPtr group, std::vector<std::uint32_t> orders, std::uint32_t n,
                 std::vector<std::vector<Elem>> action)
    : group_(std::move(group)), orders_(std::move(orders)), n_(n), size_(1) {
    for (auto o : orders_) {
        if (o < 2 || n_ % o != 0) throw std::invalid_argument("module: factor order must divide n");
        size_ *= o;
    }
    const std::size_t g = group_->order();
    if (action.size() != g) throw std::invalid_argument("module: action table size");
    add_.resize(size_ * size_);
    neg_.resize(size_);
    for (Elem a = 0; a < size_; ++a) {
        auto ca = coords(a);
        for (Elem b = 0; b < size_; ++b) {
            auto cb = coords(b);
            for (std::size_t j = 0; j < ca.size(); ++j) cb[j] = (ca[j] + cb[j]) % orders_[j];
            add_[a * size_ + b] = encode(cb);
        }
        for (std::size_t j = 0; j < ca.size(); ++j) ca[j] = (orders_[j] - ca[j]) % orders_[j];
        neg_[a] = encode(ca);
    }
    act_.resize(g * size_);
    for (std::size_t x = 0; x < g; ++x) {
        if (action[x].size() != size_) throw std::invalid_argument("module: action row size");
        for (Elem a = 0; a < size_; ++a) {
            if (action[x][a] >= size_) throw std::invalid_argument("module: action out of range");
            act_[x * size_ + a] = action[x][a];
        }
    }
    // Action by automorphisms.
    for (Elem a = 0; a < size_; ++a)
        if (act(0, a) != a) throw std::invalid_argument("module: identity acts nontrivially");
    for (std::size_t x = 0; x < g; ++x)
        for (Elem a = 0; a < size_; ++a) {
            for (Elem b = 0; b < size_; ++b)
                if (act(x, add(a, b)) != add(act(x, a), act(x, b)))
                    throw std::invalid_argument("module: action not additive");
            for (std::size_t y = 0; y < g; ++y)
                if (act(group_->mul(x, y), a) != act(x, act(y, a)))
                    throw std::invalid_argument("module: not a group action");
        }
}

ModulePtr GModule::trivial(GroupPtr group, std::vector<std::uint32_t> orders, std::uint32_t n) {
    std::size_t s = 1;
    for (auto o : orders) s *= o;
    std::vector<Elem> id(s);
    for (std::size_t a = 0; a < s; ++a) id[a] = static_cast<Elem>(a);
    std::vector<std::vector<Elem>> act(group->order(), id);
    return std::make_shared<GModule>(std::move(group), std::move(orders), n, std::move(act));
}

ModulePtr GModule::trivial_cyclic(GroupPtr group, std::uint32_t n) {
    return trivial(std::move(group), {n}, n);
}

ModulePtr GModule::from_matrices(GroupPtr group, std::vector<std::uint32_t> orders,
                                 std::uint32_t n,
                                 const std::vector<std::vector<std::vector<long>>>& matrices) {
    std::size_t s = 1;
    for (auto o : orders) s *= o;
    // Temporary trivial module for coordinate encoding.
    std::vector<Elem> id(s);
    for (std::size_t a = 0; a < s; ++a) id[a] = static_cast<Elem>(a);
    GModule shape(FiniteGroup::trivial(), orders, n, {id});
    std::vector<std::vector<Elem>> act(group->order(), std::vector<Elem>(s));
    for (std::size_t x = 0; x < group->order(); ++x)
        for (Elem a = 0; a < s; ++a) {
            auto c = shape.coords(a);
            std::vector<std::uint32_t> out(orders.size());
            for (std::size_t i = 0; i < orders.size(); ++i) {
                long v = 0;
                for (std::size_t j = 0; j < orders.size(); ++j) v += matrices[x][i][j] * c[j];
                long o = orders[i];
                out[i] = static_cast<std::uint32_t>(((v % o) + o) % o);
            }
            act[x][a] = shape.encode(out);
        }
    return std::make_shared<GModule>(std::move(group), std::move(orders), n, std::move(act));
}

bool GModule::is_trivial_action() const {
    for (std::size_t x = 0; x < group_->order(); ++x)
        for (Elem a = 0; a < size_; ++a)
            if (act(x, a) != a) return false;
    return true;
}

GModule::Elem GModule::smul(long k, Elem a) const {
    auto c = coords(a);
    for (std::size_t j = 0; j < c.size(); ++j) {
        long o = orders_[j];
        c[j] = static_cast<std::uint32_t>((((k % o) + o) % o) * c[j] % o);
    }
    return encode(c);
}

std::vector<std::uint32_t> GModule::coords(Elem a) const {
    std::vector<std::uint32_t> c(orders_.size());
    for (std::size_t j = 0; j < orders_.size(); ++j) {
        c[j] = a % orders_[j];
        a /= orders_[j];
    }
    return c;
}

GModule::Elem GModule::encode(const std::vector<std::uint32_t>& c) const {
    Elem a = 0, stride = 1;
    for (std::size_t j = 0; j < orders_.size(); ++j) {
        a += (c[j] % orders_[j]) * stride;
        stride *= orders_[j];
    }
    return a;
}

GModule::Elem GModule::basis(std::size_t j) const {
    std::vector<std::uint32_t> c(orders_.size(), 0);
    c[j] = 1;
    return encode(c);
}

ModulePtr GModule::restrict_along(const GroupHom& f) const {
    if (f.target->order() != group_->order())
        throw std::invalid_argument("restrict_along: homomorphism target mismatch");
    std::vector<std::vector<Elem>> act(f.source->order(), std::vector<Elem>(size_));
    for (std::size_t y = 0; y < f.source->order(); ++y)
        for (Elem a = 0; a < size_; ++a) act[y][a] = this->act(f.images[y], a);
    return std::make_shared<GModule>(f.source, orders_, n_, std::move(act));
}

ModulePtr GModule::dual() const {
    // f with coordinates c evaluates e_j to (n/n_j) c_j.
    auto eval = [&](const std::vector<std::uint32_t>& fc, Elem a) {
        auto ac = coords(a);
        unsigned long v = 0;
        for (std::size_t j = 0; j < ac.size(); ++j)
            v += static_cast<unsigned long>(ac[j]) * (n_ / orders_[j]) * fc[j];
        return static_cast<std::uint32_t>(v % n_);
    };
    std::vector<std::vector<Elem>> act(group_->order(), std::vector<Elem>(size_));
    for (std::size_t x = 0; x < group_->order(); ++x) {
        auto xi = group_->inv(static_cast<FiniteGroup::Elem>(x));
        for (Elem f = 0; f < size_; ++f) {
            auto fc = coords(f);
            std::vector<std::uint32_t> out(orders_.size());
            for (std::size_t j = 0; j < orders_.size(); ++j)
                out[j] = eval(fc, this->act(xi, basis(j))) / (n_ / orders_[j]);
            act[x][f] = encode(out);
        }
    }
    return std::make_shared<GModule>(group_, orders_, n_, std::move(act));
}

std::size_t GModule::fixed_point_count() const {
    std::size_t c = 0;
    for (Elem a = 0; a < size_; ++a) {
        bool fixed = true;
        for (std::size_t x = 0; x < group_->order() && fixed; ++x)
            if (act(x, a) != a) fixed = false;
        if (fixed) ++c;
    }
    return c;
}

bool Pairing::is_bilinear() const {
    for (GModule::Elem a = 0; a < left->size(); ++a)
        for (GModule::Elem b = 0; b < right->size(); ++b)
            for (GModule::Elem c = 0; c < right->size(); ++c) {
                if ((*this)(a, right->add(b, c)) != out->add((*this)(a, b), (*this)(a, c)))
                    return false;
                if (c < left->size() &&
                    (*this)(left->add(a, c), b) != out->add((*this)(a, b), (*this)(c, b)))
                    return false;
            }
    return true;
}

bool Pairing::is_equivariant() const {
    const auto& g = left->group();
    for (std::size_t x = 0; x < g->order(); ++x)
        for (GModule::Elem a = 0; a < left->size(); ++a)
            for (GModule::Elem b = 0; b < right->size(); ++b)
                if ((*this)(left->act(x, a), right->act(x, b)) != out->act(x, (*this)(a, b)))
                    return false;
    return true;
}

namespace {
void require_cyclic(const ModulePtr& m, std::uint32_t n) {
    if (m->rank() != 1 || m->orders()[0] != n)
        throw std::invalid_argument("pairing: expected a cyclic module of order n");
}
}  // namespace

Pairing multiplication_pairing(ModulePtr left, ModulePtr right, ModulePtr out) {
    std::uint32_t n = out->torsion();
    require_cyclic(out, n);
    if (left->rank() != 1 || right->rank() != 1)
        throw std::invalid_argument("multiplication pairing: cyclic modules required");
    // Z/a x Z/b -> Z/n via (x, y) -> (n/a)(n/b)... only a = b = n supported.
    require_cyclic(left, n);
    require_cyclic(right, n);
    Pairing p{left, right, out, std::vector<GModule::Elem>(n * n)};
    for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = 0; b < n; ++b) p.table[a * n + b] = (a * b) % n;
    return p;
}

Pairing evaluation_pairing(ModulePtr a, ModulePtr a_dual, ModulePtr zn) {
    std::uint32_t n = a->torsion();
    require_cyclic(zn, n);
    if (!a->same_underlying(*a_dual)) throw std::invalid_argument("evaluation pairing: shape");
    Pairing p{a, a_dual, zn, std::vector<GModule::Elem>(a->size() * a_dual->size())};
    for (GModule::Elem x = 0; x < a->size(); ++x) {
        auto xc = a->coords(x);
        for (GModule::Elem f = 0; f < a_dual->size(); ++f) {
            auto fc = a_dual->coords(f);
            unsigned long v = 0;
            for (std::size_t j = 0; j < xc.size(); ++j)
                v += static_cast<unsigned long>(xc[j]) * (n / a->orders()[j]) * fc[j];
            p.table[x * a_dual->size() + f] = static_cast<GModule::Elem>(v % n);
        }
    }
    return p;
}

Pairing evaluation_pairing_flipped(ModulePtr a_dual, ModulePtr a, ModulePtr zn) {
    return swap_pairing(evaluation_pairing(a, a_dual, zn));
}

Pairing scalar_pairing(ModulePtr zn, ModulePtr a) {
    std::uint32_t n = zn->torsion();
    require_cyclic(zn, n);
    Pairing p{zn, a, a, std::vector<GModule::Elem>(n * a->size())};
    for (std::uint32_t k = 0; k < n; ++k)
        for (GModule::Elem x = 0; x < a->size(); ++x) p.table[k * a->size() + x] = a->smul(k, x);
    return p;
}

Pairing swap_pairing(const Pairing& p) {
    Pairing q{p.right, p.left, p.out, std::vector<GModule::Elem>(p.table.size())};
    for (GModule::Elem a = 0; a < p.left->size(); ++a)
        for (GModule::Elem b = 0; b < p.right->size(); ++b)
            q.table[b * p.left->size() + a] = p(a, b);
    return q;
}

}  // namespace dw
