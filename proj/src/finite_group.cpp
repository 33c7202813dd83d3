#include "dw/finite_group.hpp"

#include <stdexcept>

namespace dw {

FiniteGroup::FiniteGroup(std::vector<std::vector<Elem>> table, std::string name)
    : n_(table.size()), name_(std::move(name)) {
    if (n_ == 0) throw std::invalid_argument("group: empty table");
    table_.resize(n_ * n_);
    for (std::size_t a = 0; a < n_; ++a) {
        if (table[a].size() != n_) throw std::invalid_argument("group: table not square");
        for (std::size_t b = 0; b < n_; ++b) {
            if (table[a][b] >= n_) throw std::invalid_argument("group: entry out of range");
            table_[a * n_ + b] = table[a][b];
        }
    }
    for (Elem a = 0; a < n_; ++a)
        if (mul(0, a) != a || mul(a, 0) != a)
            throw std::invalid_argument("group: index 0 is not the identity");
    inv_.assign(n_, 0);
    for (Elem a = 0; a < n_; ++a) {
        bool found = false;
        for (Elem b = 0; b < n_; ++b)
            if (mul(a, b) == 0 && mul(b, a) == 0) {
                inv_[a] = b;
                found = true;
                break;
            }
        if (!found) throw std::invalid_argument("group: missing inverse");
    }
    for (Elem a = 0; a < n_; ++a)
        for (Elem b = 0; b < n_; ++b)
            for (Elem c = 0; c < n_; ++c)
                if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                    throw std::invalid_argument("group: not associative");
    orders_.assign(n_, 1);
    for (Elem a = 0; a < n_; ++a) {
        Elem x = a;
        unsigned k = 1;
        while (x != 0) {
            x = mul(x, a);
            ++k;
        }
        orders_[a] = k;
    }
}

bool FiniteGroup::is_abelian() const {
    for (Elem a = 0; a < n_; ++a)
        for (Elem b = 0; b < n_; ++b)
            if (mul(a, b) != mul(b, a)) return false;
    return true;
}

std::size_t FiniteGroup::count_of_order(unsigned k) const {
    std::size_t c = 0;
    for (unsigned o : orders_)
        if (o == k) ++c;
    return c;
}

GroupPtr FiniteGroup::trivial() {
    return cyclic(1);
}

GroupPtr FiniteGroup::cyclic(unsigned n) {
    std::vector<std::vector<Elem>> t(n, std::vector<Elem>(n));
    for (unsigned a = 0; a < n; ++a)
        for (unsigned b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    return std::make_shared<FiniteGroup>(std::move(t), "C" + std::to_string(n));
}

GroupPtr FiniteGroup::dihedral(unsigned m) {
    // r^i s^j * r^k s^l = r^(i + (-1)^j k) s^(j + l)
    unsigned n = 2 * m;
    std::vector<std::vector<Elem>> t(n, std::vector<Elem>(n));
    for (unsigned x = 0; x < n; ++x)
        for (unsigned y = 0; y < n; ++y) {
            unsigned i = x % m, j = x / m, k = y % m, l = y / m;
            unsigned ni = j ? (i + m - k) % m : (i + k) % m;
            t[x][y] = ni + m * ((j + l) % 2);
        }
    return std::make_shared<FiniteGroup>(std::move(t), "D" + std::to_string(m));
}

GroupPtr FiniteGroup::quaternion() {
    // Elements ±1, ±i, ±j, ±k encoded as sign*4 + unit with unit 0..3 = 1,i,j,k.
    // unit products: table of (unit, sign).
    static const int prod[4][4][2] = {
        {{0, 0}, {1, 0}, {2, 0}, {3, 0}},
        {{1, 0}, {0, 1}, {3, 0}, {2, 1}},
        {{2, 0}, {3, 1}, {0, 1}, {1, 0}},
        {{3, 0}, {2, 0}, {1, 1}, {0, 1}},
    };
    std::vector<std::vector<Elem>> t(8, std::vector<Elem>(8));
    for (unsigned x = 0; x < 8; ++x)
        for (unsigned y = 0; y < 8; ++y) {
            unsigned ux = x % 4, sx = x / 4, uy = y % 4, sy = y / 4;
            unsigned u = prod[ux][uy][0];
            unsigned s = (sx + sy + prod[ux][uy][1]) % 2;
            t[x][y] = u + 4 * s;
        }
    return std::make_shared<FiniteGroup>(std::move(t), "Q8");
}

GroupPtr FiniteGroup::elementary_abelian(unsigned rank) {
    unsigned n = 1u << rank;
    std::vector<std::vector<Elem>> t(n, std::vector<Elem>(n));
    for (unsigned a = 0; a < n; ++a)
        for (unsigned b = 0; b < n; ++b) t[a][b] = a ^ b;
    return std::make_shared<FiniteGroup>(std::move(t), "C2^" + std::to_string(rank));
}

GroupPtr FiniteGroup::product(const FiniteGroup& g, const FiniteGroup& h) {
    std::size_t a = g.order(), b = h.order(), n = a * b;
    std::vector<std::vector<Elem>> t(n, std::vector<Elem>(n));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            t[x][y] = static_cast<Elem>(g.mul(x % a, y % a) + a * h.mul(x / a, y / a));
    return std::make_shared<FiniteGroup>(std::move(t), g.name() + "x" + h.name());
}

std::vector<GroupPtr> FiniteGroup::catalog(unsigned max_order) {
    if (max_order > 8) throw std::invalid_argument("catalog: order > 8 not tabulated");
    std::vector<GroupPtr> out;
    for (unsigned n = 1; n <= max_order; ++n) {
        out.push_back(cyclic(n));
        if (n == 4) out.push_back(elementary_abelian(2));
        if (n == 6) out.push_back(dihedral(3));
        if (n == 8) {
            out.push_back(product(*cyclic(4), *cyclic(2)));
            out.push_back(elementary_abelian(3));
            out.push_back(dihedral(4));
            out.push_back(quaternion());
        }
    }
    return out;
}

bool GroupHom::is_homomorphism() const {
    if (images.size() != source->order()) return false;
    for (auto x : images)
        if (x >= target->order()) return false;
    for (FiniteGroup::Elem a = 0; a < source->order(); ++a)
        for (FiniteGroup::Elem b = 0; b < source->order(); ++b)
            if (images[source->mul(a, b)] != target->mul(images[a], images[b])) return false;
    return true;
}

GroupHom make_hom(GroupPtr source, GroupPtr target, std::vector<FiniteGroup::Elem> images) {
    GroupHom f{std::move(source), std::move(target), std::move(images)};
    if (!f.is_homomorphism()) throw std::invalid_argument("map is not a homomorphism");
    return f;
}

GroupHom identity_hom(GroupPtr g) {
    std::vector<FiniteGroup::Elem> im(g->order());
    for (std::size_t i = 0; i < im.size(); ++i) im[i] = static_cast<FiniteGroup::Elem>(i);
    return GroupHom{g, g, std::move(im)};
}

GroupHom trivial_hom(GroupPtr source, GroupPtr target) {
    std::vector<FiniteGroup::Elem> im(source->order(), 0);
    return GroupHom{std::move(source), std::move(target), std::move(im)};
}

GroupHom compose(const GroupHom& f, const GroupHom& g) {
    if (g.target.get() != f.source.get() && g.target->order() != f.source->order())
        throw std::invalid_argument("compose: mismatched groups");
    std::vector<FiniteGroup::Elem> im(g.source->order());
    for (std::size_t x = 0; x < im.size(); ++x) im[x] = f.images[g.images[x]];
    return GroupHom{g.source, f.target, std::move(im)};
}

}  // namespace dw
