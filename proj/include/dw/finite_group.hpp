#pragma once
// Finite groups as multiplication tables over canonical indices (0 = identity).

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace dw {

class FiniteGroup {
public:
    using Elem = std::uint32_t;

    // Validates closure, identity at index 0, inverses and associativity.
    FiniteGroup(std::vector<std::vector<Elem>> table, std::string name = "");

    std::size_t order() const { return n_; }
    Elem mul(Elem a, Elem b) const { return table_[a * n_ + b]; }
    Elem inv(Elem a) const { return inv_[a]; }
    Elem conj(Elem g, Elem y) const { return mul(mul(g, y), inv_[g]); }  // g y g^-1
    unsigned elem_order(Elem a) const { return orders_[a]; }
    const std::string& name() const { return name_; }
    bool is_abelian() const;
    std::size_t count_of_order(unsigned k) const;

    static std::shared_ptr<const FiniteGroup> trivial();
    static std::shared_ptr<const FiniteGroup> cyclic(unsigned n);
    // Order 2m, elements r^i s^j encoded as i + m*j.
    static std::shared_ptr<const FiniteGroup> dihedral(unsigned m);
    static std::shared_ptr<const FiniteGroup> quaternion();
    static std::shared_ptr<const FiniteGroup> elementary_abelian(unsigned rank);
    // (a, b) encoded as a + |G| * b.
    static std::shared_ptr<const FiniteGroup> product(const FiniteGroup& g, const FiniteGroup& h);
    // All groups of order <= max_order up to isomorphism (max_order <= 8).
    static std::vector<std::shared_ptr<const FiniteGroup>> catalog(unsigned max_order);

private:
    std::size_t n_;
    std::vector<Elem> table_;
    std::vector<Elem> inv_;
    std::vector<unsigned> orders_;
    std::string name_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

// A map between groups given by images of every element.
struct GroupHom {
    GroupPtr source;
    GroupPtr target;
    std::vector<FiniteGroup::Elem> images;

    FiniteGroup::Elem operator()(FiniteGroup::Elem x) const { return images[x]; }
    bool is_homomorphism() const;
};

GroupHom make_hom(GroupPtr source, GroupPtr target, std::vector<FiniteGroup::Elem> images);
GroupHom identity_hom(GroupPtr g);
GroupHom trivial_hom(GroupPtr source, GroupPtr target);
GroupHom compose(const GroupHom& f, const GroupHom& g);  // f after g

}  // namespace dw
