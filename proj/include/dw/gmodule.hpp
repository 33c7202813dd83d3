#pragma once
// Finite Z/n-modules with a group action, presented as products of cyclic groups.

#include <cstdint>
#include <memory>
#include <vector>

#include "dw/finite_group.hpp"

namespace dw {

class GModule;
using ModulePtr = std::shared_ptr<const GModule>;

class GModule {
public:
    using Elem = std::uint32_t;

    // Elements are mixed-radix indices, coordinate 0 least significant.
    // action[g][a] is the index of g.a.
    GModule(GroupPtr group, std::vector<std::uint32_t> orders, std::uint32_t n,
            std::vector<std::vector<Elem>> action);

    static ModulePtr trivial(GroupPtr group, std::vector<std::uint32_t> orders, std::uint32_t n);
    static ModulePtr trivial_cyclic(GroupPtr group, std::uint32_t n);
    // matrices[g] maps coordinate vectors: (g.a)_i = sum_j M[i][j] a_j mod orders[i].
    static ModulePtr from_matrices(GroupPtr group, std::vector<std::uint32_t> orders,
                                   std::uint32_t n,
                                   const std::vector<std::vector<std::vector<long>>>& matrices);

    const GroupPtr& group() const { return group_; }
    std::size_t size() const { return size_; }
    std::size_t rank() const { return orders_.size(); }
    const std::vector<std::uint32_t>& orders() const { return orders_; }
    std::uint32_t torsion() const { return n_; }
    bool is_trivial_action() const;

    Elem add(Elem a, Elem b) const { return add_[a * size_ + b]; }
    Elem neg(Elem a) const { return neg_[a]; }
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
    Elem act(FiniteGroup::Elem g, Elem a) const { return act_[g * size_ + a]; }
    Elem smul(long k, Elem a) const;

    std::vector<std::uint32_t> coords(Elem a) const;
    Elem encode(const std::vector<std::uint32_t>& coords) const;
    Elem basis(std::size_t j) const;

    // Same abelian group, action pulled back along f: source -> group().
    ModulePtr restrict_along(const GroupHom& f) const;
    // Hom(A, Z/n) with (g.f)(a) = f(g^-1 a); coordinates c_j with f(e_j) = (n/n_j) c_j.
    ModulePtr dual() const;
    bool same_underlying(const GModule& other) const { return orders_ == other.orders_; }
    std::size_t fixed_point_count() const;

private:
    GroupPtr group_;
    std::vector<std::uint32_t> orders_;
    std::uint32_t n_;
    std::size_t size_;
    std::vector<Elem> add_, neg_, act_;
};

// Bilinear map L x R -> O on underlying groups.
struct Pairing {
    ModulePtr left, right, out;
    std::vector<GModule::Elem> table;

    GModule::Elem operator()(GModule::Elem a, GModule::Elem b) const {
        return table[a * right->size() + b];
    }
    bool is_bilinear() const;
    bool is_equivariant() const;
};

// Z/n x Z/n -> Z/n, (a, b) -> ab, on cyclic modules of order n.
Pairing multiplication_pairing(ModulePtr left, ModulePtr right, ModulePtr out);
// A x Hom(A, Z/n) -> Z/n.
Pairing evaluation_pairing(ModulePtr a, ModulePtr a_dual, ModulePtr zn);
// Hom(A, Z/n) x A -> Z/n.
Pairing evaluation_pairing_flipped(ModulePtr a_dual, ModulePtr a, ModulePtr zn);
// Z/n x A -> A, scalar multiplication.
Pairing scalar_pairing(ModulePtr zn, ModulePtr a);
Pairing swap_pairing(const Pairing& p);

}  // namespace dw
