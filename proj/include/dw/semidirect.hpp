#pragma once
// Extensions A x_gamma K with product (m,l)(m',l') = (m + l.m' + gamma(l,l'), ll').

#include "dw/cochain.hpp"

namespace dw {

struct SemidirectProduct {
    GroupPtr group;     // elements (m, l) encoded as l * |A| + m
    ModulePtr base;     // A as a K-module
    GroupPtr quotient;  // K
    GroupHom k;         // (m, l) -> l
    ModulePtr pulled;   // k^*A
    Cochain a;          // (m, l) -> m, a 1-cochain in k^*A

    FiniteGroup::Elem element(GModule::Elem m, FiniteGroup::Elem l) const {
        return static_cast<FiniteGroup::Elem>(l * base->size() + m);
    }
    GModule::Elem a_part(FiniteGroup::Elem g) const { return g % base->size(); }
    FiniteGroup::Elem k_part(FiniteGroup::Elem g) const {
        return static_cast<FiniteGroup::Elem>(g / base->size());
    }
};

// gamma: normalized 2-cocycle on K with values in A.
SemidirectProduct semidirect_product(const ModulePtr& base, const Cochain& gamma);

// 1-cochain of a homomorphism-valued character: value chi(y) in the cyclic module.
Cochain character_cochain(const ModulePtr& zn, const std::vector<GModule::Elem>& values);

}  // namespace dw
