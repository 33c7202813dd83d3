#include "dw/semidirect.hpp"

namespace dw {

SemidirectProduct semidirect_product(const ModulePtr& base, const Cochain& gamma) {
    if (gamma.degree() != 2 || !gamma.module()->same_underlying(*base) ||
        gamma.group()->order() != base->group()->order())
        throw std::invalid_argument("semidirect_product: gamma must be a 2-cochain in A");
    if (!differential(gamma).is_zero())
        throw std::invalid_argument("semidirect_product: gamma is not a cocycle");
    const GroupPtr& K = base->group();
    const std::size_t na = base->size(), nk = K->order(), n = na * nk;
    std::vector<std::vector<FiniteGroup::Elem>> t(n, std::vector<FiniteGroup::Elem>(n));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            auto m = static_cast<GModule::Elem>(x % na), mp = static_cast<GModule::Elem>(y % na);
            auto l = static_cast<FiniteGroup::Elem>(x / na), lp = static_cast<FiniteGroup::Elem>(y / na);
            GModule::Elem s = base->add(base->add(m, base->act(l, mp)), gamma({l, lp}));
            t[x][y] = static_cast<FiniteGroup::Elem>(K->mul(l, lp) * na + s);
        }
    SemidirectProduct sp{std::make_shared<FiniteGroup>(std::move(t), "ext"), base, K,
                         GroupHom{}, nullptr, Cochain(base, 0)};
    std::vector<FiniteGroup::Elem> kim(n);
    for (std::size_t x = 0; x < n; ++x) kim[x] = static_cast<FiniteGroup::Elem>(x / na);
    sp.k = make_hom(sp.group, K, std::move(kim));
    sp.pulled = base->restrict_along(sp.k);
    sp.a = Cochain::from_function(sp.pulled, 1, [&](const FiniteGroup::Elem* y) {
        return static_cast<GModule::Elem>(y[0] % na);
    });
    // da = -k^* gamma
    Cochain lhs = differential(sp.a);
    Cochain rhs = -pullback(gamma, sp.k, sp.pulled);
    if (lhs != rhs) throw std::logic_error("semidirect_product: da != -k^*gamma");
    return sp;
}

Cochain character_cochain(const ModulePtr& zn, const std::vector<GModule::Elem>& values) {
    if (values.size() != zn->group()->order() || values[0] != 0)
        throw std::invalid_argument("character_cochain: bad value table");
    return Cochain::from_function(zn, 1, [&](const FiniteGroup::Elem* y) { return values[y[0]]; });
}

}  // namespace dw
