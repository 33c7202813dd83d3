#include "dw/duality.hpp"

#include <set>

namespace dw {

DualityData build_duality_data(std::uint32_t n, GroupPtr K, ModulePtr A, const Cochain& gamma,
                               const Cochain& gamma_hat, const Cochain& e) {
    DualityData dd;
    dd.n = n;
    dd.K = K;
    dd.A = A;
    if (A->torsion() != n || A->group()->order() != K->order())
        throw std::invalid_argument("duality data: A must be an n-torsion K-module");
    dd.A_dual = A->dual();
    dd.Zn = GModule::trivial_cyclic(K, n);
    dd.gamma = gamma;
    dd.gamma_hat = gamma_hat;
    dd.e = e;
    if (gamma.degree() != 2 || gamma_hat.degree() != 2 || e.degree() != 3)
        throw std::invalid_argument("duality data: wrong degrees");
    if (!gamma_hat.module()->same_underlying(*dd.A_dual) ||
        !e.module()->same_underlying(*dd.Zn))
        throw std::invalid_argument("duality data: coefficient mismatch");
    dd.pairing = evaluation_pairing(A, dd.A_dual, dd.Zn);
    Cochain gg = cup(gamma, gamma_hat, dd.pairing, dd.Zn);
    if (differential(e) != gg) throw std::invalid_argument("duality data: de != gamma u gamma_hat");
    dd.G = semidirect_product(A, gamma);
    dd.G_hat = semidirect_product(dd.A_dual, gamma_hat);
    dd.Zn_G = GModule::trivial_cyclic(dd.G.group, n);
    dd.Zn_G_hat = GModule::trivial_cyclic(dd.G_hat.group, n);

    Cochain kgh = pullback(gamma_hat, dd.G.k);
    dd.omega = pullback(e, dd.G.k, dd.Zn_G) + cup(dd.G.a, kgh, dd.pairing, dd.Zn_G);
    Cochain kg = pullback(gamma, dd.G_hat.k);
    dd.omega_hat =
        pullback(e, dd.G_hat.k, dd.Zn_G_hat) + cup(kg, dd.G_hat.a, dd.pairing, dd.Zn_G_hat);
    if (!differential(dd.omega).is_zero()) throw std::logic_error("duality data: d(omega) != 0");
    if (!differential(dd.omega_hat).is_zero())
        throw std::logic_error("duality data: d(omega_hat) != 0");
    return dd;
}

Cochain cup_monomial_sum(const ModulePtr& z2, unsigned rank,
                         const std::vector<std::vector<unsigned>>& monomials, unsigned degree) {
    const GroupPtr& g = z2->group();
    if (g->order() != (std::size_t(1) << rank))
        throw std::invalid_argument("cup_monomial_sum: group is not (Z/2)^rank");
    Cochain out(z2, degree);
    for (const auto& mono : monomials) {
        if (mono.size() != degree) throw std::invalid_argument("cup_monomial_sum: degree mismatch");
        for (std::size_t idx = 0; idx < out.size(); ++idx) {
            std::vector<FiniteGroup::Elem> y(degree);
            out.decode(idx, y.data());
            GModule::Elem v = 1;
            for (unsigned k = 0; k < degree; ++k) v &= (y[k] >> mono[k]) & 1u;
            out.set(idx, out.value(idx) ^ v);
        }
    }
    return out;
}

namespace {

DualityPreset make_preset(const std::string& name, std::vector<std::array<unsigned, 2>> gm,
                          std::vector<std::array<unsigned, 3>> om) {
    auto K = FiniteGroup::elementary_abelian(2);
    auto A = GModule::trivial_cyclic(K, 2);
    std::vector<std::vector<unsigned>> gmv;
    for (auto& m : gm) gmv.push_back({m[0], m[1]});
    Cochain gamma = cup_monomial_sum(A, 2, gmv, 2);
    DualityData dd = build_duality_data(2, K, A, gamma, Cochain(A->dual(), 2),
                                        Cochain(GModule::trivial_cyclic(K, 2), 3));
    // The dual extension is split and abelian: (m_hat, l) with index 2l + m_hat, so
    // character bits 0,1 are x,y of K and bit 2 is a_hat. Re-encode to bit order.
    // Element 2l + m_hat has bits (m_hat, l0, l1); character x is bit 1 etc.
    std::vector<std::vector<unsigned>> omv;
    for (auto& m : om) omv.push_back({m[0], m[1], m[2]});
    // Map character index c (0 = x, 1 = y, 2 = a_hat) to bit position in G_hat indices.
    auto bit_of = [](unsigned c) { return c == 2 ? 0u : c + 1; };
    for (auto& m : omv)
        for (auto& c : m) c = bit_of(c);
    Cochain expect = cup_monomial_sum(dd.Zn_G_hat, 3, omv, 3);
    if (expect != dd.omega_hat) throw std::logic_error("preset: omega_hat monomials mismatch");
    return DualityPreset{name, std::move(dd), std::move(gm), std::move(om)};
}

}  // namespace

DualityPreset q8_preset() {
    return make_preset("q8", {{0, 1}, {0, 0}, {1, 1}}, {{0, 1, 2}, {0, 0, 2}, {1, 1, 2}});
}

DualityPreset d4_preset() {
    return make_preset("d4", {{0, 1}}, {{0, 1, 2}});
}

DualityPreset preset_by_name(const std::string& name) {
    if (name == "q8") return q8_preset();
    if (name == "d4") return d4_preset();
    throw std::invalid_argument("unknown group preset: " + name);
}

bool hg_closed_form_check(const DualityData& dd, GModule::Elem m) {
    const auto& G = dd.G;
    FiniteGroup::Elem g = G.element(m, 0);
    Cochain lhs = chain_homotopy_hg(g, dd.omega);
    Cochain mc = Cochain::constant(G.pulled, m);
    Cochain rhs = -cup(mc, pullback(dd.gamma_hat, G.k), dd.pairing, dd.Zn_G);
    return lhs == rhs;
}

bool hg_closed_form_check_dual(const DualityData& dd, GModule::Elem m_hat) {
    const auto& G = dd.G_hat;
    FiniteGroup::Elem g = G.element(m_hat, 0);
    Cochain lhs = chain_homotopy_hg(g, dd.omega_hat);
    Cochain mc = Cochain::constant(G.pulled, m_hat);
    Cochain rhs = -cup(pullback(dd.gamma, G.k), mc, dd.pairing, dd.Zn_G_hat);
    return lhs == rhs;
}

std::vector<GroupHom> enumerate_lifts(const GroupHom& sigma, const SemidirectProduct& ext,
                                      const Cochain& gamma) {
    if (sigma.target->order() != ext.quotient->order())
        throw std::invalid_argument("enumerate_lifts: sigma must map to K");
    ModulePtr sa = ext.base->restrict_along(sigma);
    Cochain sg = pullback(gamma, sigma, sa);
    std::vector<GroupHom> out;
    std::optional<Cochain> b0 = CoboundarySolver(sa, 2, Exec::serial).solve(sg);
    if (!b0) return out;
    // All of Z^1: close the span of the cocycle generators.
    std::vector<Cochain> gens = cocycle_generators(sa, 1, Exec::serial);
    std::set<ZnRow> seen;
    std::vector<Cochain> z1{Cochain(sa, 1)};
    seen.insert(z1[0].to_coords());
    for (std::size_t i = 0; i < z1.size(); ++i)
        for (const auto& g : gens) {
            Cochain c = z1[i] + g;
            if (seen.insert(c.to_coords()).second) z1.push_back(std::move(c));
        }
    for (const auto& z : z1) {
        Cochain b = *b0 + z;
        std::vector<FiniteGroup::Elem> img(sigma.source->order());
        for (FiniteGroup::Elem y = 0; y < img.size(); ++y) {
            GModule::Elem bv = y == 0 ? 0 : b({y});
            img[y] = ext.element(ext.base->neg(bv), sigma(y));
        }
        out.push_back(make_hom(sigma.source, ext.group, std::move(img)));
    }
    return out;
}

}  // namespace dw
