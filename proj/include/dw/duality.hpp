#pragma once
// Duality data (n, K, A, gamma, gamma_hat, e) and the derived 3-cocycles omega, omega_hat.

#include <array>
#include <string>

#include "dw/cohomology.hpp"
#include "dw/semidirect.hpp"

namespace dw {

struct DualityData {
    std::uint32_t n = 2;
    GroupPtr K;
    ModulePtr A, A_dual, Zn;  // Zn: trivial Z/n over K
    Cochain gamma, gamma_hat, e;
    Pairing pairing;          // A x A^ -> Z/n
    SemidirectProduct G, G_hat;
    ModulePtr Zn_G, Zn_G_hat;
    Cochain omega, omega_hat;
};

// Requires de = gamma u gamma_hat; checks d(omega) = d(omega_hat) = 0.
DualityData build_duality_data(std::uint32_t n, GroupPtr K, ModulePtr A, const Cochain& gamma,
                               const Cochain& gamma_hat, const Cochain& e);

// Monomial presentation over K = (Z/2)^s with A = Z/2 trivial: gamma is a sum of
// x_a u x_b, omega_hat a sum of triple products of characters of G_hat = (Z/2)^(s+1),
// where index s is the character a_hat.
struct DualityPreset {
    std::string name;
    DualityData data;
    std::vector<std::array<unsigned, 2>> gamma_monomials;
    std::vector<std::array<unsigned, 3>> omega_hat_monomials;
};

DualityPreset q8_preset();
DualityPreset d4_preset();
DualityPreset preset_by_name(const std::string& name);  // "q8" | "d4"

// Cochain sum of cup monomials in the coordinate characters of (Z/2)^s, with s = rank.
Cochain cup_monomial_sum(const ModulePtr& z2, unsigned rank,
                         const std::vector<std::vector<unsigned>>& monomials, unsigned degree);

// h_g(omega) = -m u k^*gamma_hat for g = (m, 1).
bool hg_closed_form_check(const DualityData& data, GModule::Elem m);
// h_g(omega_hat) = -k_hat^*gamma u m_hat for g = (m_hat, 1).
bool hg_closed_form_check_dual(const DualityData& data, GModule::Elem m_hat);

// Homomorphisms tau: Delta -> G with k tau = sigma, as (-b, sigma) for db = sigma^*gamma.
std::vector<GroupHom> enumerate_lifts(const GroupHom& sigma, const SemidirectProduct& ext,
                                      const Cochain& gamma);

}  // namespace dw
