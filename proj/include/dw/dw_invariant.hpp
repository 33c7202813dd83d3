#pragma once
// Dijkgraaf-Witten invariants of X = spec O_F for the monomial duality presets:
// Z^omega through the sum over sigma: cl(F)/2 -> K, Z^omega_hat through the
// character sum over t_hat: cl(F)/2 -> G_hat.

#include <gmpxx.h>

#include <string>
#include <vector>

#include "dw/duality.hpp"
#include "dw/etale.hpp"

namespace dw {

struct PresetViolation : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Checks n = 2, A = Z/2 trivial, K elementary abelian, e = 0, gamma_hat = 0 and that
// gamma and omega_hat agree with their monomial lists. Returns s with K = (Z/2)^s.
unsigned check_preset(const DualityPreset& preset);

// sigma: cl(F)/2 -> (Z/2)^s as s rows over the x-basis, index = row-major bits.
std::vector<H1Class> hom_from_index(std::uint64_t index, unsigned s, unsigned dim);

mpq_class z_omega(const Etale& X, const DualityPreset& preset, Exec exec = Exec::parallel);
mpq_class z_omega_hat(const Etale& X, const DualityPreset& preset, Exec exec = Exec::parallel);

struct InvariantReport {
    FieldSpec spec;
    std::string group;
    mpq_class z_omega, z_omega_hat;
    bool equal = false;
    bool linking_symmetric = false;
    std::vector<std::uint8_t> sigma_vanishes;  // per sigma, row-major index order
    bool hypotheses_hold = false;
    std::size_t hypothesis_failures = 0;  // sigma with [sigma^* gamma] in H^1^perp \ {0}
    bool ratio_condition = true;          // automatic for Z/2 coefficients
    mpz_class torsor_count;
    bool observation_checked = false;     // d4: equality expected without the hypotheses
    bool observation_violated = false;
};

struct EqualityViolation : std::logic_error {
    using std::logic_error::logic_error;
};

// Throws EqualityViolation when the hypotheses hold but the invariants differ.
InvariantReport duality_verdict(const Etale& X, const DualityPreset& preset, Exec exec = Exec::parallel);

// #hom(pi_1 X, G) = #G * Z^omega.
mpz_class torsor_count(const Etale& X, const DualityPreset& preset, Exec exec = Exec::parallel);

// Sum over orbits of 1/#stabilizer; throws unless the orbit sizes add up to set_size.
mpq_class groupoid_mass(std::size_t set_size, std::size_t group_order,
                        const std::vector<std::size_t>& stabilizer_sizes);

}  // namespace dw
