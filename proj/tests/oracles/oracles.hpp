#pragma once
// Brute-force reference implementations for tests. They read group tables and module
// actions but share no algorithms with the library.

#include <cstdint>
#include <string>
#include <vector>

#include "dw/finite_group.hpp"
#include "dw/gmodule.hpp"

namespace oracle {

// One line per compared instance, printed to the test log.
struct OracleReport {
    std::string oracle, instance, oracle_value, main_value;
    bool agree() const { return oracle_value == main_value; }
    std::string line() const;
};

// log_p #H^i from unrestricted cochains G^i -> Z/p^e, where the module is cyclic of
// prime-power order and g acts by multiplication with the unit act(g, 1).
unsigned full_cochain_cohomology_log(const dw::FiniteGroup& g, const dw::GModule& m,
                                     unsigned degree);
// Order of the cyclic module's p (prime) and exponent e.
void prime_power(std::uint32_t n, std::uint32_t& p, unsigned& e);

// Count of reduced primitive forms (a, b, c), b^2 - 4ac = d < 0.
long form_class_number(long d);

// #hom(delta, g) by extending generator images.
std::size_t hom_enumeration(const dw::FiniteGroup& delta, const dw::FiniteGroup& g);

// Is a a square mod the odd prime q (Euler criterion), a prime to q.
bool euler_square(long a, long q);

// Does the residue field of a prime of Q(sqrt d) over q split x^2 - m (q odd, q prime to m)
// or x^2 - x - (m-1)/4 (q = 2)? The field is F_q or F_{q^2} as decided by the caller.
bool splits_in_residue_field(long m, long d, long q, bool degree_two);

}  // namespace oracle
