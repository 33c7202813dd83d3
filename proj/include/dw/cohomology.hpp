#pragma once
// Cohomology of finite groups with coefficients in finite modules, via Howell forms over Z/n.

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "dw/cochain.hpp"

namespace dw {

struct CohomologyGroup {
    unsigned degree = 0;
    std::vector<std::uint32_t> invariant_factors;  // d1 | d2 | ..., each > 1
    std::vector<Cochain> generators;               // cocycles generating H^i
    mpz_class order() const;
};

// Rows of the matrix of d: C^i -> C^{i+1}, one row per coordinate generator of C^i.
std::vector<ZnRow> differential_rows(const ModulePtr& module, unsigned degree);
// Rows n_j e for coordinates whose factor order is below n, padded to `width`
// starting at `offset`.
std::vector<ZnRow> relation_rows(const ModulePtr& module, unsigned degree, std::size_t width,
                                 std::size_t offset);
std::size_t coord_count(const ModulePtr& module, unsigned degree);

CohomologyGroup cohomology(const ModulePtr& module, unsigned degree, Exec exec = Exec::parallel);
mpz_class cocycle_count(const ModulePtr& module, unsigned degree, Exec exec = Exec::parallel);
std::vector<Cochain> cocycle_generators(const ModulePtr& module, unsigned degree,
                                        Exec exec = Exec::parallel);

bool is_cocycle(const Cochain& c);

// Solves db = c for many right-hand sides in a fixed degree.
class CoboundarySolver {
public:
    CoboundarySolver(ModulePtr module, unsigned degree, Exec exec = Exec::parallel);
    // c must be a cocycle of the given degree; returns b with db = c if one exists.
    std::optional<Cochain> solve(const Cochain& c) const;
    bool is_coboundary(const Cochain& c) const { return solve(c).has_value(); }
    const mpz_class& coboundary_order() const { return order_; }

private:
    ModulePtr module_;
    unsigned degree_;
    Howell howell_;
    mpz_class order_;
};

std::optional<Cochain> is_coboundary(const Cochain& c, Exec exec = Exec::parallel);

// Bockstein of 0 -> Z/m -> Z/m^2 -> Z/m -> 0 on trivial cyclic coefficients:
// lift values to [0, m), take d, divide by m.
Cochain bockstein(const Cochain& c, const ModulePtr& zm2);

}  // namespace dw

namespace dw {

struct CountingIdentity {
    mpz_class z1, module_order, h0, h1;
    bool holds() const { return z1 * h0 == h1 * module_order; }
};
// #Z^1 / #A = #H^1 / #H^0.
CountingIdentity counting_identity(const ModulePtr& module);
bool counting_identity_check(const ModulePtr& module);

// prod_{i <= max_degree} #H^i^((-1)^i)
mpq_class euler_characteristic(const ModulePtr& module, unsigned max_degree);

}  // namespace dw
