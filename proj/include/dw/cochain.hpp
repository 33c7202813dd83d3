#pragma once
// Normalized inhomogeneous cochains on finite groups.

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "dw/gmodule.hpp"
#include "dw/zn_linalg.hpp"

namespace dw {

struct SizeGuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Maximum number of table entries (tuples times module rank) in a cochain space.
std::size_t cochain_guard();
void set_cochain_guard(std::size_t entries);

// Values are stored for tuples of non-identity elements only; a tuple
// (y1..yi) maps to sum (y_k - 1) (g-1)^(i-k).
class Cochain {
public:
    using GElem = FiniteGroup::Elem;
    using MElem = GModule::Elem;

    Cochain() = default;  // empty placeholder, not usable until assigned
    Cochain(ModulePtr module, unsigned degree);
    static Cochain constant(ModulePtr module, MElem value);
    static Cochain from_function(ModulePtr module, unsigned degree,
                                 const std::function<MElem(const GElem*)>& f);

    unsigned degree() const { return degree_; }
    const ModulePtr& module() const { return module_; }
    const GroupPtr& group() const { return module_->group(); }
    std::size_t size() const { return vals_.size(); }

    MElem operator()(std::initializer_list<GElem> args) const;
    MElem at(const GElem* args) const;
    MElem value(std::size_t idx) const { return vals_[idx]; }
    void set(std::size_t idx, MElem v) { vals_[idx] = v; }
    void set_at(const GElem* args, MElem v);
    void decode(std::size_t idx, GElem* args) const;

    bool is_zero() const;
    bool operator==(const Cochain& o) const;
    bool operator!=(const Cochain& o) const { return !(*this == o); }
    Cochain operator+(const Cochain& o) const;
    Cochain operator-(const Cochain& o) const;
    Cochain operator-() const;
    Cochain scaled(long k) const;

    // Flat coordinates: tuple-major, module coordinate minor, each mod its factor order.
    ZnRow to_coords() const;
    static Cochain from_coords(ModulePtr module, unsigned degree, const ZnRow& coords);
    static std::size_t tuple_count(std::size_t group_order, unsigned degree);

private:
    void check_compatible(const Cochain& o) const;
    ModulePtr module_;
    unsigned degree_ = 0;
    std::size_t base_ = 0;
    std::vector<MElem> vals_;
};

Cochain differential(const Cochain& c, Exec exec = Exec::parallel);
// (c u c')(y) = P(c(y1..yi), (y1...yi).c'(y_{i+1}..)); result in `out` (defaults to P.out).
Cochain cup(const Cochain& c, const Cochain& c2, const Pairing& p, ModulePtr out = nullptr);
// Pullback along f: source -> group(c); coefficients become `restricted`
// (defaults to module restricted along f).
Cochain pullback(const Cochain& c, const GroupHom& f, ModulePtr restricted = nullptr);
// (ad_g^* c)(y1..yi) = c(g y1 g^-1, ..., g yi g^-1)
Cochain ad_pullback(const Cochain& c, FiniteGroup::Elem g);
// c.g = g^-1 . ad_g^* c
Cochain right_action(const Cochain& c, FiniteGroup::Elem g);
// h_g(c)(y1..yi) = sum_k (-1)^k c(y1..yk, g^-1, ad_g y_{k+1}, .., ad_g yi)
Cochain chain_homotopy_hg(FiniteGroup::Elem g, const Cochain& c);
// Apply a coefficient homomorphism value-wise.
Cochain map_values(const Cochain& c, ModulePtr target,
                   const std::function<GModule::Elem(GModule::Elem)>& f);

}  // namespace dw
