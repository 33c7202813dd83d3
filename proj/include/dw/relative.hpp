#pragma once
// Relative cochains of a group Delta with boundary groups pi_v -> Delta (mapping cone).

#include <optional>

#include "dw/cohomology.hpp"

namespace dw {

struct RelativePair {
    GroupPtr delta;
    std::vector<GroupHom> maps;  // pi_v -> delta
};

RelativePair make_relative_pair(GroupPtr delta, std::vector<GroupHom> maps);

// (alpha, beta_v) in C^i(Delta) + prod_v C^{i-1}(pi_v); betas is empty in degree 0.
struct RelativeCochain {
    unsigned degree = 0;
    Cochain alpha;
    std::vector<Cochain> betas;
    bool is_zero() const;
    bool operator==(const RelativeCochain& o) const;
    RelativeCochain operator+(const RelativeCochain& o) const;
    RelativeCochain operator-(const RelativeCochain& o) const;
    RelativeCochain scaled(long k) const;
};

class RelativeComplex {
public:
    RelativeComplex(RelativePair pair, ModulePtr module);

    const RelativePair& pair() const { return pair_; }
    const ModulePtr& module() const { return module_; }
    const ModulePtr& restricted(std::size_t v) const { return restricted_[v]; }

    RelativeCochain zero(unsigned degree) const;
    RelativeCochain make(Cochain alpha, std::vector<Cochain> betas) const;
    Cochain restrict(const Cochain& c, std::size_t v) const;

    // d(alpha, beta) = (d alpha, -alpha|pi - d beta)
    RelativeCochain differential(const RelativeCochain& rc) const;

    ZnRow to_coords(const RelativeCochain& rc) const;
    RelativeCochain from_coords(unsigned degree, const ZnRow& coords) const;
    std::size_t coord_count(unsigned degree) const;

    // rc of degree i >= 1; returns b with db = rc, or nullopt.
    std::optional<RelativeCochain> solve_coboundary(const RelativeCochain& rc) const;
    bool is_coboundary(const RelativeCochain& rc) const {
        return solve_coboundary(rc).has_value();
    }

private:
    RelativePair pair_;
    ModulePtr module_;
    std::vector<ModulePtr> restricted_;
};

// (alpha, beta) u gamma = (alpha u gamma, beta u gamma|pi), into `dst`.
RelativeCochain relative_cup(const RelativeComplex& src, const RelativeCochain& rc,
                             const Cochain& gamma, const Pairing& p, const RelativeComplex& dst);
// gamma u (alpha, beta) = (gamma u alpha, (-1)^j gamma|pi u beta)
RelativeCochain relative_cup(const Cochain& gamma, const RelativeComplex& src,
                             const RelativeCochain& rc, const Pairing& p,
                             const RelativeComplex& dst);

}  // namespace dw
