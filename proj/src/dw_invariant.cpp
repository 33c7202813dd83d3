#include "dw/dw_invariant.hpp"

#include <omp.h>

namespace dw {

unsigned check_preset(const DualityPreset& preset) {
    const DualityData& dd = preset.data;
    if (dd.n != 2) throw PresetViolation("preset: coefficients must be Z/2");
    if (dd.A->size() != 2 || !dd.A->is_trivial_action()) throw PresetViolation("preset: A must be Z/2 with trivial action");
    const std::size_t k = dd.K->order();
    unsigned s = 0;
    while ((std::size_t(1) << s) < k) ++s;
    if ((std::size_t(1) << s) != k || !dd.K->is_abelian()) throw PresetViolation("preset: K must be elementary abelian");
    for (std::size_t g = 0; g < k; ++g)
        if (dd.K->elem_order(static_cast<FiniteGroup::Elem>(g)) > 2)
            throw PresetViolation("preset: K must be elementary abelian");
    if (!dd.e.is_zero()) throw PresetViolation("preset: e must vanish");
    if (!dd.gamma_hat.is_zero()) throw PresetViolation("preset: gamma_hat must vanish");
    std::vector<std::vector<unsigned>> gm;
    for (const auto& m : preset.gamma_monomials) {
        if (m[0] >= s || m[1] >= s) throw PresetViolation("preset: gamma monomial out of range");
        gm.push_back({m[0], m[1]});
    }
    if (cup_monomial_sum(dd.A, s, gm, 2) != dd.gamma)
        throw PresetViolation("preset: gamma is not the sum of its monomials");
    for (const auto& m : preset.omega_hat_monomials)
        for (unsigned c : m)
            if (c > s) throw PresetViolation("preset: omega_hat monomial out of range");
    return s;
}

std::vector<H1Class> hom_from_index(std::uint64_t index, unsigned s, unsigned dim) {
    std::vector<H1Class> rows(s);
    const std::uint64_t mask = dim ? (std::uint64_t(1) << dim) - 1 : 0;
    for (unsigned a = 0; a < s; ++a) rows[a].bits = static_cast<std::uint32_t>((index >> (a * dim)) & mask);
    return rows;
}

namespace {

void warm(const Etale& X) {
    if (X.dim()) (void)X.tensor().at(0, 0, 0);
}

std::uint64_t hom_count(unsigned s, unsigned dim) {
    if (std::uint64_t(s) * dim >= 48) throw std::invalid_argument("too many homomorphisms to enumerate");
    return std::uint64_t(1) << (s * dim);
}

struct SigmaScan {
    std::vector<std::uint8_t> vanishes, perp_fails;
};

SigmaScan scan_sigma(const Etale& X, const DualityPreset& preset, unsigned s, Exec exec) {
    warm(X);
    const std::uint64_t N = hom_count(s, X.dim());
    SigmaScan out{std::vector<std::uint8_t>(N), std::vector<std::uint8_t>(N)};
    auto one = [&](std::uint64_t t) {
        H2Class u = X.pullback(preset.gamma_monomials, hom_from_index(t, s, X.dim()));
        out.vanishes[t] = u.is_zero();
        out.perp_fails[t] = !perp_condition(X, u).holds;
    };
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (long long t = 0; t < static_cast<long long>(N); ++t) one(static_cast<std::uint64_t>(t));
    } else {
        for (std::uint64_t t = 0; t < N; ++t) one(t);
    }
    return out;
}

mpq_class z_from_scan(const Etale& X, const DualityPreset& preset, const SigmaScan& sc) {
    std::uint64_t count = 0;
    for (auto v : sc.vanishes) count += v;
    // #Z^1(pi_1 X, Z/2) = #H^1 = 2^(r-1)
    mpz_class z1 = 1;
    z1 <<= X.dim();
    mpq_class z(mpz_class(static_cast<unsigned long>(count)) * z1,
                mpz_class(static_cast<unsigned long>(preset.data.G.group->order())));
    z.canonicalize();
    return z;
}

}  // namespace

mpq_class z_omega(const Etale& X, const DualityPreset& preset, Exec exec) {
    unsigned s = check_preset(preset);
    return z_from_scan(X, preset, scan_sigma(X, preset, s, exec));
}

mpq_class z_omega_hat(const Etale& X, const DualityPreset& preset, Exec exec) {
    const unsigned s = check_preset(preset) + 1;
    warm(X);
    const std::uint64_t N = hom_count(s, X.dim());
    const auto& mono = preset.omega_hat_monomials;
    auto sign = [&](std::uint64_t t) -> long long {
        auto th = hom_from_index(t, s, X.dim());
        int e = 0;
        for (const auto& m : mono) e ^= X.triple_cup_trace(th[m[0]], th[m[1]], th[m[2]]);
        return e ? -1 : 1;
    };
    long long sum = 0;
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static) reduction(+ : sum)
        for (long long t = 0; t < static_cast<long long>(N); ++t) sum += sign(static_cast<std::uint64_t>(t));
    } else {
        for (std::uint64_t t = 0; t < N; ++t) sum += sign(t);
    }
    mpq_class z(mpz_class(static_cast<long>(sum)),
                mpz_class(static_cast<unsigned long>(preset.data.G_hat.group->order())));
    z.canonicalize();
    return z;
}

mpz_class torsor_count(const Etale& X, const DualityPreset& preset, Exec exec) {
    mpq_class c = z_omega(X, preset, exec) * mpz_class(static_cast<unsigned long>(preset.data.G.group->order()));
    if (c.get_den() != 1 || c < 0) throw std::logic_error("torsor count is not a non-negative integer");
    return c.get_num();
}

InvariantReport duality_verdict(const Etale& X, const DualityPreset& preset, Exec exec) {
    const unsigned s = check_preset(preset);
    InvariantReport rep;
    rep.spec = X.field();
    rep.group = preset.name;
    rep.linking_symmetric = X.linking_symmetric();
    SigmaScan sc = scan_sigma(X, preset, s, exec);
    rep.z_omega = z_from_scan(X, preset, sc);
    rep.z_omega_hat = z_omega_hat(X, preset, exec);
    rep.sigma_vanishes = sc.vanishes;
    for (auto v : sc.perp_fails) rep.hypothesis_failures += v;
    rep.hypotheses_hold = rep.hypothesis_failures == 0 && rep.ratio_condition;
    rep.equal = rep.z_omega == rep.z_omega_hat;
    mpq_class tc = rep.z_omega * mpz_class(static_cast<unsigned long>(preset.data.G.group->order()));
    if (tc.get_den() != 1) throw std::logic_error("torsor count is not an integer");
    rep.torsor_count = tc.get_num();
    if (preset.name == "d4") {
        rep.observation_checked = true;
        rep.observation_violated = !rep.equal;
    }
    if (rep.hypotheses_hold && !rep.equal)
        throw EqualityViolation("invariants differ although the duality hypotheses hold at " +
                                X.field().to_string() + " (" + preset.name + ")");
    return rep;
}

mpq_class groupoid_mass(std::size_t set_size, std::size_t group_order,
                        const std::vector<std::size_t>& stabilizer_sizes) {
    if (group_order == 0) throw std::invalid_argument("groupoid mass: empty group");
    mpq_class mass = 0;
    std::size_t covered = 0;
    for (std::size_t st : stabilizer_sizes) {
        if (st == 0 || group_order % st) throw std::invalid_argument("groupoid mass: stabilizer order must divide #G");
        covered += group_order / st;
        mass += mpq_class(1, static_cast<unsigned long>(st));
    }
    if (covered != set_size) throw std::invalid_argument("groupoid mass: orbit sizes do not add up to #S");
    mass.canonicalize();
    mpq_class want(static_cast<unsigned long>(set_size), static_cast<unsigned long>(group_order));
    want.canonicalize();
    if (mass != want)
        throw std::logic_error("groupoid mass: orbit-stabilizer identity fails");
    return mass;
}

}  // namespace dw
