#include <iostream>
#include <random>

#include "doctest.h"
#include "dw/cohomology.hpp"
#include "dw/semidirect.hpp"
#include "oracles/oracles.hpp"
#include "test_util.hpp"

using namespace dw;
using testutil::random_cochain;
using testutil::random_cocycle;

namespace {

Cochain char_x(const ModulePtr& z2) {
    return character_cochain(z2, {0, 1, 0, 1});
}
Cochain char_y(const ModulePtr& z2) {
    return character_cochain(z2, {0, 0, 1, 1});
}

}  // namespace

TEST_CASE("zero cochain has zero differential") {
    auto g = FiniteGroup::dihedral(3);
    auto m = GModule::trivial_cyclic(g, 3);
    for (unsigned i = 0; i < 3; ++i) CHECK(differential(Cochain(m, i)).is_zero());
}

TEST_CASE("homomorphisms are 1-cocycles") {
    auto k = FiniteGroup::elementary_abelian(2);
    auto z2 = GModule::trivial_cyclic(k, 2);
    CHECK(differential(char_x(z2)).is_zero());
    CHECK(differential(char_y(z2)).is_zero());
}

TEST_CASE("d^2 = 0 on every Z/2-cochain of degree <= 2 on (Z/2)^2") {
    auto k = FiniteGroup::elementary_abelian(2);
    auto z2 = GModule::trivial_cyclic(k, 2);
    for (unsigned deg = 0; deg <= 2; ++deg) {
        Cochain c(z2, deg);
        const std::size_t s = c.size();
        for (std::size_t mask = 0; mask < (std::size_t(1) << s); ++mask) {
            for (std::size_t t = 0; t < s; ++t) c.set(t, (mask >> t) & 1u);
            REQUIRE(differential(differential(c)).is_zero());
        }
    }
}

TEST_CASE("d^2 = 0 and serial/parallel agreement on small groups") {
    std::mt19937_64 rng(11);
    for (const auto& g : FiniteGroup::catalog(8))
        for (std::uint32_t n : {2u, 3u, 4u})
            for (const auto& m : testutil::test_modules(g, n))
                for (unsigned deg = 0; deg <= 2; ++deg) {
                    Cochain c = random_cochain(m, deg, rng);
                    Cochain dc = differential(c, Exec::parallel);
                    CHECK(dc == differential(c, Exec::serial));
                    CHECK(differential(dc).is_zero());
                }
}

TEST_CASE("Leibniz rule") {
    std::mt19937_64 rng(12);
    for (const auto& g : FiniteGroup::catalog(8))
        for (std::uint32_t n : {2u, 3u, 4u}) {
            auto m = GModule::trivial_cyclic(g, n);
            Pairing p = multiplication_pairing(m, m, m);
            for (unsigned i = 0; i <= 2; ++i)
                for (unsigned j = 0; i + j <= 2; ++j) {
                    Cochain a = random_cochain(m, i, rng), b = random_cochain(m, j, rng);
                    Cochain lhs = differential(cup(a, b, p));
                    Cochain rhs = cup(differential(a), b, p) +
                                  cup(a, differential(b), p).scaled(i % 2 ? -1 : 1);
                    CHECK(lhs == rhs);
                }
        }
    // Twisted coefficients with the scalar pairing Z/n x A -> A.
    auto g = FiniteGroup::dihedral(3);
    auto chi = testutil::sign_character(*g);
    auto tw = testutil::twisted_cyclic(g, 3, chi);
    auto z3 = GModule::trivial_cyclic(g, 3);
    Pairing sp = scalar_pairing(z3, tw);
    for (int rep = 0; rep < 5; ++rep) {
        Cochain a = random_cochain(z3, 1, rng), b = random_cochain(tw, 1, rng);
        CHECK(differential(cup(a, b, sp)) ==
              cup(differential(a), b, sp) - cup(a, differential(b), sp));
    }
}

TEST_CASE("degree-0 identity and constants in cup products") {
    std::mt19937_64 rng(13);
    auto g = FiniteGroup::quaternion();
    auto m = GModule::trivial_cyclic(g, 4);
    Pairing p = multiplication_pairing(m, m, m);
    Cochain one = Cochain::constant(m, 1);
    for (unsigned deg = 0; deg <= 2; ++deg) {
        Cochain c = random_cochain(m, deg, rng);
        CHECK(cup(one, c, p) == c);
        CHECK(cup(c, one, p) == c);
    }
}

TEST_CASE("normalization is preserved by d, cup and h_g") {
    std::mt19937_64 rng(14);
    auto g = FiniteGroup::dihedral(4);
    auto m = GModule::trivial_cyclic(g, 2);
    Pairing p = multiplication_pairing(m, m, m);
    Cochain a = random_cochain(m, 1, rng), b = random_cochain(m, 2, rng);
    for (const Cochain& c : {differential(b), cup(a, b, p), chain_homotopy_hg(3, b)}) {
        std::vector<FiniteGroup::Elem> args(c.degree(), 5);
        for (unsigned k = 0; k < c.degree(); ++k) {
            auto t = args;
            t[k] = 0;
            CHECK(c.at(t.data()) == 0);
        }
    }
}

TEST_CASE("H^i(Z/2, Z/2) is Z/2 for i <= 4") {
    auto g = FiniteGroup::cyclic(2);
    auto m = GModule::trivial_cyclic(g, 2);
    for (unsigned i = 0; i <= 4; ++i) {
        auto h = cohomology(m, i);
        CHECK(h.invariant_factors == std::vector<std::uint32_t>{2});
        REQUIRE(h.generators.size() == 1);
        CHECK(is_cocycle(h.generators[0]));
        if (i > 0) CHECK_FALSE(is_coboundary(h.generators[0]).has_value());
    }
}

TEST_CASE("H^1 with trivial coefficients is hom(K, Z/n)") {
    for (const auto& g : FiniteGroup::catalog(8))
        for (std::uint32_t n : {2u, 3u, 4u}) {
            auto m = GModule::trivial_cyclic(g, n);
            auto h1 = cohomology(m, 1).order();
            CHECK(h1 == mpz_class(static_cast<unsigned long>(
                            oracle::hom_enumeration(*g, *FiniteGroup::cyclic(n)))));
            CHECK(cocycle_count(m, 1) == h1);
        }
}

TEST_CASE("normalized cochains give the same cohomology as full cochains") {
    for (const auto& g : FiniteGroup::catalog(8))
        for (std::uint32_t n : {2u, 3u, 4u})
            for (const auto& m : testutil::test_modules(g, n))
                for (unsigned i = 0; i <= 3; ++i) {
                    std::uint32_t p;
                    unsigned e;
                    oracle::prime_power(n, p, e);
                    unsigned lg = oracle::full_cochain_cohomology_log(*g, *m, i);
                    mpz_class expect;
                    mpz_ui_pow_ui(expect.get_mpz_t(), p, lg);
                    mpz_class got = cohomology(m, i).order();
                    oracle::OracleReport rep{"full_cochain_cohomology",
                                             g->name() + " n=" + std::to_string(n) +
                                                 (m->is_trivial_action() ? " trivial" : " twisted") +
                                                 " i=" + std::to_string(i),
                                             expect.get_str(), got.get_str()};
                    std::cout << rep.line() << "\n";
                    CHECK(rep.agree());
                }
}

TEST_CASE("cohomology kernels agree serial vs parallel") {
    auto g = FiniteGroup::dihedral(4);
    for (std::uint32_t n : {2u, 4u}) {
        auto m = GModule::trivial_cyclic(g, n);
        for (unsigned i = 0; i <= 3; ++i) {
            auto a = cohomology(m, i, Exec::serial), b = cohomology(m, i, Exec::parallel);
            CHECK(a.invariant_factors == b.invariant_factors);
        }
    }
}

TEST_CASE("is_coboundary") {
    std::mt19937_64 rng(15);
    SUBCASE("constructed coboundaries have witnesses") {
        for (const auto& g : FiniteGroup::catalog(8))
            for (std::uint32_t n : {2u, 3u, 4u})
                for (const auto& m : testutil::test_modules(g, n))
                    for (unsigned i = 1; i <= 3; ++i) {
                        Cochain c = differential(random_cochain(m, i - 1, rng));
                        auto b = is_coboundary(c);
                        REQUIRE(b.has_value());
                        CHECK(differential(*b) == c);
                    }
    }
    SUBCASE("x u x on Z/2 is not a coboundary") {
        auto g = FiniteGroup::cyclic(2);
        auto m = GModule::trivial_cyclic(g, 2);
        Cochain x = character_cochain(m, {0, 1});
        CHECK_FALSE(is_coboundary(cup(x, x, multiplication_pairing(m, m, m))).has_value());
    }
    SUBCASE("the quaternion extension class is not a coboundary") {
        auto k = FiniteGroup::elementary_abelian(2);
        auto m = GModule::trivial_cyclic(k, 2);
        Pairing p = multiplication_pairing(m, m, m);
        Cochain x = char_x(m), y = char_y(m);
        Cochain gamma = cup(x, y, p) + cup(x, x, p) + cup(y, y, p);
        CHECK_FALSE(is_coboundary(gamma).has_value());
        // x u y + y u x = d(xy)
        CHECK(is_coboundary(cup(x, y, p) + cup(y, x, p)).has_value());
    }
    SUBCASE("non-cocycles are rejected") {
        auto g = FiniteGroup::cyclic(4);
        auto m = GModule::trivial_cyclic(g, 4);
        Cochain c(m, 1);
        c.set(0, 1);
        CHECK_THROWS_AS(is_coboundary(c), std::invalid_argument);
    }
}

TEST_CASE("graded commutativity of cup products on cohomology") {
    std::mt19937_64 rng(16);
    for (const auto& g : FiniteGroup::catalog(8)) {
        if (g->order() < 2) continue;
        for (std::uint32_t n : {2u, 3u, 4u}) {
            auto m = GModule::trivial_cyclic(g, n);
            Pairing p = multiplication_pairing(m, m, m);
            for (unsigned i = 1; i <= 2; ++i)
                for (unsigned j = 1; i + j <= 3; ++j) {
                    Cochain a = random_cocycle(m, i, rng), b = random_cocycle(m, j, rng);
                    Cochain diff = cup(a, b, p) - cup(b, a, p).scaled((i * j) % 2 ? -1 : 1);
                    CHECK(is_coboundary(diff).has_value());
                }
        }
    }
}

TEST_CASE("chain homotopy h_g") {
    std::mt19937_64 rng(17);
    SUBCASE("identity element gives zero") {
        auto g = FiniteGroup::quaternion();
        auto m = GModule::trivial_cyclic(g, 2);
        for (unsigned i = 1; i <= 3; ++i)
            CHECK(chain_homotopy_hg(0, random_cochain(m, i, rng)).is_zero());
    }
    SUBCASE("homotopy identity on a basis of C^2(Q8, Z/2)") {
        auto g = FiniteGroup::quaternion();
        auto m = GModule::trivial_cyclic(g, 2);
        Cochain basis(m, 2);
        for (std::size_t t = 0; t < basis.size(); ++t) {
            Cochain c(m, 2);
            c.set(t, 1);
            for (FiniteGroup::Elem x = 0; x < 8; ++x) {
                Cochain lhs = right_action(c, x) - c;
                Cochain rhs = differential(chain_homotopy_hg(x, c)) +
                              chain_homotopy_hg(x, differential(c));
                REQUIRE(lhs == rhs);
            }
        }
    }
    SUBCASE("homotopy identity on Q8, D4, (Z/2)^3 with several coefficient modules") {
        for (auto g : {FiniteGroup::quaternion(), FiniteGroup::dihedral(4),
                       FiniteGroup::elementary_abelian(3), FiniteGroup::dihedral(3)})
            for (std::uint32_t n : {2u, 3u, 4u})
                for (const auto& m : testutil::test_modules(g, n))
                    for (unsigned i = 1; i <= 3; ++i) {
                        Cochain c = random_cochain(m, i, rng);
                        for (FiniteGroup::Elem x = 0; x < g->order(); ++x)
                            CHECK(right_action(c, x) - c ==
                                  differential(chain_homotopy_hg(x, c)) +
                                      chain_homotopy_hg(x, differential(c)));
                    }
    }
    SUBCASE("composition law on cocycles") {
        for (auto g : {FiniteGroup::quaternion(), FiniteGroup::dihedral(4),
                       FiniteGroup::elementary_abelian(3)}) {
            auto m = GModule::trivial_cyclic(g, 4);
            for (unsigned i = 1; i <= 3; ++i) {
                Cochain c = random_cocycle(m, i, rng);
                for (FiniteGroup::Elem a = 0; a < g->order(); ++a)
                    for (FiniteGroup::Elem b = 0; b < g->order(); ++b)
                    {
                        Cochain diff = chain_homotopy_hg(g->mul(a, b), c) -
                                       ad_pullback(chain_homotopy_hg(a, c), b) -
                                       chain_homotopy_hg(b, c);
                        // Exact below degree 3; in degree 3 it holds up to a coboundary.
                        if (i < 3) CHECK(diff.is_zero());
                        else CHECK(is_coboundary(diff).has_value());
                    }
            }
        }
    }
}

TEST_CASE("semidirect products") {
    auto k = FiniteGroup::elementary_abelian(2);
    auto m = GModule::trivial_cyclic(k, 2);
    Pairing p = multiplication_pairing(m, m, m);
    Cochain x = char_x(m), y = char_y(m);
    SUBCASE("gamma = 0 gives the direct product") {
        auto sp = semidirect_product(m, Cochain(m, 2));
        CHECK(sp.group->order() == 8);
        CHECK(sp.group->is_abelian());
        CHECK(sp.group->count_of_order(2) == 7);
    }
    SUBCASE("quaternion class") {
        auto sp = semidirect_product(m, cup(x, y, p) + cup(x, x, p) + cup(y, y, p));
        CHECK_FALSE(sp.group->is_abelian());
        CHECK(sp.group->count_of_order(2) == 1);
        CHECK(oracle::hom_enumeration(*FiniteGroup::cyclic(2), *sp.group) == 2);
    }
    SUBCASE("x u y gives the dihedral group") {
        auto sp = semidirect_product(m, cup(x, y, p));
        CHECK_FALSE(sp.group->is_abelian());
        CHECK(sp.group->count_of_order(2) == 5);
        CHECK(oracle::hom_enumeration(*sp.group, *FiniteGroup::dihedral(4)) ==
              oracle::hom_enumeration(*FiniteGroup::dihedral(4), *FiniteGroup::dihedral(4)));
    }
    SUBCASE("x u y + y u x is a coboundary, so the extension splits and is abelian") {
        auto sp = semidirect_product(m, cup(x, y, p) + cup(y, x, p));
        CHECK(sp.group->is_abelian());
        CHECK(sp.group->count_of_order(2) == 7);
    }
    SUBCASE("da = -k^*gamma for random cocycles") {
        std::mt19937_64 rng(18);
        for (const auto& g : FiniteGroup::catalog(4))
            for (std::uint32_t n : {2u, 3u, 4u})
                for (const auto& a : testutil::test_modules(g, n)) {
                    Cochain gamma = random_cocycle(a, 2, rng);
                    auto sp = semidirect_product(a, gamma);
                    CHECK(sp.group->order() == a->size() * g->order());
                    CHECK(differential(sp.a) == -pullback(gamma, sp.k, sp.pulled));
                    for (FiniteGroup::Elem t = 0; t < sp.group->order(); ++t)
                        CHECK((sp.k(t) == 0) == (t < a->size()));
                }
    }
    SUBCASE("non-cocycles are rejected") {
        Cochain bad(m, 2);
        bad.set(0, 1);
        CHECK_THROWS_AS(semidirect_product(m, bad), std::invalid_argument);
    }
}

TEST_CASE("counting identity #Z^1/#A = #H^1/#H^0") {
    for (const auto& g : FiniteGroup::catalog(8))
        for (std::uint32_t n : {2u, 3u, 4u})
            for (const auto& m : testutil::test_modules(g, n)) CHECK(counting_identity_check(m));
    auto s3 = FiniteGroup::dihedral(3);
    auto tw = testutil::twisted_cyclic(s3, 3, testutil::sign_character(*s3));
    auto ci = counting_identity(tw);
    CHECK(ci.holds());
    CHECK(ci.h0 == 1);
    auto q8 = GModule::trivial_cyclic(FiniteGroup::quaternion(), 2);
    CHECK(counting_identity(q8).z1 == 4);
}

TEST_CASE("multiplicative Euler characteristic") {
    auto z2g = FiniteGroup::cyclic(2);
    auto zero = GModule::trivial(z2g, {}, 2);
    CHECK(euler_characteristic(zero, 3) == 1);
    auto triv = FiniteGroup::trivial();
    CHECK(euler_characteristic(GModule::trivial_cyclic(triv, 4), 3) == 4);
    CHECK(euler_characteristic(GModule::trivial_cyclic(z2g, 2), 2) == 2);
}

TEST_CASE("Bockstein from Z/4 to Z/2") {
    auto g = FiniteGroup::cyclic(2);
    auto z2 = GModule::trivial_cyclic(g, 2);
    auto z4 = GModule::trivial_cyclic(g, 4);
    Pairing p = multiplication_pairing(z2, z2, z2);
    // On H^1(Z/2, Z/2) the Bockstein is the cup square, at cochain level up to coboundaries.
    Cochain x = character_cochain(z2, {0, 1});
    Cochain diff = bockstein(x, z4) - cup(x, x, p);
    CHECK((diff.is_zero() || is_coboundary(diff).has_value()));
    CHECK_FALSE(is_coboundary(bockstein(x, z4)).has_value());

    // Derivation rule on small groups.
    for (const auto& grp : FiniteGroup::catalog(8)) {
        auto a2 = GModule::trivial_cyclic(grp, 2);
        auto a4 = GModule::trivial_cyclic(grp, 4);
        Pairing pp = multiplication_pairing(a2, a2, a2);
        auto gens = cocycle_generators(a2, 1);
        for (const auto& u : gens)
            for (const auto& v : gens) {
                Cochain lhs = bockstein(cup(u, v, pp), a4);
                Cochain rhs = cup(bockstein(u, a4), v, pp) + cup(u, bockstein(v, a4), pp);
                Cochain dd = lhs - rhs;
                CHECK((dd.is_zero() || is_coboundary(dd).has_value()));
            }
    }
}
