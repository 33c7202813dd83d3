#include <random>

#include "doctest.h"
#include "dw/relative.hpp"
#include "test_util.hpp"

using namespace dw;
using testutil::random_cochain;

namespace {

// Small pairs (Delta, pi) with pi a subgroup (or a quotient map image) of Delta.
std::vector<RelativePair> small_pairs() {
    std::vector<RelativePair> out;
    auto c2 = FiniteGroup::cyclic(2);
    auto c4 = FiniteGroup::cyclic(4);
    auto v4 = FiniteGroup::elementary_abelian(2);
    auto d4 = FiniteGroup::dihedral(4);
    auto q8 = FiniteGroup::quaternion();
    out.push_back(make_relative_pair(c4, {make_hom(c2, c4, {0, 2})}));
    out.push_back(make_relative_pair(v4, {make_hom(c2, v4, {0, 1}), make_hom(c2, v4, {0, 3})}));
    out.push_back(make_relative_pair(d4, {make_hom(c4, d4, {0, 1, 2, 3})}));
    out.push_back(make_relative_pair(q8, {make_hom(c4, q8, {0, 1, 4, 5})}));
    out.push_back(make_relative_pair(c2, {trivial_hom(FiniteGroup::trivial(), c2)}));
    return out;
}

RelativeCochain random_relative(const RelativeComplex& rc, unsigned deg, std::mt19937_64& rng) {
    std::vector<Cochain> betas;
    if (deg > 0)
        for (std::size_t v = 0; v < rc.pair().maps.size(); ++v)
            betas.push_back(random_cochain(rc.restricted(v), deg - 1, rng));
    return rc.make(random_cochain(rc.module(), deg, rng), std::move(betas));
}

// A relative cocycle (alpha, beta) with alpha a random cocycle whose restrictions are
// coboundaries, or nullopt.
std::optional<RelativeCochain> random_relative_cocycle(const RelativeComplex& rc, unsigned deg,
                                                       std::mt19937_64& rng) {
    Cochain alpha = testutil::random_cocycle(rc.module(), deg, rng);
    std::vector<Cochain> betas;
    for (std::size_t v = 0; v < rc.pair().maps.size(); ++v) {
        Cochain r = -rc.restrict(alpha, v);
        auto b = is_coboundary(r);
        if (!b) return std::nullopt;
        Cochain zb = testutil::random_cocycle(rc.restricted(v), deg - 1, rng);
        betas.push_back(*b + zb);
    }
    return rc.make(std::move(alpha), std::move(betas));
}

}  // namespace

TEST_CASE("relative differential basics") {
    std::mt19937_64 rng(31);
    for (const auto& pair : small_pairs())
        for (std::uint32_t n : {2u, 3u, 4u}) {
            RelativeComplex rc(pair, GModule::trivial_cyclic(pair.delta, n));
            for (unsigned deg = 0; deg <= 2; ++deg) {
                CHECK(rc.differential(rc.zero(deg)).is_zero());
                auto x = random_relative(rc, deg, rng);
                CHECK(rc.differential(rc.differential(x)).is_zero());
                CHECK(rc.from_coords(deg, rc.to_coords(x)) == x);
            }
        }
}

TEST_CASE("connecting map sign and vanishing composite") {
    std::mt19937_64 rng(32);
    for (const auto& pair : small_pairs())
        for (std::uint32_t n : {2u, 4u}) {
            RelativeComplex rc(pair, GModule::trivial_cyclic(pair.delta, n));
            for (unsigned deg = 0; deg <= 2; ++deg) {
                Cochain alpha = testutil::random_cocycle(rc.module(), deg, rng);
                std::vector<Cochain> zeros;
                if (deg > 0)
                    for (std::size_t v = 0; v < pair.maps.size(); ++v)
                        zeros.emplace_back(rc.restricted(v), deg - 1);
                auto d = rc.differential(rc.make(alpha, zeros));
                CHECK(d.alpha.is_zero());
                for (std::size_t v = 0; v < pair.maps.size(); ++v)
                    CHECK(d.betas[v] == -rc.restrict(alpha, v));
                // (0, alpha|pi) is the image of [alpha] under H^i(Delta) -> H^i(pi) -> H^{i+1}.
                std::vector<Cochain> res;
                for (std::size_t v = 0; v < pair.maps.size(); ++v)
                    res.push_back(rc.restrict(alpha, v));
                auto image = rc.make(Cochain(rc.module(), deg + 1), res);
                CHECK(rc.differential(image).is_zero());
                CHECK(rc.is_coboundary(image));
            }
        }
}

TEST_CASE("relative cup products") {
    std::mt19937_64 rng(33);
    for (const auto& pair : small_pairs())
        for (std::uint32_t n : {2u, 3u, 4u}) {
            auto zn = GModule::trivial_cyclic(pair.delta, n);
            RelativeComplex rc(pair, zn);
            Pairing p = multiplication_pairing(zn, zn, zn);
            SUBCASE("identity scalar") {
                Cochain one = Cochain::constant(zn, 1);
                for (unsigned deg = 0; deg <= 2; ++deg) {
                    auto x = random_relative(rc, deg, rng);
                    CHECK(relative_cup(rc, x, one, p, rc) == x);
                    CHECK(relative_cup(one, rc, x, p, rc) == x);
                }
            }
            SUBCASE("Leibniz") {
                for (unsigned i = 0; i <= 2; ++i)
                    for (unsigned j = 0; i + j <= 2; ++j) {
                        auto x = random_relative(rc, i, rng);
                        Cochain g = random_cochain(zn, j, rng);
                        auto lhs = rc.differential(relative_cup(rc, x, g, p, rc));
                        auto rhs = relative_cup(rc, rc.differential(x), g, p, rc) +
                                   relative_cup(rc, x, differential(g), p, rc)
                                       .scaled(i % 2 ? -1 : 1);
                        CHECK(lhs == rhs);
                        auto lhs2 = rc.differential(relative_cup(g, rc, x, p, rc));
                        auto rhs2 = relative_cup(differential(g), rc, x, p, rc) +
                                    relative_cup(g, rc, rc.differential(x), p, rc)
                                        .scaled(j % 2 ? -1 : 1);
                        CHECK(lhs2 == rhs2);
                    }
            }
            SUBCASE("graded sign rule up to relative coboundaries") {
                int tested = 0;
                for (int rep = 0; rep < 8; ++rep)
                    for (unsigned i = 1; i <= 2; ++i)
                        for (unsigned j = 0; i + j <= 3; ++j) {
                            auto x = random_relative_cocycle(rc, i, rng);
                            if (!x) continue;
                            Cochain g = testutil::random_cocycle(zn, j, rng);
                            auto right = relative_cup(rc, *x, g, p, rc);
                            auto left = relative_cup(g, rc, *x, p, rc);
                            CHECK(rc.differential(right).is_zero());
                            CHECK(rc.differential(left).is_zero());
                            auto diff = right - left.scaled((i * j) % 2 ? -1 : 1);
                            CHECK(rc.is_coboundary(diff));
                            ++tested;
                        }
                CHECK(tested > 0);
            }
        }
}

TEST_CASE("relative pair validation") {
    auto c2 = FiniteGroup::cyclic(2);
    auto c3 = FiniteGroup::cyclic(3);
    CHECK_THROWS_AS(make_relative_pair(c3, {GroupHom{c2, c3, {0, 1}}}), std::invalid_argument);
}
