#include <algorithm>
#include <random>

#include "doctest.h"
#include "dw/dw_invariant.hpp"

using namespace dw;

namespace {

struct Row {
    std::vector<long> primes;
    const char *q8_omega, *q8_hat;
    bool symmetric;
};

const std::vector<Row> kTable = {
    {{-11, -83, -107, -139, -191}, "8", "8", false},
    {{29, -31, -43, -47, 101}, "8", "20", false},
    {{-11, -59, -107}, "1/2", "7/2", false},
    {{5, 193, -439}, "1/2", "1/2", true},
};

}  // namespace

TEST_CASE("invariant table") {
    auto q8 = q8_preset();
    for (const auto& row : kTable) {
        Etale X(FieldSpec::make(row.primes));
        auto rep = duality_verdict(X, q8);
        CHECK(rep.z_omega == mpq_class(row.q8_omega));
        CHECK(rep.z_omega_hat == mpq_class(row.q8_hat));
        CHECK(rep.linking_symmetric == row.symmetric);
        CHECK(rep.torsor_count == rep.z_omega * 8);
        if (row.symmetric) CHECK(rep.hypotheses_hold);
    }
}

TEST_CASE("small field values") {
    auto q8 = q8_preset();
    Etale X(FieldSpec::make({-11, -59, -107}));
    CHECK(torsor_count(X, q8) == 4);
    auto rep = duality_verdict(X, q8);
    CHECK_FALSE(rep.hypotheses_hold);
    CHECK_FALSE(rep.equal);
    Etale Y(FieldSpec::make({-7}));
    CHECK(z_omega(Y, q8) == mpq_class(1, 8));
    CHECK(z_omega_hat(Y, q8) == mpq_class(1, 8));
    CHECK(torsor_count(Y, q8) == 1);
    CHECK(torsor_count(Y, d4_preset()) == 1);
}

TEST_CASE("serial and parallel paths agree") {
    for (const auto& row : kTable) {
        Etale X(FieldSpec::make(row.primes));
        for (auto P : {q8_preset(), d4_preset()}) {
            CHECK(z_omega(X, P, Exec::serial) == z_omega(X, P, Exec::parallel));
            CHECK(z_omega_hat(X, P, Exec::serial) == z_omega_hat(X, P, Exec::parallel));
        }
    }
}

TEST_CASE("invariance under permuting the primes") {
    std::mt19937_64 rng(8);
    auto q8 = q8_preset();
    for (const auto& row : kTable) {
        auto p = row.primes;
        for (int t = 0; t < 3; ++t) {
            std::shuffle(p.begin(), p.end(), rng);
            Etale X(FieldSpec::make(p));
            CHECK(z_omega(X, q8) == mpq_class(row.q8_omega));
            CHECK(z_omega_hat(X, q8) == mpq_class(row.q8_hat));
        }
    }
}

TEST_CASE("symmetric linking forces equality") {
    auto q8 = q8_preset();
    for (std::uint64_t seed = 100; seed < 112; ++seed) {
        auto f = random_field_spec(seed, 2 + seed % 3, 10000000, true);
        Etale X(f);
        auto rep = duality_verdict(X, q8);
        INFO(f.to_string());
        CHECK(rep.linking_symmetric);
        CHECK(rep.hypotheses_hold);
        CHECK(rep.z_omega == rep.z_omega_hat);
        CHECK(rep.torsor_count >= 0);
        mpq_class scaled = rep.z_omega_hat * 8;
        CHECK(scaled.get_den() == 1);
    }
}

TEST_CASE("d4 preset equality on the table and random fields") {
    auto d4 = d4_preset();
    for (const auto& row : kTable) {
        auto rep = duality_verdict(Etale(FieldSpec::make(row.primes)), d4);
        CHECK(rep.observation_checked);
        CHECK_FALSE(rep.observation_violated);
    }
    for (std::uint64_t seed = 200; seed < 210; ++seed) {
        auto f = random_field_spec(seed, 2 + seed % 3, 10000000);
        auto rep = duality_verdict(Etale(f), d4);
        INFO(f.to_string());
        CHECK_FALSE(rep.observation_violated);
    }
}

TEST_CASE("trivial omega_hat counts all homomorphisms") {
    auto P = q8_preset();
    P.omega_hat_monomials.clear();
    Etale X(FieldSpec::make({-11, -59, -107}));
    CHECK(z_omega_hat(X, P) == mpq_class(8));
}

TEST_CASE("preset checks") {
    auto P = q8_preset();
    CHECK(check_preset(P) == 2);
    auto bad = P;
    bad.gamma_monomials.pop_back();
    CHECK_THROWS_AS(check_preset(bad), PresetViolation);
    auto bad2 = P;
    bad2.omega_hat_monomials.push_back({0, 1, 5});
    CHECK_THROWS_AS(check_preset(bad2), PresetViolation);
    auto h = hom_from_index(0b10'01, 2, 2);
    CHECK(h[0].bits == 1);
    CHECK(h[1].bits == 2);
}

TEST_CASE("groupoid mass") {
    CHECK(groupoid_mass(16, 8, {1, 1}) == 2);
    CHECK(groupoid_mass(5, 8, {8, 8, 8, 8, 8}) == mpq_class(5, 8));
    // random G-sets from subgroup orders of a group of order 24
    std::mt19937_64 rng(4);
    const std::vector<std::size_t> subs = {1, 2, 3, 4, 6, 8, 12, 24};
    for (int t = 0; t < 50; ++t) {
        std::vector<std::size_t> st;
        std::size_t size = 0;
        for (int k = 0; k < 1 + int(rng() % 6); ++k) {
            st.push_back(subs[rng() % subs.size()]);
            size += 24 / st.back();
        }
        mpq_class want(size, 24);
        want.canonicalize();
        CHECK(groupoid_mass(size, 24, st) == want);
    }
    CHECK_THROWS(groupoid_mass(3, 8, {1}));
    CHECK_THROWS(groupoid_mass(3, 8, {3}));
}
