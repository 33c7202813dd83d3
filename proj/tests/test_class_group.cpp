#include <random>
#include <set>

#include "doctest.h"
#include "dw/class_group.hpp"
#include "oracles/oracles.hpp"

using namespace dw;

namespace {

mpz_class product_of(const std::vector<long>& ps) {
    mpz_class d = 1;
    for (long p : ps) d *= p;
    return d;
}

// Random valid spec with |d| below the bound.
FieldSpec random_spec(std::mt19937_64& rng, long bound, unsigned r) {
    static const std::vector<u64> ps = primes_up_to(20000);
    for (;;) {
        std::vector<long> primes;
        std::set<long> used;
        mpz_class d = 1;
        for (unsigned i = 0; i < r; ++i) {
            long q = static_cast<long>(ps[1 + rng() % 300]);
            long p = q % 4 == 1 ? q : -q;
            if (!used.insert(q).second) break;
            primes.push_back(p);
            d *= p;
        }
        if (primes.size() != r || d >= 0 || abs(d) >= bound || d == -3) continue;
        return FieldSpec::make(primes);
    }
}

}  // namespace

TEST_CASE("form reduction and composition basics") {
    const i64 d = -69443;
    Form e = principal_form(d);
    CHECK(is_reduced(e));
    auto forms = reduced_forms(d);
    for (const auto& q : forms) {
        CHECK(is_reduced(q));
        CHECK(q.b * q.b - 4 * q.a * q.c == d);
        CHECK(compose(q, e, d) == q);
        CHECK(compose(q, inverse(q), d) == e);
    }
    std::mt19937_64 rng(5);
    for (int t = 0; t < 300; ++t) {
        const Form& x = forms[rng() % forms.size()];
        const Form& y = forms[rng() % forms.size()];
        const Form& z = forms[rng() % forms.size()];
        CHECK(compose(x, y, d) == compose(y, x, d));
        CHECK(compose(compose(x, y, d), z, d) == compose(x, compose(y, z, d), d));
    }
}

TEST_CASE("associativity exhaustive on a small discriminant") {
    const i64 dd = -23 * 5 * 13;
    auto forms = reduced_forms(dd);
    for (const auto& x : forms)
        for (const auto& y : forms)
            for (const auto& z : forms)
                REQUIRE(compose(compose(x, y, dd), z, dd) == compose(x, compose(y, z, dd), dd));
}

TEST_CASE("class numbers against the reduced-form oracle") {
    for (long d : {-7L, -15L, -23L, -35L, -55L, -95L, -1495L, -69443L, -423635L}) {
        std::size_t h = reduced_forms(d).size();
        std::size_t hs = reduced_forms(d, Exec::serial).size();
        oracle::OracleReport rep{"form_class_number", "d=" + std::to_string(d),
                                 std::to_string(oracle::form_class_number(d)), std::to_string(h)};
        MESSAGE(rep.line());
        CHECK(rep.agree());
        CHECK(h == hs);
    }
    CHECK(reduced_forms(-7).size() == 1);
    CHECK(reduced_forms(-15).size() == 2);
}

TEST_CASE("ideal classes follow ideal multiplication") {
    for (const auto& ps : std::vector<std::vector<long>>{{-11, -59, -107}, {5, 193, -439}, {-23, 5}}) {
        auto f = FieldSpec::make(ps);
        ClassGroup cg(f);
        const i64 d = f.d.get_si();
        std::vector<QuadIdeal> ids;
        for (u64 q : primes_up_to(200))
            for (const auto& p : prime_splitting(f, mpz_class(static_cast<unsigned long>(q))).primes)
                ids.push_back(p.ideal());
        for (std::size_t i = 0; i < ids.size(); ++i)
            for (std::size_t j = i; j < ids.size(); j += 3) {
                auto prod = mul(f, ids[i], ids[j]);
                CHECK(form_of_ideal(f, prod) ==
                      compose(form_of_ideal(f, ids[i]), form_of_ideal(f, ids[j]), d));
                CHECK(cg.ideal_class(prod) == cg.add(cg.ideal_class(ids[i]), cg.ideal_class(ids[j])));
            }
        // Principal ideals are trivial.
        std::mt19937_64 rng(1);
        for (int t = 0; t < 50; ++t) {
            QuadInt a(static_cast<long>(rng() % 2001) - 1000, static_cast<long>(rng() % 2001) - 1000);
            if (a.u == 0 && a.v == 0) continue;
            CHECK(cg.is_zero(cg.ideal_class(QuadIdeal::principal(f, a))));
        }
        for (const auto& q : cg.forms()) CHECK(form_of_ideal(f, ideal_of_form(f, q)) == q);
        i64 prod = 1;
        for (i64 v : cg.invariants()) prod *= v;
        CHECK(prod == static_cast<i64>(cg.order()));
        for (std::size_t k = 1; k < cg.invariants().size(); ++k)
            CHECK(cg.invariants()[k] % cg.invariants()[k - 1] == 0);
    }
}

TEST_CASE("smith normal form") {
    std::vector<std::vector<mpz_class>> A = {{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
    auto s = smith_normal_form(A);
    CHECK(s.D[0][0] == 2);
    CHECK(s.D[1][1] == 6);
    CHECK(s.D[2][2] == 12);
    // D = U A V
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            mpz_class acc = 0;
            for (std::size_t k = 0; k < 3; ++k)
                for (std::size_t l = 0; l < 3; ++l) acc += s.U[i][k] * A[k][l] * s.V[l][j];
            CHECK(acc == s.D[i][j]);
        }
}

TEST_CASE("two torsion and genus structure") {
    SUBCASE("r = 1") {
        ClassGroup cg(FieldSpec::make({-7}));
        CHECK(cg.order() == 1);
        auto rep = two_torsion(cg);
        CHECK(rep.two_rank == 0);
        CHECK(rep.ok());
    }
    SUBCASE("table specs") {
        for (const auto& ps : std::vector<std::vector<long>>{
                 {-11, -59, -107}, {5, 193, -439}, {29, -31, -43, -47, 101}}) {
            ClassGroup cg(FieldSpec::make(ps));
            auto rep = two_torsion(cg);
            CHECK(rep.two_rank + 1 == ps.size());
            CHECK(rep.relation_holds);
            CHECK(rep.ok());
            std::size_t h = cg.order();
            if (abs(product_of(ps)) < 1000000) {
                oracle::OracleReport o{"form_class_number", FieldSpec::make(ps).to_string(),
                                       std::to_string(oracle::form_class_number(product_of(ps).get_si())),
                                       std::to_string(h)};
                MESSAGE(o.line());
                CHECK(o.agree());
            }
        }
    }
    SUBCASE("spec (-11,-59,-107): first two prime classes independent") {
        ClassGroup cg(FieldSpec::make({-11, -59, -107}));
        auto rep = two_torsion(cg);
        CHECK(!cg.is_zero(rep.prime_classes[0]));
        CHECK(!cg.is_zero(rep.prime_classes[1]));
        CHECK(rep.prime_classes[0] != rep.prime_classes[1]);
    }
    SUBCASE("random specs") {
        std::mt19937_64 rng(2024);
        for (int t = 0; t < 12; ++t) {
            auto f = random_spec(rng, 3000000, 2 + t % 3);
            ClassGroup cg(f);
            auto rep = two_torsion(cg);
            CHECK_MESSAGE(rep.ok(), f.to_string());
        }
    }
}

TEST_CASE("discriminant guard") {
    ClassGroupOptions opt;
    opt.max_disc = 1000;
    CHECK_THROWS_AS(ClassGroup(FieldSpec::make({-11, -59, -107}), opt), DiscriminantGuard);
}
