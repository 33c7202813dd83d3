#pragma once
// Class group of Q(sqrt d) through reduced primitive binary quadratic forms of
// discriminant d < 0, d = 1 (mod 4).

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "dw/quadratic_field.hpp"
#include "dw/zn_linalg.hpp"

namespace dw {

struct Form {
    i64 a = 1, b = 1, c = 0;
    bool operator==(const Form& o) const { return a == o.a && b == o.b && c == o.c; }
};

struct DiscriminantGuard : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Form reduce(const Form& f);
bool is_reduced(const Form& f);
Form principal_form(i64 d);
Form compose(const Form& f, const Form& g, i64 d);
inline Form inverse(const Form& f) { return reduce(Form{f.a, -f.b, f.c}); }
Form power(const Form& f, i64 e, i64 d);

// All reduced primitive forms, sorted by (a, b).
std::vector<Form> reduced_forms(i64 d, Exec exec = Exec::parallel);

// Primitive ideal a Z + (beta + omega) Z <-> (a, -1 - 2 beta, c); non-primitive
// ideals are divided by their content first.
Form form_of_ideal(const FieldSpec& f, const QuadIdeal& I);
QuadIdeal ideal_of_form(const FieldSpec& f, const Form& q);

struct ClassGroupOptions {
    mpz_class max_disc = mpz_class("10000000000");
    Exec exec = Exec::parallel;
};

class ClassGroup {
public:
    ClassGroup(const FieldSpec& f, const ClassGroupOptions& opt = {});

    const FieldSpec& field() const { return f_; }
    std::size_t order() const { return forms_.size(); }
    // Invariant factors d_1 | d_2 | ... (all > 1).
    const std::vector<i64>& invariants() const { return inv_; }
    unsigned two_rank() const;

    // Coordinates in Z/d_1 x ... of a form or ideal class.
    std::vector<i64> coords(const Form& q) const;
    std::vector<i64> ideal_class(const QuadIdeal& I) const { return coords(form_of_ideal(f_, I)); }
    // Form of the j-th invariant-factor generator.
    const Form& generator(std::size_t j) const { return gens_.at(j); }
    const std::vector<Form>& forms() const { return forms_; }

    bool is_zero(const std::vector<i64>& c) const;
    std::vector<i64> add(const std::vector<i64>& x, const std::vector<i64>& y) const;

private:
    FieldSpec f_;
    i64 d_;
    std::vector<Form> forms_;
    std::unordered_map<u64, std::uint32_t> index_;
    // Per form: exponent vector over the SNF generators.
    std::vector<std::vector<i64>> coord_;
    std::vector<i64> inv_;
    std::vector<Form> gens_;

    std::size_t lookup(const Form& q) const;
};

// cl(F)[2] against the classes of the ramified primes, and cl(F)/2 against the
// genus characters artin_{F(sqrt p_i)}.
struct TwoTorsionReport {
    unsigned r = 0;
    unsigned two_rank = 0;
    std::vector<std::vector<i64>> prime_classes;  // [p_i], i = 1..r
    bool relation_holds = false;                  // [p_1] + ... + [p_r] = 0
    bool primes_are_two_torsion = false;
    unsigned prime_span_rank = 0;  // F_2-rank of the [p_i]
    unsigned genus_rank = 0;       // F_2-rank of the genus characters on cl(F)
    // genus_matrix[i][j] = artin_{F(sqrt p_i)}(generator j), i = 1..r-1
    std::vector<std::vector<int>> genus_matrix;
    bool ok() const {
        return two_rank + 1 == r && relation_holds && primes_are_two_torsion &&
               prime_span_rank + 1 == r && genus_rank + 1 == r;
    }
};

TwoTorsionReport two_torsion(const ClassGroup& cg);

// Smith normal form D = U A V of an integer matrix (exposed for tests).
struct SmithForm {
    std::vector<std::vector<mpz_class>> D, U, V;
};
SmithForm smith_normal_form(const std::vector<std::vector<mpz_class>>& A);

}  // namespace dw
