#pragma once
// Z/2 etale cohomology of X = spec O_F for F = Q(sqrt d) with d = p_1 ... p_r:
// H^1 with basis x_i <-> F(sqrt p_i), H^2 through its dual generators
// (O_F, -1) and (p_i, 1/p_i), cup products, triple-cup traces and the linking form.

#include <array>
#include <cstdint>
#include <memory>
#include <mutex>
#include <vector>

#include "dw/class_group.hpp"
#include "dw/relative_quartic.hpp"
#include "dw/zn_linalg.hpp"

namespace dw {

// F_2 vector over x_1..x_{r-1}; bit i is x_{i+1}. Also the mask of the field F(sqrt p_J).
struct H1Class {
    std::uint32_t bits = 0;
    bool operator==(const H1Class& o) const { return bits == o.bits; }
    H1Class operator+(const H1Class& o) const { return H1Class{bits ^ o.bits}; }
};

struct H1BasisElement {
    H1Class x;
    std::vector<std::size_t> index_set;  // primes p_i with F(sqrt p_I) the covering field
    mpz_class radicand;
};
std::vector<H1BasisElement> h1_basis(const FieldSpec& f);

struct H2DualElement {
    enum class Kind { unit_class, prime_class } kind = Kind::unit_class;
    unsigned index = 0;  // 0-based prime index for prime_class
    DualPair pair(const FieldSpec& f) const;
    std::string to_string() const;
};

// Values on the r dual generators: [0] at (O_F, -1), [1 + i] at (p_{i+1}, 1/p_{i+1}).
// One bit each for 1/2 Z/Z.
struct H2Class {
    std::vector<std::uint8_t> values;
    bool is_zero() const;
    bool operator==(const H2Class& o) const { return values == o.values; }
    H2Class& operator+=(const H2Class& o);
};

// The dual element s(t(x)): (sum x_i p_i, prod p_i^{-1}).
DualPair pairing_adjoint(const FieldSpec& f, H1Class x);

// Distinct-index entry of the trace tensor, computed along each association.
struct TensorRoutes {
    std::array<unsigned, 3> idx{};
    std::vector<int> values;  // one per (dual, J, K) ordering tried
    std::vector<std::size_t> witnesses;      // usable witnesses per ordering
    std::vector<std::string> first_witness;  // norm-equation solution per ordering
    bool agree() const;
};

struct EtaleOptions {
    NormSearchOptions search;
    Exec exec = Exec::parallel;
    // Orderings per distinct triple: 3 uses one per choice of dual index, 6 adds J <-> K.
    unsigned routes = 3;
};

struct RouteMismatch : std::logic_error {
    using std::logic_error::logic_error;
};

class TraceTensor {
public:
    TraceTensor(FieldSpec f, EtaleOptions opt = {});
    const FieldSpec& field() const { return f_; }
    unsigned dim() const { return n_; }
    // tr(x_i u x_j u x_k) as a bit; fills the table on first use.
    int at(unsigned i, unsigned j, unsigned k) const;
    int trace(H1Class x, H1Class y, H1Class z) const;
    // Entries with a repeated index, from genus characters only.
    int diagonal_entry(unsigned a, unsigned b) const;  // T[a][b][b]
    const std::vector<TensorRoutes>& routes() const;
    // Restore entries (for example from a cache); checks the full symmetry.
    void load(const std::vector<std::uint8_t>& entries);
    std::vector<std::uint8_t> entries() const;

private:
    FieldSpec f_;
    EtaleOptions opt_;
    unsigned n_;
    std::unique_ptr<std::once_flag> filled_ = std::make_unique<std::once_flag>();
    mutable std::vector<std::uint8_t> t_;
    mutable std::vector<std::uint32_t> rows_;  // bit k of rows_[i*n+j] = T[i][j][k]
    mutable std::vector<TensorRoutes> routes_;
    void fill() const;
    void index_rows() const;
    std::size_t slot(unsigned i, unsigned j, unsigned k) const { return (std::size_t(i) * n_ + j) * n_ + k; }
};

class Etale {
public:
    explicit Etale(const FieldSpec& f, EtaleOptions opt = {});
    const FieldSpec& field() const { return tensor_.field(); }
    unsigned dim() const { return tensor_.dim(); }
    const TraceTensor& tensor() const { return tensor_; }
    TraceTensor& tensor() { return tensor_; }

    // L(x, y) = tr(x u y u y)
    int linking(H1Class x, H1Class y) const;
    bool linking_symmetric() const;
    std::vector<std::vector<int>> linking_matrix() const;
    // (x u y)(O_F, -1) = L(y, x) - L(x, y)
    int unit_value(H1Class x, H1Class y) const;
    // The same value from the norm-equation recipe with a = -1.
    CupEval unit_value_direct(H1Class x, H1Class y) const;

    H2Class cup(H1Class x, H1Class y) const;
    int triple_cup_trace(H1Class x, H1Class y, H1Class z) const { return tensor_.trace(x, y, z); }
    // Evaluation of x u y on an arbitrary dual element through cup_eval.
    CupEval evaluate(H1Class x, H1Class y, const DualPair& dual) const;

    // [sigma^* gamma] for gamma = sum of x_a u x_b over the monomials.
    H2Class pullback(const std::vector<std::array<unsigned, 2>>& gamma_monomials,
                     const std::vector<H1Class>& sigma) const;
    // u in H^1(X, Z/2)^perp: vanishes on every pairing_adjoint image.
    bool in_h1_perp(const H2Class& u) const;
    // F_2-dimension of H^1^perp: r minus the rank of the pairing_adjoint images, read
    // off from their ideal classes in cl(F)[2].
    unsigned h1_perp_dim(const ClassGroup& cg) const;

private:
    TraceTensor tensor_;
    EtaleOptions opt_;
};

struct PerpVerdict {
    bool holds = true;        // [sigma^* gamma] is zero or outside H^1^perp
    bool unit_vanishes = true;
    bool by_unit_criterion = true;
};
PerpVerdict perp_condition(const Etale& X, const H2Class& u);

// A valid spec with |d| < bound and r primes. When positive_head, p_1..p_{r-1} are positive.
FieldSpec random_field_spec(std::uint64_t seed, unsigned r, long bound, bool positive_head = false);

}  // namespace dw
