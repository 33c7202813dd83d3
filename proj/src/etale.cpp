#include "dw/etale.hpp"

#include <omp.h>

#include <algorithm>
#include <exception>
#include <random>
#include <set>

namespace dw {

std::vector<H1BasisElement> h1_basis(const FieldSpec& f) {
    std::vector<H1BasisElement> out;
    for (std::size_t i = 0; i + 1 < f.r(); ++i)
        out.push_back(H1BasisElement{H1Class{std::uint32_t(1) << i}, {i}, mpz_class(f.primes[i])});
    return out;
}

DualPair H2DualElement::pair(const FieldSpec& f) const {
    if (kind == Kind::unit_class) return DualPair{{}, mpq_class(-1)};
    if (index >= f.r()) throw std::out_of_range("dual element: prime index");
    return DualPair{{{ramified_prime(f, index), 1}}, mpq_class(1, 1) / f.primes[index]};
}

std::string H2DualElement::to_string() const {
    if (kind == Kind::unit_class) return "(O,-1)";
    return "(p" + std::to_string(index + 1) + ",1/p" + std::to_string(index + 1) + ")";
}

bool H2Class::is_zero() const {
    return std::all_of(values.begin(), values.end(), [](std::uint8_t v) { return v == 0; });
}

H2Class& H2Class::operator+=(const H2Class& o) {
    if (values.size() != o.values.size()) throw std::invalid_argument("H2Class: size mismatch");
    for (std::size_t i = 0; i < values.size(); ++i) values[i] ^= o.values[i];
    return *this;
}

DualPair pairing_adjoint(const FieldSpec& f, H1Class x) {
    DualPair out{{}, mpq_class(1)};
    for (std::size_t i = 0; i + 1 < f.r(); ++i)
        if ((x.bits >> i) & 1u) {
            accumulate(out.ideal, IdealFactorization{{ramified_prime(f, i), 1}});
            out.a /= f.primes[i];
        }
    return out;
}

bool TensorRoutes::agree() const {
    for (int v : values)
        if (v != values.front()) return false;
    return !values.empty();
}

// ---- trace tensor ----

TraceTensor::TraceTensor(FieldSpec f, EtaleOptions opt)
    : f_(std::move(f)), opt_(opt), n_(static_cast<unsigned>(f_.r() - 1)) {
    if (n_ > 31) throw std::invalid_argument("trace tensor: too many primes");
    if (opt_.routes != 3 && opt_.routes != 6) throw std::invalid_argument("trace tensor: routes must be 3 or 6");
}

int TraceTensor::diagonal_entry(unsigned a, unsigned b) const {
    // (x_b u x_b)(p_a, 1/p_a) = artin_{F(sqrt p_b)}(p_a)
    return artin_symbol(f_, mpz_class(f_.primes[b]), ramified_prime(f_, a));
}

void TraceTensor::fill() const {
    const unsigned n = n_;
    t_.assign(std::size_t(n) * n * n, 0);
    for (unsigned a = 0; a < n; ++a)
        for (unsigned b = 0; b < n; ++b) {
            std::uint8_t v = static_cast<std::uint8_t>(diagonal_entry(a, b));
            t_[slot(a, b, b)] = t_[slot(b, a, b)] = t_[slot(b, b, a)] = v;
        }
    routes_.clear();
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = i + 1; j < n; ++j)
            for (unsigned k = j + 1; k < n; ++k) routes_.push_back(TensorRoutes{{i, j, k}, {}, {}});
    std::exception_ptr err;
    const long count = static_cast<long>(routes_.size());
    auto one = [&](long t) {
        TensorRoutes& R = routes_[t];
        const auto [i, j, k] = R.idx;
        const std::array<std::array<unsigned, 3>, 6> orders = {
            {{i, j, k}, {j, i, k}, {k, i, j}, {i, k, j}, {j, k, i}, {k, j, i}}};
        for (unsigned o = 0; o < opt_.routes; ++o) {
            const auto [l, a, b] = orders[o];
            H2DualElement dual{H2DualElement::Kind::prime_class, l};
            CupEval c = cup_eval(f_, std::uint64_t(1) << a, std::uint64_t(1) << b, dual.pair(f_), opt_.search);
            if (!c.consistent())
                throw RouteMismatch("trace tensor: witnesses disagree at " + f_.to_string());
            R.values.push_back(c.value);
            R.witnesses.push_back(c.per_witness.size());
            R.first_witness.push_back(to_string(c.witnesses.front()));
        }
    };
    if (opt_.exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (long t = 0; t < count; ++t) {
            try {
                one(t);
            } catch (...) {
#pragma omp critical(dw_tensor_err)
                if (!err) err = std::current_exception();
            }
        }
        if (err) std::rethrow_exception(err);
    } else {
        for (long t = 0; t < count; ++t) one(t);
    }
    for (const auto& R : routes_) {
        if (!R.agree())
            throw RouteMismatch("trace tensor: routes disagree at " + f_.to_string() + " entry " +
                                std::to_string(R.idx[0]) + std::to_string(R.idx[1]) + std::to_string(R.idx[2]));
        const auto [i, j, k] = R.idx;
        const std::uint8_t v = static_cast<std::uint8_t>(R.values.front());
        for (auto [a, b, c] : std::array<std::array<unsigned, 3>, 6>{
                 {{i, j, k}, {i, k, j}, {j, i, k}, {j, k, i}, {k, i, j}, {k, j, i}}})
            t_[slot(a, b, c)] = v;
    }
    index_rows();
}

void TraceTensor::index_rows() const {
    rows_.assign(std::size_t(n_) * n_, 0);
    for (unsigned i = 0; i < n_; ++i)
        for (unsigned j = 0; j < n_; ++j)
            for (unsigned k = 0; k < n_; ++k)
                if (t_[slot(i, j, k)]) rows_[std::size_t(i) * n_ + j] |= std::uint32_t(1) << k;
}

int TraceTensor::at(unsigned i, unsigned j, unsigned k) const {
    std::call_once(*filled_, [this] { fill(); });
    if (i >= n_ || j >= n_ || k >= n_) throw std::out_of_range("trace tensor index");
    return t_[slot(i, j, k)];
}

int TraceTensor::trace(H1Class x, H1Class y, H1Class z) const {
    std::call_once(*filled_, [this] { fill(); });
    unsigned acc = 0;
    for (unsigned i = 0; i < n_; ++i) {
        if (!((x.bits >> i) & 1u)) continue;
        for (unsigned j = 0; j < n_; ++j)
            if ((y.bits >> j) & 1u) acc += std::popcount(rows_[std::size_t(i) * n_ + j] & z.bits);
    }
    return static_cast<int>(acc & 1u);
}

const std::vector<TensorRoutes>& TraceTensor::routes() const {
    std::call_once(*filled_, [this] { fill(); });
    return routes_;
}

std::vector<std::uint8_t> TraceTensor::entries() const {
    std::call_once(*filled_, [this] { fill(); });
    return t_;
}

void TraceTensor::load(const std::vector<std::uint8_t>& entries) {
    if (entries.size() != std::size_t(n_) * n_ * n_) throw std::invalid_argument("trace tensor: size");
    for (unsigned i = 0; i < n_; ++i)
        for (unsigned j = 0; j < n_; ++j)
            for (unsigned k = 0; k < n_; ++k) {
                std::uint8_t v = entries[slot(i, j, k)];
                if (v > 1 || v != entries[slot(j, i, k)] || v != entries[slot(i, k, j)])
                    throw std::invalid_argument("trace tensor: entries not symmetric");
            }
    for (unsigned a = 0; a < n_; ++a)
        for (unsigned b = 0; b < n_; ++b)
            if (entries[slot(a, b, b)] != diagonal_entry(a, b))
                throw std::invalid_argument("trace tensor: diagonal entries disagree");
    std::call_once(*filled_, [] {});
    t_ = entries;
    routes_.clear();
    index_rows();
}

// ---- Etale ----

Etale::Etale(const FieldSpec& f, EtaleOptions opt) : tensor_(f, opt), opt_(opt) {}

int Etale::linking(H1Class x, H1Class y) const {
    return tensor_.trace(x, y, y);
}

std::vector<std::vector<int>> Etale::linking_matrix() const {
    const unsigned n = dim();
    std::vector<std::vector<int>> L(n, std::vector<int>(n));
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) L[i][j] = tensor_.diagonal_entry(i, j);
    return L;
}

bool Etale::linking_symmetric() const {
    // Decided on basis pairs from the genus characters alone.
    auto L = linking_matrix();
    for (std::size_t i = 0; i < L.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (L[i][j] != L[j][i]) return false;
    return true;
}

int Etale::unit_value(H1Class x, H1Class y) const {
    return linking(y, x) ^ linking(x, y);
}

CupEval Etale::evaluate(H1Class x, H1Class y, const DualPair& dual) const {
    return cup_eval(field(), x.bits, y.bits, dual, opt_.search);
}

CupEval Etale::unit_value_direct(H1Class x, H1Class y) const {
    return evaluate(x, y, H2DualElement{}.pair(field()));
}

H2Class Etale::cup(H1Class x, H1Class y) const {
    H2Class u;
    u.values.assign(field().r(), 0);
    u.values[0] = static_cast<std::uint8_t>(unit_value(x, y));
    for (unsigned i = 0; i < dim(); ++i)
        u.values[1 + i] = static_cast<std::uint8_t>(tensor_.trace(H1Class{1u << i}, x, y));
    return u;
}

H2Class Etale::pullback(const std::vector<std::array<unsigned, 2>>& gamma_monomials,
                        const std::vector<H1Class>& sigma) const {
    H2Class u;
    u.values.assign(field().r(), 0);
    for (const auto& m : gamma_monomials) {
        if (m[0] >= sigma.size() || m[1] >= sigma.size())
            throw std::invalid_argument("pullback: monomial uses a character outside K");
        u += cup(sigma[m[0]], sigma[m[1]]);
    }
    return u;
}

bool Etale::in_h1_perp(const H2Class& u) const {
    return std::all_of(u.values.begin() + 1, u.values.end(), [](std::uint8_t v) { return v == 0; });
}

unsigned Etale::h1_perp_dim(const ClassGroup& cg) const {
    const auto& inv = cg.invariants();
    std::vector<std::uint64_t> rows;
    for (std::size_t i = 0; i + 1 < field().r(); ++i) {
        auto c = cg.ideal_class(ramified_prime(field(), i).ideal());
        std::uint64_t bits = 0;
        for (std::size_t j = 0; j < inv.size(); ++j) {
            if (c[j] == 0) continue;
            if (inv[j] % 2 || c[j] != inv[j] / 2) throw std::logic_error("h1_perp_dim: prime class not 2-torsion");
            bits |= std::uint64_t(1) << j;
        }
        rows.push_back(bits);
    }
    unsigned rank = 0;
    for (std::size_t col = 0; col < 64 && rank < rows.size(); ++col) {
        std::size_t piv = rank;
        while (piv < rows.size() && !((rows[piv] >> col) & 1u)) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        for (std::size_t t = 0; t < rows.size(); ++t)
            if (t != rank && ((rows[t] >> col) & 1u)) rows[t] ^= rows[rank];
        ++rank;
    }
    return static_cast<unsigned>(field().r()) - rank;
}

PerpVerdict perp_condition(const Etale& X, const H2Class& u) {
    PerpVerdict v;
    v.unit_vanishes = u.values.at(0) == 0;
    if (v.unit_vanishes) return v;
    v.by_unit_criterion = false;
    // u(O,-1) != 0 so u is nonzero; it fails exactly when it lies in H^1^perp.
    v.holds = !X.in_h1_perp(u);
    return v;
}

FieldSpec random_field_spec(std::uint64_t seed, unsigned r, long bound, bool positive_head) {
    static const std::vector<u64> ps = primes_up_to(20000);
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 1000000; ++attempt) {
        std::vector<long> primes;
        std::set<long> used;
        mpz_class d = 1;
        for (unsigned i = 0; i < r; ++i) {
            long q = static_cast<long>(ps[1 + rng() % 400]);
            long p = q % 4 == 1 ? q : -q;
            if (positive_head && (i + 1 < r) != (p > 0)) break;
            if (!used.insert(q).second) break;
            primes.push_back(p);
            d *= p;
        }
        if (primes.size() != r || d >= 0 || abs(d) >= bound || d == -3) continue;
        return FieldSpec::make(primes);
    }
    throw std::runtime_error("random_field_spec: no spec found");
}

}  // namespace dw
