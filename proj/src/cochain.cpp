#include "dw/cochain.hpp"

#include <atomic>

namespace dw {

namespace {
std::atomic<std::size_t> g_guard{std::size_t(1) << 24};
constexpr unsigned kMaxDegree = 12;
}  // namespace

std::size_t cochain_guard() {
    return g_guard.load();
}

void set_cochain_guard(std::size_t entries) {
    g_guard.store(entries);
}

std::size_t Cochain::tuple_count(std::size_t group_order, unsigned degree) {
    std::size_t base = group_order - 1, count = 1;
    for (unsigned k = 0; k < degree; ++k) {
        if (base != 0 && count > cochain_guard() / base + 1)
            throw SizeGuardError("cochain space exceeds size guard");
        count *= base;
    }
    return count;
}

Cochain::Cochain(ModulePtr module, unsigned degree)
    : module_(std::move(module)), degree_(degree), base_(module_->group()->order() - 1) {
    if (degree > kMaxDegree) throw SizeGuardError("cochain degree too large");
    std::size_t n = tuple_count(module_->group()->order(), degree);
    if (n * std::max<std::size_t>(1, module_->rank()) > cochain_guard())
        throw SizeGuardError("cochain space exceeds size guard");
    vals_.assign(n, 0);
}

Cochain Cochain::constant(ModulePtr module, MElem value) {
    Cochain c(std::move(module), 0);
    c.vals_[0] = value;
    return c;
}

Cochain Cochain::from_function(ModulePtr module, unsigned degree,
                               const std::function<MElem(const GElem*)>& f) {
    Cochain c(std::move(module), degree);
    std::vector<GElem> args(degree);
    for (std::size_t idx = 0; idx < c.vals_.size(); ++idx) {
        c.decode(idx, args.data());
        c.vals_[idx] = f(args.data());
    }
    return c;
}

void Cochain::decode(std::size_t idx, GElem* args) const {
    for (unsigned k = degree_; k-- > 0;) {
        args[k] = static_cast<GElem>(idx % base_ + 1);
        idx /= base_;
    }
}

Cochain::MElem Cochain::at(const GElem* args) const {
    std::size_t idx = 0;
    for (unsigned k = 0; k < degree_; ++k) {
        if (args[k] == 0) return 0;
        idx = idx * base_ + (args[k] - 1);
    }
    return vals_[idx];
}

void Cochain::set_at(const GElem* args, MElem v) {
    std::size_t idx = 0;
    for (unsigned k = 0; k < degree_; ++k) {
        if (args[k] == 0) {
            if (v != 0) throw std::invalid_argument("cochain: normalized slot must be zero");
            return;
        }
        idx = idx * base_ + (args[k] - 1);
    }
    vals_[idx] = v;
}

Cochain::MElem Cochain::operator()(std::initializer_list<GElem> args) const {
    if (args.size() != degree_) throw std::invalid_argument("cochain: wrong number of arguments");
    return at(std::data(args));
}

bool Cochain::is_zero() const {
    for (auto v : vals_)
        if (v) return false;
    return true;
}

void Cochain::check_compatible(const Cochain& o) const {
    if (degree_ != o.degree_ || group()->order() != o.group()->order() ||
        !module_->same_underlying(*o.module_))
        throw std::invalid_argument("cochain: incompatible operands");
}

bool Cochain::operator==(const Cochain& o) const {
    check_compatible(o);
    return vals_ == o.vals_;
}

Cochain Cochain::operator+(const Cochain& o) const {
    check_compatible(o);
    Cochain r = *this;
    for (std::size_t i = 0; i < vals_.size(); ++i) r.vals_[i] = module_->add(vals_[i], o.vals_[i]);
    return r;
}

Cochain Cochain::operator-(const Cochain& o) const {
    check_compatible(o);
    Cochain r = *this;
    for (std::size_t i = 0; i < vals_.size(); ++i) r.vals_[i] = module_->sub(vals_[i], o.vals_[i]);
    return r;
}

Cochain Cochain::operator-() const {
    Cochain r = *this;
    for (auto& v : r.vals_) v = module_->neg(v);
    return r;
}

Cochain Cochain::scaled(long k) const {
    Cochain r = *this;
    for (auto& v : r.vals_) v = module_->smul(k, v);
    return r;
}

ZnRow Cochain::to_coords() const {
    const std::size_t k = module_->rank();
    ZnRow out(vals_.size() * k);
    for (std::size_t i = 0; i < vals_.size(); ++i) {
        auto c = module_->coords(vals_[i]);
        for (std::size_t j = 0; j < k; ++j) out[i * k + j] = c[j];
    }
    return out;
}

Cochain Cochain::from_coords(ModulePtr module, unsigned degree, const ZnRow& coords) {
    Cochain c(module, degree);
    const std::size_t k = module->rank();
    if (coords.size() != c.vals_.size() * k) throw std::invalid_argument("cochain: coordinate size");
    std::vector<std::uint32_t> buf(k);
    for (std::size_t i = 0; i < c.vals_.size(); ++i) {
        for (std::size_t j = 0; j < k; ++j) buf[j] = coords[i * k + j] % module->orders()[j];
        c.vals_[i] = module->encode(buf);
    }
    return c;
}

namespace {

// dc at one output tuple y[0..i].
GModule::Elem differential_at(const Cochain& c, const GModule& m, const FiniteGroup& g,
                              const FiniteGroup::Elem* y, FiniteGroup::Elem* tmp) {
    const unsigned i = c.degree();
    GModule::Elem acc = m.act(y[0], c.at(y + 1));
    for (unsigned k = 0; k < i; ++k) {
        for (unsigned t = 0; t < k; ++t) tmp[t] = y[t];
        tmp[k] = g.mul(y[k], y[k + 1]);
        for (unsigned t = k + 2; t <= i; ++t) tmp[t - 1] = y[t];
        GModule::Elem v = c.at(tmp);
        acc = ((k + 1) % 2) ? m.sub(acc, v) : m.add(acc, v);
    }
    GModule::Elem last = c.at(y);
    acc = ((i + 1) % 2) ? m.sub(acc, last) : m.add(acc, last);
    return acc;
}

}  // namespace

Cochain differential(const Cochain& c, Exec exec) {
    Cochain out(c.module(), c.degree() + 1);
    const GModule& m = *c.module();
    const FiniteGroup& g = *c.group();
    const unsigned d = c.degree() + 1;
    const std::ptrdiff_t total = static_cast<std::ptrdiff_t>(out.size());
    if (exec == Exec::parallel) {
#pragma omp parallel
        {
            std::vector<FiniteGroup::Elem> y(d + 1), tmp(d + 1);
#pragma omp for schedule(static)
            for (std::ptrdiff_t idx = 0; idx < total; ++idx) {
                out.decode(static_cast<std::size_t>(idx), y.data());
                out.set(static_cast<std::size_t>(idx), differential_at(c, m, g, y.data(), tmp.data()));
            }
        }
    } else {
        std::vector<FiniteGroup::Elem> y(d + 1), tmp(d + 1);
        for (std::ptrdiff_t idx = 0; idx < total; ++idx) {
            out.decode(static_cast<std::size_t>(idx), y.data());
            out.set(static_cast<std::size_t>(idx), differential_at(c, m, g, y.data(), tmp.data()));
        }
    }
    return out;
}

Cochain cup(const Cochain& c, const Cochain& c2, const Pairing& p, ModulePtr out) {
    if (c.group()->order() != c2.group()->order())
        throw std::invalid_argument("cup: cochains on different groups");
    if (!c.module()->same_underlying(*p.left) || !c2.module()->same_underlying(*p.right))
        throw std::invalid_argument("cup: pairing does not match coefficients");
    if (!out) out = p.out;
    if (out->group()->order() != c.group()->order() || !out->same_underlying(*p.out))
        throw std::invalid_argument("cup: output module mismatch");
    const unsigned i = c.degree(), j = c2.degree();
    const FiniteGroup& g = *c.group();
    const GModule& m2 = *c2.module();
    return Cochain::from_function(out, i + j, [&](const FiniteGroup::Elem* y) {
        FiniteGroup::Elem prod = 0;
        for (unsigned k = 0; k < i; ++k) prod = g.mul(prod, y[k]);
        return p(c.at(y), m2.act(prod, c2.at(y + i)));
    });
}

Cochain pullback(const Cochain& c, const GroupHom& f, ModulePtr restricted) {
    if (f.target->order() != c.group()->order())
        throw std::invalid_argument("pullback: homomorphism target mismatch");
    if (!restricted) restricted = c.module()->restrict_along(f);
    const unsigned i = c.degree();
    std::vector<FiniteGroup::Elem> buf(i);
    return Cochain::from_function(restricted, i, [&](const FiniteGroup::Elem* y) {
        for (unsigned k = 0; k < i; ++k) buf[k] = f.images[y[k]];
        return c.at(buf.data());
    });
}

Cochain ad_pullback(const Cochain& c, FiniteGroup::Elem g) {
    const unsigned i = c.degree();
    const FiniteGroup& grp = *c.group();
    std::vector<FiniteGroup::Elem> buf(i);
    return Cochain::from_function(c.module(), i, [&](const FiniteGroup::Elem* y) {
        for (unsigned k = 0; k < i; ++k) buf[k] = grp.conj(g, y[k]);
        return c.at(buf.data());
    });
}

Cochain right_action(const Cochain& c, FiniteGroup::Elem g) {
    Cochain a = ad_pullback(c, g);
    const GModule& m = *c.module();
    auto gi = c.group()->inv(g);
    for (std::size_t idx = 0; idx < a.size(); ++idx) a.set(idx, m.act(gi, a.value(idx)));
    return a;
}

Cochain chain_homotopy_hg(FiniteGroup::Elem g, const Cochain& c) {
    if (c.degree() == 0) throw std::invalid_argument("h_g: degree must be positive");
    const unsigned i = c.degree() - 1;
    const FiniteGroup& grp = *c.group();
    const GModule& m = *c.module();
    const auto ginv = grp.inv(g);
    std::vector<FiniteGroup::Elem> buf(i + 1);
    return Cochain::from_function(c.module(), i, [&](const FiniteGroup::Elem* y) {
        GModule::Elem acc = 0;
        for (unsigned k = 0; k <= i; ++k) {
            for (unsigned t = 0; t < k; ++t) buf[t] = y[t];
            buf[k] = ginv;
            for (unsigned t = k; t < i; ++t) buf[t + 1] = grp.conj(g, y[t]);
            GModule::Elem v = c.at(buf.data());
            acc = (k % 2) ? m.sub(acc, v) : m.add(acc, v);
        }
        return acc;
    });
}

Cochain map_values(const Cochain& c, ModulePtr target,
                   const std::function<GModule::Elem(GModule::Elem)>& f) {
    if (target->group()->order() != c.group()->order())
        throw std::invalid_argument("map_values: group mismatch");
    Cochain out(std::move(target), c.degree());
    for (std::size_t idx = 0; idx < c.size(); ++idx) out.set(idx, f(c.value(idx)));
    return out;
}

}  // namespace dw
