#include "lepage/expr.hpp"

#include <algorithm>

#include "lepage/errors.hpp"

namespace lepage {

Atom Atom::base(int i) {
    Atom a;
    a.kind_ = AtomKind::Base;
    a.index_ = i;
    return a;
}

Atom Atom::jet(int alpha, const MultiIndex& I) {
    Atom a;
    a.kind_ = AtomKind::Jet;
    a.index_ = alpha;
    a.multi_ = I;
    return a;
}

Atom Atom::gamma(int h, const MultiIndex& K, const MultiIndex& D) {
    if (K.length() < 2)
        throw DomainError("connection atoms need |K| >= 2; |K| = 1 is the Kronecker delta");
    if (K.size() != D.size()) throw DimensionError("connection atom index dimensions differ");
    Atom a;
    a.kind_ = AtomKind::Gamma;
    a.index_ = h;
    a.multi_ = K;
    a.deriv_ = D;
    return a;
}

Atom Atom::formal(int function, int m) { return formal(function, MultiIndex(m), {}); }

Atom Atom::formal(int function, const MultiIndex& D, std::vector<JetVar> deps) {
    Atom a;
    a.kind_ = AtomKind::Formal;
    a.index_ = function;
    a.multi_ = D;
    std::sort(deps.begin(), deps.end());
    a.deps_ = std::move(deps);
    return a;
}

Atom Atom::differentiate_base(int i) const {
    Atom out = *this;
    switch (kind_) {
        case AtomKind::Gamma: out.deriv_ = deriv_.plus_unit(i); return out;
        case AtomKind::Formal: out.multi_ = multi_.plus_unit(i); return out;
        default: throw DomainError("only connection and formal atoms carry derivative records");
    }
}

Atom Atom::differentiate_jet(const JetVar& v) const {
    if (kind_ != AtomKind::Formal) throw DomainError("only formal atoms carry jet derivative records");
    Atom out = *this;
    out.deps_.insert(std::upper_bound(out.deps_.begin(), out.deps_.end(), v), v);
    return out;
}

Atom Atom::head() const {
    switch (kind_) {
        case AtomKind::Gamma: return gamma(index_, multi_);
        case AtomKind::Formal: return formal(index_, multi_.size());
        default: return *this;
    }
}

std::strong_ordering operator<=>(const Atom& a, const Atom& b) {
    if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
    if (auto c = a.index_ <=> b.index_; c != 0) return c;
    if (auto c = a.multi_ <=> b.multi_; c != 0) return c;
    if (auto c = a.deriv_ <=> b.deriv_; c != 0) return c;
    return std::lexicographical_compare_three_way(a.deps_.begin(), a.deps_.end(), b.deps_.begin(),
                                                  b.deps_.end());
}

Monomial::Monomial(const Atom& a, int power) {
    if (power != 0) factors_.emplace_back(a, power);
}

int Monomial::degree_in(const Atom& a) const {
    for (const auto& [atom, p] : factors_)
        if (atom == a) return p;
    return 0;
}

int Monomial::jet_degree() const {
    int d = 0;
    for (const auto& [atom, p] : factors_)
        if (atom.is_jet()) d += p;
    return d;
}

Monomial Monomial::operator*(const Monomial& other) const {
    Monomial out;
    out.factors_.reserve(factors_.size() + other.factors_.size());
    auto i = factors_.begin();
    auto j = other.factors_.begin();
    while (i != factors_.end() && j != other.factors_.end()) {
        auto c = i->first <=> j->first;
        if (c < 0) {
            out.factors_.push_back(*i++);
        } else if (c > 0) {
            out.factors_.push_back(*j++);
        } else {
            int p = i->second + j->second;
            if (p != 0) out.factors_.emplace_back(i->first, p);
            ++i;
            ++j;
        }
    }
    out.factors_.insert(out.factors_.end(), i, factors_.end());
    out.factors_.insert(out.factors_.end(), j, other.factors_.end());
    return out;
}

Monomial Monomial::without(std::size_t k, int power) const {
    Monomial out = *this;
    out.factors_[k].second -= power;
    if (out.factors_[k].second == 0) out.factors_.erase(out.factors_.begin() + static_cast<long>(k));
    return out;
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    // Lower total degree first, then lexicographic in factors.
    int da = 0, db = 0;
    for (const auto& f : a.factors_) da += f.second;
    for (const auto& f : b.factors_) db += f.second;
    if (auto c = da <=> db; c != 0) return c;
    return std::lexicographical_compare_three_way(
        a.factors_.begin(), a.factors_.end(), b.factors_.begin(), b.factors_.end(),
        [](const Monomial::Factor& x, const Monomial::Factor& y) {
            if (auto c = x.first <=> y.first; c != 0) return c;
            return y.second <=> x.second;
        });
}

Expr::Expr(const Rational& c) {
    if (sgn(c) != 0) terms_.emplace(Monomial(), c);
}

Expr::Expr(const Atom& a, int power) { terms_.emplace(Monomial(a, power), Rational(1)); }

Expr::Expr(const Monomial& m, const Rational& c) {
    if (sgn(c) != 0) terms_.emplace(m, c);
}

bool Expr::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

std::optional<Rational> Expr::constant_value() const {
    if (terms_.empty()) return Rational(0);
    if (is_constant()) return terms_.begin()->second;
    return std::nullopt;
}

void Expr::add_term(const Monomial& m, const Rational& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0) terms_.erase(it);
    }
}

Expr& Expr::operator+=(const Expr& other) {
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
}

Expr& Expr::operator-=(const Expr& other) {
    for (const auto& [m, c] : other.terms_) add_term(m, -c);
    return *this;
}

Expr& Expr::operator*=(const Rational& c) {
    if (sgn(c) == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, coeff] : terms_) coeff *= c;
    return *this;
}

Expr operator*(const Expr& a, const Expr& b) {
    Expr out;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, Rational(ca * cb));
    return out;
}

Expr Expr::pow(int n) const {
    if (n < 0) throw DomainError("Expr::pow needs a non-negative exponent; use inverse()");
    Expr out(1);
    for (int k = 0; k < n; ++k) out = out * *this;
    return out;
}

std::vector<Atom> Expr::atoms() const {
    std::vector<Atom> out;
    for (const auto& [m, c] : terms_)
        for (const auto& f : m.factors()) out.push_back(f.first);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool Expr::contains(const Atom& a) const {
    for (const auto& [m, c] : terms_)
        if (m.degree_in(a) != 0) return true;
    return false;
}

}  // namespace lepage
