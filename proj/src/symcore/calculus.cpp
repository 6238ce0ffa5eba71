#include "lepage/calculus.hpp"

#include <algorithm>
#include <set>

#include "lepage/errors.hpp"

namespace lepage {

namespace {

/// Applies the derivation determined by its values on atoms.
template <class AtomDerivative>
Expr derive(const Expr& e, AtomDerivative&& d_atom) {
    Expr out;
    std::map<Atom, Expr> cache;
    for (const auto& [mono, c] : e.terms()) {
        const auto& factors = mono.factors();
        for (std::size_t k = 0; k < factors.size(); ++k) {
            const auto& [atom, p] = factors[k];
            auto it = cache.find(atom);
            if (it == cache.end()) it = cache.emplace(atom, d_atom(atom)).first;
            const Expr& da = it->second;
            if (da.is_zero()) continue;
            Monomial rest = mono.without(k, 1);
            Rational coeff = c * p;
            for (const auto& [m2, c2] : da.terms()) out.add_term(rest * m2, Rational(coeff * c2));
        }
    }
    return out;
}

Expr d_atom_base(const Chart& chart, const Atom& a, int i) {
    switch (a.kind()) {
        case AtomKind::Base: return a.index() == i ? Expr(1) : Expr();
        case AtomKind::Jet: return {};
        case AtomKind::Gamma: return Expr(a.differentiate_base(i));
        case AtomKind::Formal:
            return chart.depends_on_base(a.index(), i) ? Expr(a.differentiate_base(i)) : Expr();
    }
    return {};
}

Expr d_atom_jet(const Chart& chart, const Atom& a, const JetVar& v) {
    switch (a.kind()) {
        case AtomKind::Jet: return a.jet_var() == v ? Expr(1) : Expr();
        case AtomKind::Formal:
            return chart.depends_on_jet(a.index(), v) ? Expr(a.differentiate_jet(v)) : Expr();
        default: return {};
    }
}

Expr d_atom_total(const Chart& chart, const Atom& a, int i) {
    switch (a.kind()) {
        case AtomKind::Base: return a.index() == i ? Expr(1) : Expr();
        case AtomKind::Jet: {
            MultiIndex up = a.multi().plus_unit(i);
            chart.check_order(up);
            return Expr::u(a.index(), up);
        }
        case AtomKind::Gamma: return Expr(a.differentiate_base(i));
        case AtomKind::Formal: {
            Expr out = d_atom_base(chart, a, i);
            for (const auto& v : chart.jet_dependencies(a.index())) {
                MultiIndex up = v.index.plus_unit(i);
                chart.check_order(up);
                out += Expr::u(v.alpha, up) * Expr(a.differentiate_jet(v));
            }
            return out;
        }
    }
    return {};
}

}  // namespace

Expr partial(const Chart& chart, const Expr& e, const Atom& a) {
    if (a.is_base()) {
        chart.check_base_index(a.index());
        return derive(e, [&](const Atom& b) { return d_atom_base(chart, b, a.index()); });
    }
    if (a.is_jet()) {
        chart.check_alpha(a.index());
        chart.check_multi_index(a.multi());
        JetVar v = a.jet_var();
        return derive(e, [&](const Atom& b) { return d_atom_jet(chart, b, v); });
    }
    return derive(e, [&](const Atom& b) { return b == a ? Expr(1) : Expr(); });
}

Expr partial_x(const Chart& chart, const Expr& e, const MultiIndex& D) {
    Expr out = e;
    for (int i : D.to_sequence()) out = partial_x(chart, out, i);
    return out;
}

Expr total_derivative(const Chart& chart, const Expr& e, int i) {
    chart.check_base_index(i);
    return derive(e, [&](const Atom& a) { return d_atom_total(chart, a, i); });
}

Expr iterated_total(const Chart& chart, const Expr& e, const MultiIndex& I) {
    chart.check_multi_index(I);
    Expr out = e;
    for (int i : I.to_sequence()) {
        if (out.is_zero()) break;
        out = total_derivative(chart, out, i);
    }
    return out;
}

Expr leibniz_dI(const Chart& chart, const Expr& f, const Expr& g, const MultiIndex& I) {
    chart.check_multi_index(I);
    Expr out;
    for (const auto& K : sub_indices(I)) {
        MultiIndex rest = *I.checked_difference(K);
        Rational c(multi_binomial(I, K));
        out += iterated_total(chart, f, K) * iterated_total(chart, g, rest) * c;
    }
    return out;
}

BinomialCheck weighted_binomial_check(const MultiIndex& I, int p) {
    if (p < 0) throw DomainError("weighted binomial check needs p >= 0");
    Rational lhs(0);
    for (const auto& K : sub_indices(I)) {
        int len = K.length();
        Rational term = make_rational(multi_binomial(I, K), Integer(len + p + 1));
        if (len % 2) lhs -= term;
        else lhs += term;
    }
    Rational rhs = make_rational(factorial(p) * factorial(I.length()),
                                 factorial(I.length() + p + 1));
    return {lhs, rhs, lhs == rhs};
}

Expr inverse(const Chart& chart, const Expr& e) {
    if (e.size() != 1) throw DomainError("only single-term expressions can be inverted");
    const auto& [mono, c] = *e.terms().begin();
    Monomial inv;
    for (const auto& [atom, p] : mono.factors()) {
        if (!chart.is_invertible(atom))
            throw DomainError("cannot invert a factor that is not a nonvanishing formal function");
        inv = inv * Monomial(atom, -p);
    }
    return Expr(inv, Rational(1 / c));
}

Expr power(const Chart& chart, const Expr& e, int n) {
    if (n >= 0) return e.pow(n);
    return inverse(chart, e).pow(-n);
}

Expr substitute(const Chart& chart, const Expr& e, const std::map<Atom, Expr>& bindings) {
    std::map<Atom, Expr> heads;  // function and connection-coefficient bindings
    for (const auto& [key, value] : bindings) {
        bool is_head = (key.kind() == AtomKind::Formal && key.is_plain_formal()) ||
                       (key.kind() == AtomKind::Gamma && key.gamma_derivative().is_zero());
        for (const auto& a : value.atoms()) {
            if (a == key || (is_head && a.kind() == key.kind() && a.head() == key))
                throw SubstitutionError("binding refers to the atom it replaces");
        }
        if (is_head) heads.emplace(key, value);
    }

    std::map<Atom, Expr> replacement;
    auto replace = [&](const Atom& a) -> const Expr& {
        auto it = replacement.find(a);
        if (it != replacement.end()) return it->second;
        Expr r;
        if (auto b = bindings.find(a); b != bindings.end()) {
            r = b->second;
        } else if ((a.kind() == AtomKind::Formal || a.kind() == AtomKind::Gamma) &&
                   heads.count(a.head())) {
            r = heads.at(a.head());
            if (a.kind() == AtomKind::Formal) {
                r = partial_x(chart, r, a.multi());
                for (const auto& v : a.jet_derivatives()) r = partial_u(chart, r, v);
            } else {
                r = partial_x(chart, r, a.gamma_derivative());
            }
        } else {
            r = Expr(a);
        }
        return replacement.emplace(a, std::move(r)).first->second;
    };

    Expr out;
    for (const auto& [mono, c] : e.terms()) {
        Expr term(c);
        for (const auto& [atom, p] : mono.factors()) {
            const Expr& r = replace(atom);
            if (p >= 0) {
                term = term * r.pow(p);
            } else {
                try {
                    term = term * inverse(chart, r).pow(-p);
                } catch (const DomainError&) {
                    throw SubstitutionError("substituted value of a negative power is not invertible");
                }
            }
        }
        out += term;
    }
    return out;
}

int jet_order(const Chart& chart, const Expr& e) {
    int order = 0;
    for (const auto& a : e.atoms()) {
        switch (a.kind()) {
            case AtomKind::Jet: order = std::max(order, a.multi().length()); break;
            case AtomKind::Formal: {
                const auto& f = chart.function(a.index());
                if (f.dependence != Dependence::Base) order = std::max(order, f.max_order);
                break;
            }
            default: break;
        }
    }
    return order;
}

bool is_base_only(const Chart& chart, const Expr& e) {
    for (const auto& a : e.atoms()) {
        if (a.is_jet()) return false;
        if (a.kind() == AtomKind::Formal && !chart.jet_dependencies(a.index()).empty()) return false;
    }
    return true;
}

std::vector<JetVar> jet_dependencies(const Chart& chart, const Expr& e) {
    std::set<JetVar> deps;
    for (const auto& a : e.atoms()) {
        if (a.is_jet()) deps.insert(a.jet_var());
        if (a.kind() == AtomKind::Formal)
            for (const auto& v : chart.jet_dependencies(a.index())) deps.insert(v);
    }
    return {deps.begin(), deps.end()};
}

MultiIndexArith mi_arith(const MultiIndex& a, const MultiIndex& b) {
    return {a + b, a.checked_difference(b), a.length(), a.factorial(), a.weight()};
}

}  // namespace lepage
