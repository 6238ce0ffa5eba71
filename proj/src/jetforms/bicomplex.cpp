#include "lepage/bicomplex.hpp"

#include "lepage/calculus.hpp"
#include "lepage/errors.hpp"

namespace lepage {

namespace {

Form none(const Expr&) { return {}; }

}  // namespace

Form d_h(const Chart& chart, const Form& w) {
    auto on_coeff = [&](const Expr& c) {
        Form out;
        for (int i = 0; i < chart.m(); ++i) out += Form::dx(i) * total_derivative(chart, c, i);
        return out;
    };
    auto on_factor = [&](const BasisOneForm& b) {
        Form out;
        if (!b.is_theta()) return out;
        for (int j = 0; j < chart.m(); ++j) {
            MultiIndex up = b.multi.plus_unit(j);
            chart.check_order(up);
            out += wedge(Form::dx(j), Form::theta(b.index, up));
        }
        return out;
    };
    return apply_derivation(w, 1, on_coeff, on_factor);
}

Form d_v(const Chart& chart, const Form& w) {
    auto on_coeff = [&](const Expr& c) {
        Form out;
        for (const auto& v : jet_dependencies(chart, c)) {
            Expr dc = partial_u(chart, c, v);
            if (!dc.is_zero()) out += Form::theta(v.alpha, v.index) * dc;
        }
        return out;
    };
    return apply_derivation(w, 1, on_coeff, [](const BasisOneForm&) { return Form(); });
}

Form d_full(const Chart& chart, const Form& w) { return d_h(chart, w) + d_v(chart, w); }

Form interior_total(const Chart& chart, int i, const Form& w) {
    chart.check_base_index(i);
    return apply_derivation(w, -1, none, [&](const BasisOneForm& b) {
        return (b.is_dx() && b.index == i) ? Form(Expr(1)) : Form();
    });
}

Form interior_jet(const Chart& chart, int alpha, const MultiIndex& I, const Form& w) {
    chart.check_alpha(alpha);
    chart.check_multi_index(I);
    return apply_derivation(w, -1, none, [&](const BasisOneForm& b) {
        return (b.is_theta() && b.index == alpha && b.multi == I) ? Form(Expr(1)) : Form();
    });
}

Form lie_total(const Chart& chart, int i, const Form& w) {
    chart.check_base_index(i);
    auto on_coeff = [&](const Expr& c) { return Form(total_derivative(chart, c, i)); };
    auto on_factor = [&](const BasisOneForm& b) {
        if (!b.is_theta()) return Form();
        MultiIndex up = b.multi.plus_unit(i);
        chart.check_order(up);
        return Form::theta(b.index, up);
    };
    return apply_derivation(w, 0, on_coeff, on_factor);
}

Form lie_total(const Chart& chart, const MultiIndex& I, const Form& w) {
    Form out = w;
    for (int i : I.to_sequence()) {
        if (out.is_zero()) break;
        out = lie_total(chart, i, out);
    }
    return out;
}

std::map<std::pair<int, int>, Form> contact_decompose(const Form& w) {
    std::map<std::pair<int, int>, Form> out;
    for (const auto& [word, c] : w.terms()) out[bidegree(word)].add_term(word, c);
    return out;
}

Form contact_component(const Form& w, int p) {
    Form out = w.filter([p](const Word& word) { return bidegree(word).first == p; });
    if (out.is_zero()) out = Form::zero(w.degree());
    return out;
}

Form horizontalize(const Form& w) { return contact_component(w, 0); }

Form omega_basis(const Chart& chart, const std::vector<int>& indices) {
    Word all;
    for (int i = 0; i < chart.m(); ++i) all.push_back(BasisOneForm::dx(i));
    Form out(all, Expr(1));
    for (int j : indices) out = interior_total(chart, j, out);
    return out;
}

bool has_bidegree(const Form& w, int p, int q) {
    for (const auto& [word, c] : w.terms())
        if (bidegree(word) != std::make_pair(p, q)) return false;
    return true;
}

std::pair<int, int> homogeneous_bidegree(const Form& w) {
    if (w.is_zero()) throw DomainError("the zero form has no bidegree");
    auto bd = bidegree(w.terms().begin()->first);
    if (!has_bidegree(w, bd.first, bd.second))
        throw DomainError("form is not homogeneous in contact bidegree");
    return bd;
}

}  // namespace lepage
