#pragma once

#include <map>
#include <utility>
#include <vector>

#include "lepage/chart.hpp"
#include "lepage/form.hpp"

namespace lepage {

/// Applies the derivation of degree `deg` fixed by its action on coefficients
/// (`on_coeff`: Expr -> Form of degree `deg`) and on basis one-forms
/// (`on_factor`: BasisOneForm -> Form of degree 1 + deg), with the graded
/// Leibniz rule D(a ^ b) = Da ^ b + (-1)^{deg |a|} a ^ Db.
template <class CoeffFn, class FactorFn>
Form apply_derivation(const Form& form, int deg, CoeffFn&& on_coeff, FactorFn&& on_factor) {
    Form out;
    std::map<BasisOneForm, Form> images;
    for (const auto& [word, c] : form.terms()) {
        Form coeff_image = on_coeff(c);
        if (!coeff_image.is_zero()) out += wedge(coeff_image, Form(word, Expr(1)));
        for (std::size_t k = 0; k < word.size(); ++k) {
            auto it = images.find(word[k]);
            if (it == images.end()) it = images.emplace(word[k], on_factor(word[k])).first;
            if (it->second.is_zero()) continue;
            Word prefix(word.begin(), word.begin() + static_cast<long>(k));
            Word suffix(word.begin() + static_cast<long>(k) + 1, word.end());
            Form piece = wedge(wedge(Form(prefix, c), it->second), Form(suffix, Expr(1)));
            if ((deg % 2 != 0) && (k % 2 != 0)) out -= piece;
            else out += piece;
        }
    }
    if (out.is_zero()) out = Form::zero(form.degree() + deg);
    return out;
}

/// d_h f = (d_i f) dx^i for functions, d_h theta^a_I = dx^j ^ theta^a_{I+1_j}.
Form d_h(const Chart& chart, const Form& w);
/// d_v f = (df/du^a_I) theta^a_I, d_v theta = d_v dx = 0.
Form d_v(const Chart& chart, const Form& w);
Form d_full(const Chart& chart, const Form& w);

/// Interior product with the total derivative d/dx^i.
Form interior_total(const Chart& chart, int i, const Form& w);
/// Interior product with d/du^alpha_I.
Form interior_jet(const Chart& chart, int alpha, const MultiIndex& I, const Form& w);

/// Lie derivative along d/dx^i: d_i on coefficients, theta_I -> theta_{I+1_i}.
Form lie_total(const Chart& chart, int i, const Form& w);
/// Iterated lie_total over the entries of I.
Form lie_total(const Chart& chart, const MultiIndex& I, const Form& w);

/// The (p, q) contact components; empty map for the zero form.
std::map<std::pair<int, int>, Form> contact_decompose(const Form& w);
/// The p-contact component.
Form contact_component(const Form& w, int p);
/// The 0-contact (horizontal) component.
Form horizontalize(const Form& w);

/// omega_0 = dx^1 ^ ... ^ dx^m and omega_{j1..jp} = i_{d/dx^jp} ... i_{d/dx^j1} omega_0.
/// Indices are 0-based; a repeated index gives the zero form.
Form omega_basis(const Chart& chart, const std::vector<int>& indices);
inline Form omega0(const Chart& chart) { return omega_basis(chart, {}); }

/// True when w is homogeneous of bidegree (p, q) (the zero form qualifies).
bool has_bidegree(const Form& w, int p, int q);
/// The bidegree of a nonzero homogeneous form; DomainError otherwise.
std::pair<int, int> homogeneous_bidegree(const Form& w);

}  // namespace lepage
