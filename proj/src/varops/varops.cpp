#include "lepage/varops.hpp"

#include <set>

#include "lepage/calculus.hpp"
#include "lepage/errors.hpp"

namespace lepage {

LoweringEndo::Image LoweringEndo::operator()(const MultiIndex& J) const {
    if (!action_) return {};
    return action_(J);
}

Form LoweringEndo::on_theta(int alpha, const MultiIndex& J) const {
    Form out;
    for (const auto& [c, target] : (*this)(J)) out += Form::theta(alpha, target) * c;
    return out;
}

LoweringEndo compose(const LoweringEndo& first, const LoweringEndo& second) {
    return LoweringEndo([first, second](const MultiIndex& J) {
        std::map<MultiIndex, Expr> acc;
        for (const auto& [c1, J1] : first(J))
            for (const auto& [c2, J2] : second(J1)) acc[J2] += c1 * c2;
        LoweringEndo::Image out;
        for (auto& [target, c] : acc)
            if (!c.is_zero()) out.emplace_back(std::move(c), target);
        return out;
    });
}

LoweringEndo s_i(const Chart& chart, int i) {
    chart.check_base_index(i);
    return LoweringEndo([i](const MultiIndex& J) {
        LoweringEndo::Image out;
        if (auto lower = J.minus_unit(i)) out.emplace_back(Expr(J[i]), *lower);
        return out;
    });
}

LoweringEndo s_eta(const Chart& chart, const std::vector<Expr>& eta, int k) {
    if (static_cast<int>(eta.size()) != chart.m())
        throw DimensionError("eta needs " + std::to_string(chart.m()) + " components");
    for (const auto& e : eta)
        if (!is_base_only(chart, e)) throw DomainError("eta must depend on the base coordinates only");
    if (k < 1) throw DomainError("S^eta needs order k >= 1");
    int m = chart.m();
    return LoweringEndo([chart, eta, k, m](const MultiIndex& L) {
        // theta_L gets contributions from every split L = J + K + 1_i, |J| + |K| <= k - 1.
        std::map<MultiIndex, Expr> acc;
        if (L.length() == 0 || L.length() > k) return LoweringEndo::Image{};
        for (int i = 0; i < m; ++i) {
            auto rest = L.minus_unit(i);
            if (!rest) continue;
            for (const auto& K : sub_indices(*rest)) {
                Expr deta = partial_x(chart, eta[static_cast<std::size_t>(i)], K);
                if (deta.is_zero()) continue;
                MultiIndex J = *rest->checked_difference(K);
                Rational c = make_rational(L.factorial(),
                                           J.factorial() * K.factorial() * (K.length() + 1));
                acc[J] += deta * c;
            }
        }
        LoweringEndo::Image out;
        for (auto& [target, c] : acc)
            if (!c.is_zero()) out.emplace_back(std::move(c), target);
        return out;
    });
}

LoweringEndo s_multi(const Chart& chart, const MultiIndex& J) {
    chart.check_multi_index(J);
    auto seq = J.to_sequence();
    if (seq.empty()) {
        return LoweringEndo([](const MultiIndex& L) { return LoweringEndo::Image{{Expr(1), L}}; });
    }
    LoweringEndo out = s_i(chart, seq.front());
    for (std::size_t k = 1; k < seq.size(); ++k) out = compose(out, s_i(chart, seq[k]));
    return out;
}

Form apply(const LoweringEndo& S, const Form& omega) {
    return apply_derivation(
        omega, 0, [](const Expr&) { return Form(); },
        [&](const BasisOneForm& b) {
            if (!b.is_theta()) return Form();
            return S.on_theta(b.index, b.multi);
        });
}

Form s_tilde(const Chart& chart, const MultiIndex& J, const Form& omega) {
    return apply(s_multi(chart, J), omega);
}

Form s_hat(const Chart& chart, const MultiIndex& J, const Form& omega) {
    chart.check_multi_index(J);
    auto seq = J.to_sequence();
    Form out = omega;
    for (auto it = seq.rbegin(); it != seq.rend() && !out.is_zero(); ++it)
        out = apply(s_i(chart, *it), out);
    return out;
}

Form homotopy(const Chart& chart, const Form& omega, HomotopyVariant variant,
              std::optional<std::pair<int, int>> bideg) {
    if (!bideg) {
        if (omega.is_zero()) return Form::zero(omega.degree() - 1);
        bideg = homogeneous_bidegree(omega);
    } else if (!has_bidegree(omega, bideg->first, bideg->second)) {
        throw DomainError("form is not of the stated bidegree");
    }
    auto [p, q] = *bideg;
    int m = chart.m();
    if (p < 1) throw DomainError("homotopy operator needs contact degree p >= 1");
    if (q < 1 || q > m) throw DomainError("homotopy operator needs 1 <= q <= m");

    Form out;
    int top = omega.max_theta_order();
    // S^{I+1_i} kills everything once |I| + 1 exceeds the total lowering capacity.
    int bound = variant == HomotopyVariant::Tilde ? top : p * top;
    for (int i = 0; i < m; ++i) {
        Form Pi;
        for (int r = 0; r + 1 <= bound; ++r) {
            for (const auto& I : multi_indices_of_length(m, r)) {
                MultiIndex J = I.plus_unit(i);
                Form s = variant == HomotopyVariant::Tilde ? s_tilde(chart, J, omega)
                                                           : s_hat(chart, J, omega);
                if (s.is_zero()) continue;
                Integer pf = p;
                if (variant == HomotopyVariant::Hat) mpz_pow_ui(pf.get_mpz_t(), Integer(p).get_mpz_t(), r + 1);
                Rational c = make_rational(factorial(m - q) * factorial(r),
                                           pf * factorial(m - q + r + 1) * I.factorial());
                if (r % 2) c = -c;
                Pi += lie_total(chart, I, s) * c;
            }
        }
        if (!Pi.is_zero()) out += interior_total(chart, i, Pi);
    }
    if (out.is_zero()) return Form::zero(p + q - 1);
    return out;
}

Form p_tilde(const Chart& chart, const Form& omega, std::optional<std::pair<int, int>> bideg) {
    return homotopy(chart, omega, HomotopyVariant::Tilde, bideg);
}

Form p_hat(const Chart& chart, const Form& omega, std::optional<std::pair<int, int>> bideg) {
    return homotopy(chart, omega, HomotopyVariant::Hat, bideg);
}

Form euler_lagrange(const Chart& chart, const Expr& L, int k) {
    if (k < 0) throw DomainError("Lagrangian order must be non-negative");
    if (jet_order(chart, L) > k)
        throw DomainError("Lagrangian depends on jets above the declared order " + std::to_string(k));
    Form out;
    Form w0 = omega0(chart);
    for (int alpha = 0; alpha < chart.n(); ++alpha) {
        Expr e;
        for (const auto& I : multi_indices_up_to(chart.m(), k)) {
            chart.check_order(I);
            Expr dL = partial_u(chart, L, {alpha, I});
            if (dL.is_zero()) continue;
            Expr term = iterated_total(chart, dL, I);
            if (I.length() % 2) e -= term;
            else e += term;
        }
        if (!e.is_zero()) out += wedge(Form::theta(alpha, chart.zero_index()), w0) * e;
    }
    if (out.is_zero()) out = Form::zero(chart.m() + 1);
    return out;
}

Form source_residue(const Chart& chart, const Form& omega) {
    if (!has_bidegree(omega, 1, chart.m()))
        throw DomainError("source residue needs a form of bidegree (1, m)");
    std::set<std::pair<int, MultiIndex>> slots;
    for (const auto& [w, c] : omega.terms())
        for (const auto& b : w)
            if (b.is_theta()) slots.emplace(b.index, b.multi);
    Form out;
    for (const auto& [alpha, I] : slots) {
        Form inner = lie_total(chart, I, interior_jet(chart, alpha, I, omega));
        Form term = wedge(Form::theta(alpha, chart.zero_index()), inner);
        if (I.length() % 2) out -= term;
        else out += term;
    }
    if (out.is_zero()) out = Form::zero(chart.m() + 1);
    return out;
}

bool is_source_form(const Chart& chart, const Form& omega) {
    for (const auto& [w, c] : omega.terms()) {
        if (static_cast<int>(w.size()) != chart.m() + 1) return false;
        if (!w.front().is_theta() || !w.front().multi.is_zero()) return false;
        if (bidegree(w).first != 1) return false;
    }
    return true;
}

}  // namespace lepage
