#include "lepage/lepage.hpp"

#include "lepage/calculus.hpp"
#include "lepage/errors.hpp"

namespace lepage {

namespace {

Rational pair_weight(int i, int j) { return i == j ? Rational(1) : Rational(1, 2); }

MultiIndex pair_index(const Chart& chart, int i, int j) { return chart.unit(i) + chart.unit(j); }

Expr dL(const LagrangianSpec& spec, int alpha, const MultiIndex& I) {
    return partial_u(spec.chart, spec.L, {alpha, I});
}

/// All ordered tuples of length p with entries below n.
std::vector<std::vector<int>> tuples(int n, int p) {
    std::vector<std::vector<int>> out{{}};
    for (int k = 0; k < p; ++k) {
        std::vector<std::vector<int>> next;
        for (const auto& t : out)
            for (int v = 0; v < n; ++v) {
                auto u = t;
                u.push_back(v);
                next.push_back(std::move(u));
            }
        out = std::move(next);
    }
    return out;
}

Form caratheodory_from_factors(const LagrangianSpec& spec, const std::vector<Form>& factors) {
    Form out(Expr(1));
    for (const auto& f : factors) out = wedge(out, f);
    return out * power(spec.chart, spec.L, 1 - spec.chart.m());
}

}  // namespace

void LagrangianSpec::validate() const {
    if (k < 0) throw DomainError("Lagrangian order must be non-negative");
    if (k > chart.order_cap()) throw OrderCapError("declared order exceeds the jet-order cap");
    if (jet_order(chart, L) > k)
        throw DomainError("Lagrangian depends on jets above the declared order " + std::to_string(k));
}

Form LagrangianSpec::lambda() const { return omega0(chart) * L; }

LepageReport lepage_report(const LagrangianSpec& spec, const Form& theta) {
    LepageReport r;
    r.theta = theta;
    r.d_theta = d_full(spec.chart, theta);
    Form one = contact_component(r.d_theta, 1);
    r.one_contact_is_source = is_source_form(spec.chart, one);
    r.horizontal_part_equals_lambda = horizontalize(theta) == spec.lambda();
    return r;
}

Form principal_lepage(const LagrangianSpec& spec) {
    spec.validate();
    const Chart& chart = spec.chart;
    int m = chart.m(), k = spec.k;
    Form out = spec.lambda();
    for (int j = 0; j < m; ++j) {
        Form wj = omega_basis(chart, {j});
        for (const auto& J : multi_indices_up_to(m, k - 1)) {
            for (const auto& K : multi_indices_up_to(m, k - J.length() - 1)) {
                MultiIndex top = J + K.plus_unit(j);
                int lj = J.length(), lk = K.length();
                Rational c = make_rational(top.factorial() * factorial(lj) * factorial(lk),
                                           factorial(lj + lk + 1) * J.factorial() * K.factorial());
                if (lj % 2) c = -c;
                for (int alpha = 0; alpha < chart.n(); ++alpha) {
                    Expr d = dL(spec, alpha, top);
                    if (d.is_zero()) continue;
                    Expr coeff = iterated_total(chart, d, J) * c;
                    out += wedge(Form::theta(alpha, K), wj) * coeff;
                }
            }
        }
    }
    return out;
}

Form principal_lepage_via_homotopy(const LagrangianSpec& spec, HomotopyVariant variant) {
    spec.validate();
    Form lam = spec.lambda();
    Form dv = d_v(spec.chart, lam);
    return lam - homotopy(spec.chart, dv, variant, std::make_pair(1, spec.chart.m()));
}

Form poincare_cartan(const LagrangianSpec& spec) {
    spec.validate();
    if (spec.k > 1) throw DomainError("the Poincare-Cartan form needs a first order Lagrangian");
    const Chart& chart = spec.chart;
    Form out = spec.lambda();
    for (int j = 0; j < chart.m(); ++j)
        for (int alpha = 0; alpha < chart.n(); ++alpha) {
            Expr d = dL(spec, alpha, chart.unit(j));
            if (!d.is_zero())
                out += wedge(Form::theta(alpha, chart.zero_index()), omega_basis(chart, {j})) * d;
        }
    return out;
}

Form caratheodory(const LagrangianSpec& spec) {
    spec.validate();
    if (spec.k > 1) throw DomainError("the Caratheodory form needs a first order Lagrangian");
    const Chart& chart = spec.chart;
    std::vector<Form> factors;
    for (int j = 0; j < chart.m(); ++j) {
        Form f = Form::dx(j) * spec.L;
        for (int alpha = 0; alpha < chart.n(); ++alpha)
            f += Form::theta(alpha, chart.zero_index()) * dL(spec, alpha, chart.unit(j));
        factors.push_back(f);
    }
    return caratheodory_from_factors(spec, factors);
}

Form caratheodory2(const LagrangianSpec& spec) {
    spec.validate();
    if (spec.k > 2) throw DomainError("the second order Caratheodory form needs k <= 2");
    const Chart& chart = spec.chart;
    int m = chart.m();
    std::vector<Form> factors;
    for (int j = 0; j < m; ++j) {
        Form f = Form::dx(j) * spec.L;
        for (int alpha = 0; alpha < chart.n(); ++alpha) {
            Expr c0 = dL(spec, alpha, chart.unit(j));
            for (int i = 0; i < m; ++i) {
                Expr d2 = dL(spec, alpha, pair_index(chart, i, j)) * pair_weight(i, j);
                if (d2.is_zero()) continue;
                c0 -= total_derivative(chart, d2, i);
                f += Form::theta(alpha, chart.unit(i)) * d2;
            }
            f += Form::theta(alpha, chart.zero_index()) * c0;
        }
        factors.push_back(f);
    }
    return caratheodory_from_factors(spec, factors);
}

Form fundamental_first_order(const LagrangianSpec& spec) {
    spec.validate();
    if (spec.k != 1) throw DomainError("the fundamental Lepage equivalent is built for k = 1");
    const Chart& chart = spec.chart;
    int m = chart.m(), n = chart.n();
    Form out = spec.lambda();
    for (int p = 1; p <= std::min(m, n); ++p) {
        Rational c = make_rational(Integer(1), factorial(p) * factorial(p));
        for (const auto& alphas : tuples(n, p))
            for (const auto& js : tuples(m, p)) {
                Form w = omega_basis(chart, js);
                if (w.is_zero()) continue;
                Expr d = spec.L;
                for (int k = 0; k < p && !d.is_zero(); ++k)
                    d = partial_u(chart, d, {alphas[static_cast<std::size_t>(k)], chart.unit(js[static_cast<std::size_t>(k)])});
                if (d.is_zero()) continue;
                Form thetas(Expr(1));
                for (int a : alphas) thetas = wedge(thetas, Form::theta(a, chart.zero_index()));
                if (thetas.is_zero()) continue;
                out += wedge(thetas, w) * (d * c);
            }
    }
    return out;
}

LagrangianSpec vainberg_tonti(const Chart& chart, const Form& source) {
    if (!is_source_form(chart, source)) throw DomainError("Vainberg-Tonti needs a source form");
    Expr L;
    for (const auto& [word, c] : source.terms()) {
        int alpha = word.front().index;
        Expr integrated;
        for (const auto& [mono, coeff] : c.terms()) {
            int degree = 0;
            for (const auto& [atom, power] : mono.factors()) {
                if (atom.is_jet()) {
                    degree += power;
                } else if (atom.kind() == AtomKind::Formal &&
                           !chart.jet_dependencies(atom.index()).empty()) {
                    throw UnsupportedInputError(
                        "Vainberg-Tonti integration needs coefficients polynomial in the jets");
                }
            }
            integrated.add_term(mono, Rational(coeff / (degree + 1)));
        }
        L += chart.u(alpha) * integrated;
    }
    return {chart, L, jet_order(chart, L)};
}

Form extend(const Chart& chart, const Form& theta, const std::vector<HomotopyVariant>& rows) {
    int m = chart.m();
    auto parts = contact_decompose(theta);
    for (const auto& [bd, f] : parts)
        if (bd.first > 1) throw DomainError("extension needs lambda plus a 1-contact form");
    Form out = theta;
    Form current = contact_component(theta, 1);
    for (int p = 1; p <= m - 1; ++p) {
        if (current.is_zero()) break;
        HomotopyVariant v = static_cast<std::size_t>(p - 1) < rows.size()
                                ? rows[static_cast<std::size_t>(p - 1)]
                                : HomotopyVariant::Tilde;
        // d_v moves row p to row p + 1, P lowers the horizontal degree back
        Form dv = d_v(chart, current);
        current = -homotopy(chart, dv, v, std::make_pair(p + 1, m - p));
        out += current;
    }
    return out;
}

Construction construction_from_name(const std::string& name) {
    if (name == "principal") return Construction::Principal;
    if (name == "pc" || name == "poincare-cartan") return Construction::PoincareCartan;
    if (name == "caratheodory") return Construction::Caratheodory;
    if (name == "caratheodory2") return Construction::Caratheodory2;
    if (name == "fundamental") return Construction::Fundamental;
    if (name == "extend" || name == "extended") return Construction::Extended;
    throw DomainError("unknown construction '" + name + "'");
}

std::string construction_name(Construction c) {
    switch (c) {
        case Construction::Principal: return "principal";
        case Construction::PoincareCartan: return "pc";
        case Construction::Caratheodory: return "caratheodory";
        case Construction::Caratheodory2: return "caratheodory2";
        case Construction::Fundamental: return "fundamental";
        case Construction::Extended: return "extend";
    }
    return "principal";
}

Form construct(const LagrangianSpec& spec, Construction c) {
    switch (c) {
        case Construction::Principal: return principal_lepage(spec);
        case Construction::PoincareCartan: return poincare_cartan(spec);
        case Construction::Caratheodory: return caratheodory(spec);
        case Construction::Caratheodory2: return caratheodory2(spec);
        case Construction::Fundamental: return fundamental_first_order(spec);
        case Construction::Extended: return extend(spec.chart, principal_lepage(spec));
    }
    return principal_lepage(spec);
}

ClosureReport closure_check(const LagrangianSpec& spec, Construction base) {
    ClosureReport r;
    r.el_form = euler_lagrange(spec.chart, spec.L, spec.k);
    r.is_null = r.el_form.is_zero();
    Form start = base == Construction::Extended ? principal_lepage(spec) : construct(spec, base);
    // only at most 1-contact forms are extended; the others are taken as they are
    bool one_contact = true;
    for (const auto& [bd, f] : contact_decompose(start))
        if (bd.first > 1) one_contact = false;
    r.theta_f = one_contact ? extend(spec.chart, start) : start;
    r.d_theta_f = d_full(spec.chart, r.theta_f);
    return r;
}

DifferenceDecomposition lepage_difference_decompose(const Chart& chart, const Form& t1,
                                                    const Form& t2) {
    if (horizontalize(t1) != horizontalize(t2))
        throw DomainError("the two forms have different horizontal parts");
    if (contact_component(d_full(chart, t1), 1) != contact_component(d_full(chart, t2), 1))
        throw DomainError("the two forms give different Euler-Lagrange forms");
    int m = chart.m();
    Form theta = t1 - t2;
    Form one = contact_component(theta, 1);
    DifferenceDecomposition out;
    if (m >= 2) out.psi = p_tilde(chart, one, std::make_pair(1, m - 1));
    else out.psi = Form::zero(m - 1);
    out.remainder = theta - d_full(chart, out.psi);
    if (out.remainder.is_zero()) out.remainder = Form::zero(m);
    out.at_least_two_contact = true;
    for (const auto& [bd, f] : contact_decompose(out.remainder))
        if (bd.first < 2) out.at_least_two_contact = false;
    return out;
}

}  // namespace lepage
