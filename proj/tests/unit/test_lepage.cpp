#include "doctest.h"

#include "../support/random_forms.hpp"
#include "lepage/calculus.hpp"
#include "lepage/errors.hpp"
#include "lepage/lepage.hpp"

using namespace lepage;

namespace {

MultiIndex mi(int a, int b) { return MultiIndex{a, b}; }

LagrangianSpec formal_spec(int m, int n, int k, bool nonvanishing = false) {
    Chart chart(m, n);
    Atom L = chart.declare("L", k, nonvanishing);
    return {chart, Expr(L), k};
}

Expr dLdu(const LagrangianSpec& s, int alpha, const MultiIndex& I) {
    return partial_u(s.chart, s.L, {alpha, I});
}

// L omega_0 + dL/du_j theta ^ omega_j, written out directly
Form pc_by_hand(const LagrangianSpec& s) {
    const Chart& c = s.chart;
    Form out = omega0(c) * s.L;
    for (int a = 0; a < c.n(); ++a)
        for (int j = 0; j < c.m(); ++j)
            out += wedge(Form::theta(a, c.zero_index()), omega_basis(c, {j})) * dLdu(s, a, c.unit(j));
    return out;
}

// the k = 2 display with the 1/#(ij) weights
Form second_order_by_hand(const LagrangianSpec& s) {
    const Chart& c = s.chart;
    Form out = omega0(c) * s.L;
    for (int a = 0; a < c.n(); ++a)
        for (int j = 0; j < c.m(); ++j) {
            Form factor = Form::theta(a, c.zero_index()) * dLdu(s, a, c.unit(j));
            for (int i = 0; i < c.m(); ++i) {
                Rational w = i == j ? Rational(1) : Rational(1, 2);
                Expr d2 = dLdu(s, a, c.unit(i) + c.unit(j));
                factor -= Form::theta(a, c.zero_index()) * (total_derivative(c, d2, i) * w);
                factor += Form::theta(a, c.unit(i)) * (d2 * w);
            }
            out += wedge(factor, omega_basis(c, {j}));
        }
    return out;
}

void check_lepage(const LagrangianSpec& s, const Form& theta) {
    auto r = lepage_report(s, theta);
    CHECK(r.horizontal_part_equals_lambda);
    CHECK(r.one_contact_is_source);
    CHECK(contact_component(r.d_theta, 1) == euler_lagrange(s.chart, s.L, s.k));
}

}  // namespace

TEST_CASE("principal Lepage equivalent matches the displayed low order cases") {
    auto s1 = formal_spec(2, 1, 1);
    CHECK(principal_lepage(s1) == pc_by_hand(s1));
    CHECK(poincare_cartan(s1) == pc_by_hand(s1));
    auto s2 = formal_spec(2, 2, 2);
    CHECK(principal_lepage(s2) == second_order_by_hand(s2));
    auto s3 = formal_spec(3, 1, 2);
    CHECK(principal_lepage(s3) == second_order_by_hand(s3));

    Chart c(2, 1);
    Expr u10 = c.u(0, mi(1, 0)), u01 = c.u(0, mi(0, 1));
    LagrangianSpec dir{c, (u10 * u10 + u01 * u01) * Rational(1, 2), 1};
    Form th = Form::theta(0, mi(0, 0));
    CHECK(principal_lepage(dir) == omega0(c) * dir.L + wedge(th, Form::dx(1)) * u10 -
                                       wedge(th, Form::dx(0)) * u01);
}

TEST_CASE("principal Lepage equivalent equals lambda - P d_v lambda") {
    for (int k = 1; k <= 3; ++k) {
        auto s = formal_spec(2, 1, k);
        CHECK(principal_lepage_via_homotopy(s) == principal_lepage(s));
        CHECK(principal_lepage_via_homotopy(s, HomotopyVariant::Hat) == principal_lepage(s));
        check_lepage(s, principal_lepage(s));
    }
    auto s = formal_spec(3, 2, 2);
    CHECK(principal_lepage_via_homotopy(s) == principal_lepage(s));
    Chart c(2, 1);
    LagrangianSpec constant{c, Expr(Rational(5, 3)), 2};
    CHECK(principal_lepage_via_homotopy(constant) == omega0(c) * Rational(5, 3));
}

TEST_CASE("Caratheodory forms") {
    auto s1 = formal_spec(1, 2, 1);
    CHECK(caratheodory(s1) == pc_by_hand(s1));
    auto s = formal_spec(2, 1, 1, true);
    Form car = caratheodory(s);
    check_lepage(s, car);
    auto s2 = formal_spec(2, 2, 1, true);
    check_lepage(s2, caratheodory(s2));
    CHECK_THROWS_AS(caratheodory(formal_spec(2, 1, 1, false)), DomainError);

    // second order: a first order L gives back the first order form
    LagrangianSpec lifted{s.chart, s.L, 2};
    CHECK(caratheodory2(lifted) == car);
    auto t = formal_spec(2, 1, 2, true);
    check_lepage(t, caratheodory2(t));
    // m = 1: a single factor, the principal form of the second order Lagrangian
    auto line = formal_spec(1, 1, 2, true);
    CHECK(caratheodory2(line) == second_order_by_hand(line));
}

TEST_CASE("fundamental Lepage equivalent") {
    auto s = formal_spec(2, 1, 1);
    CHECK(fundamental_first_order(s) == pc_by_hand(s));
    auto s22 = formal_spec(2, 2, 1);
    Form f = fundamental_first_order(s22);
    check_lepage(s22, f);
    CHECK(horizontalize(f) == omega0(s22.chart) * s22.L);
    CHECK(contact_component(f, 2) != Form());

    Chart c(2, 2);
    Expr jac = c.u(0, mi(1, 0)) * c.u(1, mi(0, 1)) - c.u(0, mi(0, 1)) * c.u(1, mi(1, 0));
    LagrangianSpec null{c, jac, 1};
    CHECK(d_full(c, fundamental_first_order(null)).is_zero());
    CHECK_THROWS_AS(fundamental_first_order(formal_spec(2, 1, 2)), DomainError);
}

TEST_CASE("extension of the Poincare-Cartan form is the fundamental form") {
    for (auto [m, n] : {std::pair{2, 1}, std::pair{2, 2}, std::pair{3, 1}, std::pair{3, 2}}) {
        auto s = formal_spec(m, n, 1);
        Form ext = extend(s.chart, poincare_cartan(s));
        CHECK_MESSAGE(ext == fundamental_first_order(s), "m=" << m << " n=" << n);
    }
    auto line = formal_spec(1, 2, 1);
    CHECK(extend(line.chart, poincare_cartan(line)) == poincare_cartan(line));
    auto s = formal_spec(2, 2, 1);
    CHECK_THROWS_AS(extend(s.chart, fundamental_first_order(s)), DomainError);
}

TEST_CASE("extended second order forms are Lepage equivalents") {
    auto s = formal_spec(2, 2, 2);
    Form ext = extend(s.chart, principal_lepage(s), {HomotopyVariant::Hat});
    check_lepage(s, ext);
    CHECK(ext == extend(s.chart, principal_lepage(s)));  // row 2 of a 1-contact input: operators agree
}

TEST_CASE("Vainberg-Tonti Lagrangian") {
    Chart c(2, 1);
    Form src = wedge(Form::theta(0, mi(0, 0)), omega0(c));
    CHECK(vainberg_tonti(c, src * (2 * c.u(0))).L == c.u(0) * c.u(0));
    CHECK(vainberg_tonti(c, src * c.x(0)).L == c.x(0) * c.u(0));
    CHECK(vainberg_tonti(c, Form::zero(3)).L.is_zero());

    testing_support::RandomForms gen(c, 3, 2);
    for (int t = 0; t < 5; ++t) {
        Expr L = gen.poly(3, 3);
        Form el = euler_lagrange(c, L, 2);
        auto vt = vainberg_tonti(c, el);
        CHECK(euler_lagrange(c, vt.L, vt.k) == el);
    }
    Chart f(2, 1);
    Atom F = f.declare("F", 1);
    CHECK_THROWS_AS(vainberg_tonti(f, src * Expr(F)), UnsupportedInputError);
    CHECK_THROWS_AS(vainberg_tonti(c, Form::dx(0) * c.u(0) + Form::zero(1)), DomainError);
}

TEST_CASE("closure property") {
    Chart c(2, 2);
    Expr jac = c.u(0, mi(1, 0)) * c.u(1, mi(0, 1)) - c.u(0, mi(0, 1)) * c.u(1, mi(1, 0));
    auto r = closure_check({c, jac, 1});
    CHECK(r.is_null);
    CHECK(r.d_theta_f.is_zero());

    auto sq = closure_check({c, c.u(0) * c.u(0), 1});
    CHECK_FALSE(sq.is_null);
    CHECK_FALSE(sq.d_theta_f.is_zero());

    Chart one(2, 1);
    auto td = closure_check({one, one.u(0, mi(1, 0)), 1});
    CHECK(td.is_null);
    CHECK(td.d_theta_f.is_zero());
    // second order total divergence d_1(u u_2) is null as well
    Expr div = total_derivative(c, c.u(0) * c.u(1, mi(0, 1)), 0);
    auto r2 = closure_check({c, div, 2});
    CHECK(r2.is_null);
    CHECK(r2.d_theta_f.is_zero());
}

TEST_CASE("difference of two Lepage equivalents") {
    auto s = formal_spec(2, 2, 1);
    Form pc = poincare_cartan(s);
    auto same = lepage_difference_decompose(s.chart, pc, pc);
    CHECK(same.psi.is_zero());
    CHECK(same.remainder.is_zero());

    auto d = lepage_difference_decompose(s.chart, fundamental_first_order(s), pc);
    CHECK(d.at_least_two_contact);
    CHECK(d.remainder == fundamental_first_order(s) - pc - d_full(s.chart, d.psi));

    // shifting by d of a contact 1-form
    Form eta = Form::theta(0, mi(0, 0)) * s.chart.x(1);
    Form shifted = pc + d_full(s.chart, eta);
    auto e = lepage_difference_decompose(s.chart, shifted, pc);
    CHECK(e.at_least_two_contact);

    CHECK_THROWS_AS(lepage_difference_decompose(s.chart, pc, pc * Rational(2)), DomainError);
}
