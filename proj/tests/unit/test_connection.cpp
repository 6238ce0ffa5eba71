#include "doctest.h"

#include "../support/generic_forms.hpp"
#include "../support/random_forms.hpp"
#include "lepage/calculus.hpp"
#include "lepage/connection.hpp"
#include "lepage/errors.hpp"

using namespace lepage;
using testing_support::generic_form;
using testing_support::RandomForms;

TEST_CASE("flat prolongation vanishes above level one") {
    Chart chart(3, 1);
    auto G = gamma_prolong(chart, Connection::flat(3), 3);
    for (const auto& [key, v] : G.table()) CHECK(key.second.length() == 1);
    CHECK(G.at(1, chart.unit(1)) == Expr(1));
    CHECK(G.at(0, chart.unit(1)).is_zero());
}

TEST_CASE("one-dimensional prolongation by hand") {
    Chart chart(1, 1);
    Connection c = Connection::concrete(1);
    c.set(chart, 0, 0, 0, chart.x(0));
    auto G = gamma_prolong(chart, c, 3);
    Expr x = chart.x(0);
    CHECK(G.at(0, MultiIndex{2}) == x);
    CHECK(G.at(0, MultiIndex{3}) == Expr(1) + x * x);
    // d/dx (1 + x^2) + x (1 + x^2)
    CHECK(G.at(0, MultiIndex{4}) == x * Expr(3) + x * x * x);
}

TEST_CASE("two-dimensional prolongation averages over the last index") {
    Chart chart(2, 1);
    Connection c = Connection::concrete(2);
    c.set(chart, 0, 0, 1, chart.x(1));
    auto G = gamma_prolong(chart, c, 2);
    Expr y = chart.x(1);
    CHECK(G.at(0, MultiIndex{2, 1}).is_zero());
    CHECK(G.at(0, MultiIndex{1, 2}) == (Expr(1) + y * y) * Rational(2, 3));
    CHECK(G.at(1, MultiIndex{1, 2}).is_zero());
    CHECK(c.coefficient(0, 1, 0) == y);
}

TEST_CASE("connection values must be base functions") {
    Chart chart(2, 1);
    Connection c = Connection::concrete(2);
    CHECK_THROWS_AS(c.set(chart, 0, 0, 1, chart.u(0)), DomainError);
    CHECK_THROWS_AS(gamma_prolong(Chart(3, 1), c, 1), ChartMismatchError);
}

TEST_CASE("flat S_nabla is the slot-tagged local S^i") {
    for (int m = 1; m <= 3; ++m) {
        Chart chart(m, 1, 4);
        RandomForms rnd(chart, 100u + static_cast<unsigned>(m), 3);
        for (int t = 0; t < 6; ++t) {
            int p = 1 + t % 2, q = t % (m + 1);
            Form w = rnd.form(p, q);
            VForm expected;
            for (int i = 0; i < m; ++i) expected.add({i}, apply(s_i(chart, i), w));
            CHECK(s_nabla(chart, Connection::flat(m), VForm(w)) == expected);
        }
    }
}

TEST_CASE("second order S_nabla on first order contact forms") {
    Chart chart(2, 1);
    Connection c = Connection::formal(2);
    for (int h = 0; h < 2; ++h) {
        VForm v = s_nabla(chart, c, VForm(Form::theta(0, chart.unit(h))), 2);
        CHECK(v == VForm({h}, Form::theta(0, chart.zero_index())));
    }
    // above k the action is cut off
    CHECK(s_nabla(chart, c, VForm(Form::theta(0, MultiIndex{3, 0})), 2).is_zero());
}

TEST_CASE("S_nabla on a second order contact form picks up Gamma") {
    Chart chart(2, 1);
    Connection c = Connection::formal(2);
    MultiIndex L{1, 1};
    VForm v = s_nabla(chart, c, VForm(Form::theta(0, L)));
    VForm expected;
    for (int h = 0; h < 2; ++h) {
        expected.add({h}, Form::theta(0, *L.checked_difference(chart.unit(h))));
        expected.add({h}, Form::theta(0, chart.zero_index()) * c.coefficient(h, 0, 1));
    }
    CHECK(v == expected);
}

TEST_CASE("d_h nabla") {
    Chart chart(2, 1, 4);
    RandomForms rnd(chart, 7u, 2);
    Form w = rnd.form(1, 1);
    CHECK(d_h_nabla(chart, Connection::formal(2), VForm(w)) == VForm(d_h(chart, w)));
    VForm slotted({0, 1}, w);
    CHECK(d_h_nabla(chart, Connection::flat(2), slotted) == VForm({0, 1}, d_h(chart, w)));

    Connection c = Connection::formal(2);
    VForm one({1}, w);
    VForm expected({1}, d_h(chart, w));
    for (int k = 0; k < 2; ++k)
        for (int j = 0; j < 2; ++j) expected.add({k}, wedge(Form::dx(j), w) * c.coefficient(k, 1, j));
    CHECK(d_h_nabla(chart, c, one) == expected);
}

TEST_CASE("contraction") {
    Chart chart(2, 1);
    CHECK_THROWS_AS(contract_C(chart, VForm(Form::dx(0))), DomainError);
    CHECK(contract_C(chart, VForm({0}, Form::theta(0, chart.zero_index()))).is_zero());
    Form w = wedge(Form::dx(0), Form::dx(1));
    VForm two({0, 1}, w);
    VForm expected({1}, Form::dx(1));
    expected.add({0}, Form::dx(0) * Expr(-1));
    CHECK(contract_C(chart, two) == expected);
}

TEST_CASE("coefficient rules") {
    CHECK(printed_coefficient(1, 1, 2, 0) == Rational(1, 2));
    CHECK(printed_coefficient(1, 2, 2, 1) == Rational(-1, 2));
    CHECK(printed_coefficient(1, 1, 3, 0) == Rational(2, 3));
    for (int m = 2; m <= 5; ++m) {
        CHECK(appendix_coefficient(1, 1, m, 0) == Rational(1, m));
        CHECK(appendix_coefficient(1, 2, m, 0) == Rational(1, m - 1));
        CHECK(appendix_coefficient(1, 2, m, 1) == Rational(-1, 2 * m * (m - 1)));
    }
    CHECK_THROWS_AS(coefficient_rule("other"), DomainError);
}

TEST_CASE("flat P_nabla on first order forms agrees with P-tilde") {
    for (int m = 2; m <= 3; ++m) {
        Chart chart(m, 1, 4);
        RandomForms rnd(chart, 30u + static_cast<unsigned>(m), 1);
        for (int q = 1; q <= m; ++q) {
            Form w = rnd.form(1, q);
            Form pt = p_tilde(chart, w, std::make_pair(1, q));
            CHECK(p_nabla_conjecture(chart, Connection::flat(m), w, appendix_coefficient,
                                     std::make_pair(1, q)) == pt);
            if (m == 2)
                CHECK(p_nabla_conjecture(chart, Connection::flat(m), w, printed_coefficient,
                                         std::make_pair(1, q)) == pt);
        }
    }
}

TEST_CASE("P_nabla of theta ^ omega_0 is zero") {
    Chart chart(2, 1);
    Form w = wedge(Form::theta(0, chart.zero_index()), omega0(chart));
    CHECK(p_nabla_conjecture(chart, Connection::formal(2), w).is_zero());
    CHECK_THROWS_AS(p_nabla_conjecture(chart, Connection::flat(2), Form::dx(0)), DomainError);
}

TEST_CASE("terms of the conjectured series stop when S_nabla annihilates") {
    Chart chart(2, 1, 4);
    Form w = generic_form(chart, 1, 1, 2, "g");
    auto terms = conjecture_terms(chart, Connection::formal(2), w);
    CHECK(terms.size() == 2);
    CHECK(conjecture_terms(chart, Connection::formal(2), w, 0).size() == 1);
}

TEST_CASE("homotopy defect on the worked example vanishes with its weights") {
    Chart chart(2, 1, 6);
    Form w = Form::zero(2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            w += wedge(Form::dx(j), Form::theta(0, chart.unit(i))) *
                 Expr(chart.declare("f" + std::to_string(i) + std::to_string(j), 2));
    CHECK(homotopy_defect(chart, Connection::formal(2), w, appendix_coefficient).is_zero());
}

TEST_CASE("fitter on the top row recovers the P-tilde weight") {
    Chart chart(2, 1, 5);
    Connection flat = Connection::flat(2);
    Form g = d_h(chart, generic_form(chart, 1, 1, 1, "a"));
    Form h = d_h(chart, generic_form(chart, 1, 1, 1, "b"));
    FitResult r = fit_coefficients(chart, flat, 1, 2, 1, {g}, {h});
    CHECK(r.status == FitStatus::Unique);
    REQUIRE(r.row_q[0].has_value());
    CHECK(*r.row_q[0] == Rational(1));
    CHECK(r.row_q1.empty());
    CHECK(r.cross_validated == std::optional<bool>(true));
}

TEST_CASE("fitter reports truncation as inconsistent") {
    Chart chart(2, 1, 5);
    Form g = generic_form(chart, 1, 1, 2, "a");
    FitResult r = fit_coefficients(chart, Connection::flat(2), 1, 1, 0, {g});
    CHECK(r.status == FitStatus::Inconsistent);
    CHECK_FALSE(r.cross_validated.has_value());
    CHECK_THROWS_AS(fit_coefficients(chart, Connection::flat(2), 1, 1, 1, {Form::dx(0)}), DomainError);
}

TEST_CASE("fitter lists unexercised unknowns") {
    Chart chart(2, 1, 5);
    Form g = generic_form(chart, 1, 1, 1, "a");
    FitResult r = fit_coefficients(chart, Connection::flat(2), 1, 1, 2, {g});
    CHECK(r.status == FitStatus::Unique);
    CHECK(*r.row_q[0] == Rational(1, 2));
    CHECK_FALSE(r.row_q[1].has_value());
    CHECK(r.unexercised.size() == 3);
}

TEST_CASE("flat projection at k = 2") {
    Chart chart(2, 1);
    auto p = projection_p_nabla(chart, Connection::flat(2), 2);
    using K = NonholonomicCoord::Kind;
    HolonomicCoord u12{false, 0, MultiIndex{1, 1}};
    HolonomicCoord u11{false, 0, MultiIndex{2, 0}};
    CHECK(p.action.at({K::Upper, 0, MultiIndex{1, 0}, 1}) == HolonomicVector{{u12, Expr(Rational(1, 2))}});
    CHECK(p.action.at({K::Upper, 0, MultiIndex{1, 0}, 0}) == HolonomicVector{{u11, Expr(1)}});
    CHECK(p.action.at({K::Lower, 0, MultiIndex{1, 0}, -1}).empty());
    CHECK_THROWS_AS(projection_p_nabla(chart, Connection::flat(2), 1), DomainError);
}

TEST_CASE("projection composes with the tangent inclusion to the identity") {
    for (int m = 1; m <= 3; ++m)
        for (int k = 2; k <= 3; ++k) {
            Chart chart(m, 2, 4);
            for (bool flat : {true, false}) {
                auto r = check_projection(chart, flat ? Connection::flat(m) : Connection::formal(m), k);
                CHECK(r.composition_identity);
                CHECK(r.semiholonomic_symmetrization);
                CHECK(r.failures.empty());
            }
        }
}

TEST_CASE("worked example lines") {
    auto r2 = verify_appendix_a(2);
    CHECK(r2.lines.size() == 14);
    for (const auto& l : r2.lines) {
        INFO(l.name);
        CHECK(l.pass);
    }
    CHECK(verify_appendix_a(2, true).all_pass());
    CHECK(verify_appendix_a(3).lines.back().pass);
    CHECK_THROWS_AS(verify_appendix_a(1), DomainError);
}
