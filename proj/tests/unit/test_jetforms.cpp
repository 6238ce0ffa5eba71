#include "doctest.h"

#include "lepage/bicomplex.hpp"
#include "lepage/calculus.hpp"
#include "lepage/errors.hpp"

using namespace lepage;

namespace {

MultiIndex mi(int a, int b) { return MultiIndex{a, b}; }

Form th(int a, int b) { return Form::theta(0, mi(a, b)); }

}  // namespace

TEST_CASE("wedge signs") {
    Form dx1 = Form::dx(0), dx2 = Form::dx(1);
    CHECK(wedge(dx2, dx1) == -wedge(dx1, dx2));
    CHECK(wedge(dx1, dx1).is_zero());
    CHECK(wedge(dx1, th(0, 0)) == -wedge(th(0, 0), dx1));
    CHECK(wedge({th(0, 0), dx1, dx2}).degree() == 3);
}

TEST_CASE("horizontal differential") {
    Chart chart(2, 1);
    Form f = Form::dx(0) * chart.u(0);
    // d_h(u dx^1) = u_(0,1) dx^2 ^ dx^1
    CHECK(d_h(chart, f) == wedge(Form::dx(1), Form::dx(0)) * chart.u(0, mi(0, 1)));
    // d_h^2 = 0, d_v^2 = 0, anticommutation
    Form g = wedge(th(1, 0), Form::dx(1)) * (chart.u(0) * chart.x(0));
    CHECK(d_h(chart, d_h(chart, g)).is_zero());
    CHECK(d_v(chart, d_v(chart, g)).is_zero());
    CHECK((d_h(chart, d_v(chart, g)) + d_v(chart, d_h(chart, g))).is_zero());
}

TEST_CASE("full differential of a coordinate is du") {
    Chart chart(2, 1);
    MultiIndex I = mi(1, 0);
    CHECK(d_full(chart, Form(chart.u(0, I))) == Form::du(chart, 0, I));
    // theta = du - u_{1_j} dx^j, so d theta = -d(u_{1_j}) ^ dx^j
    Form expected;
    for (int j = 0; j < 2; ++j)
        expected -= wedge(d_full(chart, Form(chart.u(0, chart.unit(j)))), Form::dx(j));
    CHECK(d_full(chart, th(0, 0)) == expected);
}

TEST_CASE("interior products") {
    Chart chart(2, 1);
    Form w = wedge({th(0, 0), Form::dx(0), Form::dx(1)});
    CHECK(interior_total(chart, 0, w) == -wedge(th(0, 0), Form::dx(1)));
    CHECK(interior_jet(chart, 0, mi(0, 0), w) == wedge(Form::dx(0), Form::dx(1)));
    CHECK(interior_total(chart, 0, interior_total(chart, 0, w)).is_zero());
}

TEST_CASE("omega basis") {
    Chart chart(2, 1);
    CHECK(omega_basis(chart, {0}) == Form::dx(1));
    CHECK(omega_basis(chart, {1}) == -Form::dx(0));
    CHECK(omega_basis(chart, {0, 1}) == Form(Expr(1)));
    CHECK(omega_basis(chart, {1, 0}) == Form(Expr(-1)));
    CHECK(omega_basis(chart, {0, 0}).is_zero());
    // dx^j ^ omega_i = delta omega_0
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            CHECK(wedge(Form::dx(j), omega_basis(chart, {i})) ==
                  (i == j ? omega0(chart) : Form()));
}

TEST_CASE("lie derivative along total derivative commutes with d_h") {
    Chart chart(2, 1);
    Form g = wedge(th(1, 0), Form::dx(1)) * (chart.u(0) * chart.x(0));
    CHECK(lie_total(chart, 0, d_h(chart, g)) == d_h(chart, lie_total(chart, 0, g)));
    // Cartan: L = i d_h + d_h i on forms
    Form cartan = interior_total(chart, 1, d_h(chart, g)) + d_h(chart, interior_total(chart, 1, g));
    CHECK(cartan == lie_total(chart, 1, g));
}

TEST_CASE("contact decomposition") {
    Chart chart(2, 1);
    Form w = Form::du(chart, 0, mi(0, 0));
    auto parts = contact_decompose(w);
    CHECK(parts.size() == 2);
    CHECK(horizontalize(w) == Form::dx(0) * chart.u(0, mi(1, 0)) + Form::dx(1) * chart.u(0, mi(0, 1)));
    CHECK(contact_component(w, 1) == th(0, 0));
    CHECK_THROWS_AS(homogeneous_bidegree(w), DomainError);
}
