#include "doctest.h"

#include "../support/random_values.hpp"
#include "lepage/commands.hpp"
#include "lepage/lepage.hpp"

using namespace lepage;
using testing_support::RandomValues;
using testing_support::round_trip_failure;

namespace {

ParseError parse_error(const std::string& text) {
    try {
        parse_problem(text);
    } catch (const ParseError& e) {
        return e;
    }
    FAIL("no parse error for: " << text);
    return ParseError("", 0, 0);
}

CommandOptions options(const std::string& command, const std::string& spec) {
    CommandOptions o;
    o.command = command;
    o.spec = spec;
    return o;
}

const char* kDirichlet = "m=2; n=1; L: order=1 1/2*(u[1;1,0]^2 + u[1;0,1]^2);";

}  // namespace

TEST_CASE("dirichlet spec") {
    ProblemSpec s = parse_problem(kDirichlet);
    CHECK(s.chart.m() == 2);
    CHECK(s.chart.n() == 1);
    const LagrangianSpec& L = s.lagrangian("L");
    CHECK(L.k == 1);
    Expr ux = s.chart.u(0, MultiIndex{1, 0}), uy = s.chart.u(0, MultiIndex{0, 1});
    CHECK(L.L == (ux * ux + uy * uy) * Expr(make_rational(1, 2)));
}

TEST_CASE("flat and concrete connections") {
    ProblemSpec s = parse_problem("m=2; n=1; Gamma = flat;");
    CHECK(s.gamma() == Connection::flat(2));
    ProblemSpec c = parse_problem("m=1; n=1; Gamma[1; 1,1] = x[1];");
    CHECK(c.gamma().coefficient(0, 0, 0) == c.chart.x(0));
    CHECK_THROWS_AS(parse_problem("m=1; n=1; Gamma[1;1,1] = u[1];"), ParseError);
}

TEST_CASE("parse errors carry positions") {
    ParseError dim = parse_error("m=2; n=1;\nform a = u[1;1] * dx[1];");
    CHECK(dim.line() == 2);
    CHECK(dim.column() == 10);
    CHECK(std::string(dim.what()).find("dimension mismatch") != std::string::npos);

    ParseError syn = parse_error("m=2; n=1;\nform a = theta[1;0,0] & ;");
    CHECK(syn.line() == 2);
    CHECK(syn.column() == 25);
    CHECK(!syn.expected().empty());

    ParseError unk = parse_error("m=1; n=1; form a = K * dx[1];");
    CHECK(std::string(unk.what()).find("unknown identifier 'K'") != std::string::npos);

    CHECK(parse_error("form a = 1;").line() == 1);
    CHECK(std::string(parse_error("m=1;n=1;form a = dx[1] * dx[1];").what()).find("'&'") != std::string::npos);
    CHECK(std::string(parse_error("m=1;n=1;form a = dx[1] + 1;").what()).find("cannot add") != std::string::npos);
    CHECK(std::string(parse_error("m=1;n=1;form w = 1;").what()).find("reserved") != std::string::npos);
    CHECK(std::string(parse_error("m=1;n=1;L: order=1 u[1;2];").what()).find("order") != std::string::npos);
}

TEST_CASE("forms and omega tokens") {
    ProblemSpec s = parse_problem("m=2; n=1; formal f order 1; form a = f*theta[1;0,0] & w[1]; form b = dx[2] & dx[1];");
    const Chart& c = s.chart;
    CHECK(s.form("a") == wedge(Form::theta(0, c.zero_index()), omega_basis(c, {0})) * Expr(c.function_atom("f")));
    CHECK(s.form("b") == -omega0(c));
    CHECK(parse_form(c, "w0") == omega0(c));
    CHECK(parse_form(c, "du[1;1,0]") == Form::du(c, 0, MultiIndex{1, 0}));
    CHECK_THROWS_AS(parse_expr(c, "x[1]^-2"), ParseError);
    CHECK(parse_expr(c, "u[1]/4 - 2^-2*u[1]").is_zero());
    ProblemSpec g = parse_problem("m=1; n=1; formal g base nonvanishing; form a = g^-2 * g^2 * dx[1];");
    CHECK(g.form("a") == Form::dx(0));
    CHECK(parse_expr(c, "(u[1;1,0]+1)^2") == parse_expr(c, "u[1;1,0]^2 + 2*u[1;1,0] + 1"));
}

TEST_CASE("rendering samples") {
    Chart c(2, 1);
    CHECK(render_rational(make_rational(1, 12)) == "1/12");
    CHECK(render_expr(c, Expr(make_rational(1, 12))) == "1/12");
    Form tw = wedge(Form::theta(0, c.zero_index()), omega_basis(c, {0}));
    CHECK(render_form(c, tw, Format::Latex) == "\\theta^{1}\\wedge\\omega_{1}");
    CHECK(render_form(c, tw) == "theta[1;0,0] & w[1]");
    nlohmann::json j = form_to_json(c, tw * Expr(make_rational(-3, 4)));
    CHECK(j["schema"] == kSchema);
    CHECK(j["terms"][0]["coefficient"][0]["coefficient"]["num"] == "-3");
    CHECK(j["terms"][0]["coefficient"][0]["coefficient"]["den"] == "4");
}

TEST_CASE("round trip on random values") {
    for (int m = 1; m <= 3; ++m) {
        Chart c(m, 2);
        RandomValues rv(c, 100 + m);
        for (int t = 0; t < 40; ++t) {
            Form w = rv.form();
            INFO(render_form(c, w));
            CHECK(round_trip_failure(c, w) == "");
            Expr e = rv.scalar();
            INFO(render_expr(c, e));
            CHECK(round_trip_failure(c, e) == "");
        }
    }
}

TEST_CASE("el command") {
    CommandResult r = run_command(options("el", kDirichlet));
    CHECK(r.exit_code == kExitOk);
    CHECK(r.output == "EL(L) = (-u[1;0,2] - u[1;2,0])*theta[1;0,0] & w0\n");
    CommandOptions o = options("el", kDirichlet);
    o.assert_zero = true;
    CHECK(run_command(o).exit_code == kExitFailed);
}

TEST_CASE("closure command") {
    CommandResult null = run_command(
        options("closure", "m=2; n=2; Ljac: order=1 u[1;1,0]*u[2;0,1] - u[1;0,1]*u[2;1,0];"));
    CHECK(null.output == "NULL: d(thetaF) = 0\n");
    CHECK(null.exit_code == kExitOk);
    CommandOptions o = options("closure", kDirichlet);
    CHECK(run_command(o).exit_code == kExitOk);
    o.assert_zero = true;
    CHECK(run_command(o).exit_code == kExitFailed);
}

TEST_CASE("usage and domain errors") {
    CHECK_THROWS_AS(run_command(options("nope", kDirichlet)), UsageError);
    CommandOptions o;
    o.command = "el";
    CHECK_THROWS_AS(run_command(o), UsageError);
    CHECK_THROWS_AS(run_command(options("el", "m=1;n=1;A: order=1 u[1;1]; B: order=1 u[1];")), UsageError);
    CHECK_THROWS_AS(run_command(options("p-nabla", kDirichlet)), DomainError);
}

TEST_CASE("structured output is deterministic") {
    CommandOptions o = options("lepage", kDirichlet);
    o.format = Format::Structured;
    CommandResult a = run_command(o), b = run_command(o);
    CHECK(a.output == b.output);
    auto j = nlohmann::json::parse(a.output);
    CHECK(j["schema"] == kSchema);
    CHECK(j["horizontal_part_is_lambda"] == true);
    ProblemSpec s = parse_problem(kDirichlet);
    CHECK(form_from_json(s.chart, j["theta"]) == principal_lepage(s.lagrangian("L")));
}
