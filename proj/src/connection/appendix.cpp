#include "lepage/calculus.hpp"
#include "lepage/connection.hpp"
#include "lepage/errors.hpp"

namespace lepage {

bool AppendixReport::all_pass() const {
    for (const auto& l : lines)
        if (!l.pass) return false;
    return true;
}

namespace {

std::string describe(const VForm& diff) {
    if (diff.is_zero()) return "exact match";
    std::size_t terms = 0;
    for (const auto& [s, f] : diff.terms()) terms += f.terms().size();
    return "differs in " + std::to_string(terms) + " word(s)";
}

}  // namespace

AppendixReport verify_appendix_a(int m, bool flat, int n) {
    if (m < 2) throw DomainError("the worked example needs m >= 2");
    if (n < 1) throw DomainError("the worked example needs n >= 1");
    Chart chart(m, n, 6);
    // f^i_{a j}, stored by (i, a, j)
    std::vector<Expr> fs;
    for (int i = 0; i < m; ++i)
        for (int a = 0; a < n; ++a)
            for (int j = 0; j < m; ++j)
                fs.emplace_back(chart.declare("f_" + std::to_string(i + 1) + "_" + std::to_string(a + 1) +
                                                  "_" + std::to_string(j + 1),
                                              2));
    auto f = [&](int i, int a, int j) -> const Expr& {
        return fs[static_cast<std::size_t>((i * n + a) * m + j)];
    };
    Connection c = flat ? Connection::flat(m) : Connection::formal(m);
    auto G = [&](int k, int i, int j) { return c.coefficient(k, i, j); };
    auto D = [&](const Expr& e, int l) { return total_derivative(chart, e, l); };
    auto dx = [](int j) { return Form::dx(j); };
    auto th = [&](int a) { return Form::theta(a, chart.zero_index()); };
    auto th1 = [&](int a, int i) { return Form::theta(a, chart.unit(i)); };
    auto th2 = [&](int a, int i, int l) { return Form::theta(a, chart.unit(i) + chart.unit(l)); };
    auto W = [](std::initializer_list<Form> fs) { return wedge(fs); };
    Expr M(m);

    AppendixReport report;
    report.m = m;
    report.flat = flat;
    auto check = [&](const std::string& name, const VForm& got, const VForm& expected) {
        VForm diff = got - expected;
        report.lines.push_back({name, diff.is_zero(), describe(diff)});
    };

    Form omega = Form::zero(2);
    for (int i = 0; i < m; ++i)
        for (int a = 0; a < n; ++a)
            for (int j = 0; j < m; ++j) omega += W({dx(j), th1(a, i)}) * f(i, a, j);

    // the computed chain
    Form dh_omega = d_h(chart, omega);
    VForm S1 = s_nabla(chart, c, VForm(dh_omega));
    VForm CS1 = contract_C(chart, S1);
    VForm S2 = s_nabla(chart, c, S1);
    VForm CS2 = contract_C(chart, S2);
    VForm dCS2 = d_h_nabla(chart, c, CS2) * Rational(1, 2);
    VForm CdCS2 = contract_C(chart, dCS2);
    VForm Somega = s_nabla(chart, c, VForm(omega));
    VForm CSomega = contract_C(chart, Somega);
    Form dCSomega = d_h(chart, CSomega.form_part());

    // the displays, rebuilt by index loops
    VForm e_dh;
    VForm e_S1, e_CS1, e_S2, e_CS2, e_dCS2, e_CdCS2, e_Somega, e_CSomega, e_dCSomega;
    VForm e_combined, e_restated;
    for (int a = 0; a < n; ++a) {
        for (int i = 0; i < m; ++i)
            for (int l = 0; l < m; ++l)
                for (int mm = 0; mm < m; ++mm) {
                    const Expr& F = f(i, a, mm);
                    e_dh.add({}, W({dx(l), dx(mm), th1(a, i)}) * D(F, l) +
                                     W({dx(l), dx(mm), th2(a, i, l)}) * F);
                    e_S1.add({i}, W({dx(l), dx(mm), th(a)}) * D(F, l));
                    for (int k = 0; k < m; ++k)
                        e_S1.add({k}, W({dx(l), dx(mm), th(a)}) * (F * G(k, i, l)));
                    e_S2.add({i, l}, W({dx(l), dx(mm), th(a)}) * (F * Expr(2)));
                }
        for (int h = 0; h < m; ++h)
            for (int k = 0; k < m; ++k)
                for (int mm = 0; mm < m; ++mm) {
                    e_S1.add({k}, W({dx(k), dx(mm), th1(a, h)}) * f(h, a, mm));
                    e_S1.add({k}, W({dx(h), dx(mm), th1(a, h)}) * f(k, a, mm));
                }
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                Form dj = W({dx(j), th(a)});
                Expr ga, gb;
                for (int k = 0; k < m; ++k) {
                    ga += f(i, a, j) * G(k, i, k);
                    gb += f(i, a, k) * G(k, i, j);
                }
                Form row = dj * D(f(i, a, j), i) - dj * D(f(i, a, i), j) + dj * ga - dj * gb;
                e_CS1.add({}, row - W({dx(j), th1(a, j)}) * f(i, a, i));
                e_CS2.add({i}, dj * (f(i, a, j) * Expr(2 * m)));
                e_CS2.add({j}, dj * (f(i, a, i) * Expr(-2)));
                e_CdCS2.add({}, dj * (ga * M) - dj * (gb * M) + dj * (D(f(i, a, j), i) * M) -
                                    dj * D(f(i, a, i), j) - W({dx(j), th1(a, j)}) * f(i, a, i));
                e_combined.add({}, dj * (ga * M) - dj * (gb * M) + dj * (D(f(i, a, j), i) * M));
                e_restated.add({}, dj * D(f(i, a, j), i) + dj * ga - dj * gb);
                e_Somega.add({i}, dj * f(i, a, j));
                e_dCSomega.add({}, dj * D(f(i, a, i), j) + W({dx(j), th1(a, j)}) * f(i, a, i));
                for (int h = 0; h < m; ++h)
                    for (int k = 0; k < m; ++k) {
                        Form hj = W({dx(h), dx(j), th(a)});
                        e_dCS2.add({k}, hj * (G(k, i, h) * f(i, a, j) * M));
                        e_dCS2.add({k}, hj * (G(k, j, h) * f(i, a, i) * Expr(-1)));
                    }
                for (int k = 0; k < m; ++k) {
                    Form kj = W({dx(k), dx(j), th(a)});
                    Form kjk = W({dx(k), dx(j), th1(a, k)});
                    e_dCS2.add({i}, kj * (D(f(i, a, j), k) * M) + kjk * (f(i, a, j) * M));
                    e_dCS2.add({j}, kj * (D(f(i, a, i), k) * Expr(-1)) - kjk * f(i, a, i));
                }
            }
        for (int i = 0; i < m; ++i) e_CSomega.add({}, th(a) * f(i, a, i));
    }
    e_CS1.add({}, omega * M);
    e_CdCS2.add({}, omega * M);
    e_combined.add({}, omega * M);
    e_restated.add({}, omega * M - dCSomega);

    check("d_h omega", VForm(dh_omega), e_dh);
    check("S d_h omega", S1, e_S1);
    check("C S d_h omega", CS1, e_CS1);
    check("S^2 d_h omega", S2, e_S2);
    check("C S^2 d_h omega", CS2, e_CS2);
    check("1/2 d_hnabla C S^2 d_h omega", dCS2, e_dCS2);
    check("1/2 C d_hnabla C S^2 d_h omega", CdCS2, e_CdCS2);
    check("S omega", Somega, e_Somega);
    check("C S omega", CSomega, e_CSomega);
    check("d_h C S omega", VForm(dCSomega), e_dCSomega);
    check("1/2 C d_hnabla C S^2 d_h omega + d_h C S omega", VForm(CdCS2.form_part() + dCSomega),
          e_combined);
    check("C S d_h omega restated", CS1, e_restated);
    Form cs = CS1.form_part();
    check("1/2 C d_hnabla C S^2 d_h omega in terms of C S d_h omega", CdCS2,
          VForm(cs * M - omega * Expr(m * (m - 1)) + dCSomega * Expr(m - 1)));
    Rational a0(1, m - 1), a1(-1, 2 * m * (m - 1)), b0(1, m);
    // CdCS2 already carries the factor 1/2
    Form rhs = cs * a0 + CdCS2.form_part() * Rational(2 * a1) + dCSomega * b0;
    check("final identity", VForm(rhs), VForm(omega));
    return report;
}

}  // namespace lepage
