#pragma once

#include <random>
#include <string>

#include "lepage/calculus.hpp"
#include "lepage/dsl.hpp"
#include "lepage/render.hpp"
#include "random_forms.hpp"

namespace testing_support {

// Forms with rational coefficients, formal functions, their partials and connection atoms.
class RandomValues {
public:
    RandomValues(Chart& chart, unsigned seed) : chart_(chart), rng_(seed), base_(chart, seed + 1, 2) {
        if (!chart_.find_function("F")) chart_.declare("F", 1);
        if (!chart_.find_function("phi")) chart_.declare_base_function("phi");
    }

    Rational rational() {
        int num = static_cast<int>(pick(19)) - 9;
        int den = static_cast<int>(pick(12)) + 1;
        return make_rational(num, den);
    }

    Expr scalar() {
        Expr out = base_.poly(2, 2) * Expr(rational());
        switch (pick(5)) {
            case 0: out += Expr(chart_.function_atom("F")) * Expr(rational()); break;
            case 1:
                out += partial(chart_, Expr(chart_.function_atom("F")), Atom::jet(0, chart_.unit(0)));
                break;
            case 2: out += partial_x(chart_, Expr(chart_.function_atom("phi")), 0) * chart_.x(0); break;
            case 3:
                if (chart_.m() >= 2) {
                    std::vector<int> K(chart_.m(), 0);
                    K[0] = 1;
                    K[chart_.m() - 1] += 1;
                    out += Expr(Atom::gamma(static_cast<int>(pick(chart_.m())), MultiIndex(K)));
                }
                break;
            default: break;
        }
        return out;
    }

    Form form() {
        int p = static_cast<int>(pick(3));
        int q = static_cast<int>(pick(chart_.m() + 1));
        if (p + q == 0) return Form(scalar());
        Form f = base_.form(p, q, 2);
        return f * scalar();
    }

private:
    std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

    Chart& chart_;
    std::mt19937 rng_;
    RandomForms base_;
};

// parse(render(w)) == w in every format; returns the failing format name or "".
inline std::string round_trip_failure(const Chart& chart, const Form& w) {
    for (Format f : {Format::Text, Format::Latex, Format::Structured}) {
        std::string s = f == Format::Structured ? form_to_json(chart, w).dump() : render_form(chart, w, f);
        if (parse_rendered(chart, s, f) != w) return f == Format::Text ? "text" : f == Format::Latex ? "latex" : "structured";
    }
    return "";
}

inline std::string round_trip_failure(const Chart& chart, const Expr& e) {
    if (parse_expr(chart, render_expr(chart, e)) != e) return "text";
    if (parse_expr(chart, latex_to_text(render_expr(chart, e, Format::Latex))) != e) return "latex";
    if (expr_from_json(chart, expr_to_json(chart, e)) != e) return "structured";
    return "";
}

}  // namespace testing_support
