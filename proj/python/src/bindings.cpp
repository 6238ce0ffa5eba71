#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

#include "lepage/commands.hpp"
#include "lepage/connection.hpp"
#include "lepage/dsl.hpp"
#include "lepage/lepage.hpp"

namespace py = pybind11;
using namespace lepage;

namespace {

using ChartPtr = std::shared_ptr<const Chart>;

// a form together with the chart it lives on
struct BoundForm {
    ChartPtr chart;
    Form form;

    BoundForm with(Form f) const { return {chart, std::move(f)}; }
    std::string render(const std::string& fmt) const {
        Format f = format_from_name(fmt);
        if (f == Format::Structured) return form_to_json(*chart, form).dump();
        return render_form(*chart, form, f);
    }
};

struct Problem {
    ChartPtr chart;
    ProblemSpec spec;
};

struct BoundLagrangian {
    ChartPtr chart;
    LagrangianSpec spec;
};

void same_chart(const BoundForm& a, const BoundForm& b) {
    if (!(*a.chart == *b.chart)) throw ChartMismatchError("forms live on different charts");
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "Exact variational bicomplex calculus on a single chart";

    static py::exception<Error> base_error(mod, "LepageError", PyExc_ValueError);
    static py::exception<ParseError> parse_error(mod, "ParseError", base_error.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ParseError& e) {
            parse_error(e.what());
        } catch (const Error& e) {
            base_error(e.what());
        }
    });

    py::class_<BoundForm>(mod, "Form")
        .def_property_readonly("degree", [](const BoundForm& f) { return f.form.degree(); })
        .def("is_zero", [](const BoundForm& f) { return f.form.is_zero(); })
        .def("render", &BoundForm::render, py::arg("format") = "text")
        .def("contact_component", [](const BoundForm& f, int p) { return f.with(contact_component(f.form, p)); })
        .def("__str__", [](const BoundForm& f) { return f.render("text"); })
        .def("__repr__", [](const BoundForm& f) { return "Form(" + f.render("text") + ")"; })
        .def("__eq__", [](const BoundForm& a, const BoundForm& b) { return *a.chart == *b.chart && a.form == b.form; })
        .def("__add__", [](const BoundForm& a, const BoundForm& b) { same_chart(a, b); return a.with(a.form + b.form); })
        .def("__sub__", [](const BoundForm& a, const BoundForm& b) { same_chart(a, b); return a.with(a.form - b.form); })
        .def("__neg__", [](const BoundForm& a) { return a.with(-a.form); })
        .def("wedge", [](const BoundForm& a, const BoundForm& b) { same_chart(a, b); return a.with(wedge(a.form, b.form)); });

    py::class_<BoundLagrangian>(mod, "Lagrangian")
        .def_property_readonly("order", [](const BoundLagrangian& l) { return l.spec.k; })
        .def_property_readonly("density", [](const BoundLagrangian& l) { return render_expr(*l.chart, l.spec.L); })
        .def("euler_lagrange", [](const BoundLagrangian& l) {
            return BoundForm{l.chart, euler_lagrange(*l.chart, l.spec.L, l.spec.k)};
        })
        .def("lepage", [](const BoundLagrangian& l, const std::string& variant) {
            return BoundForm{l.chart, construct(l.spec, construction_from_name(variant))};
        }, py::arg("variant") = "principal")
        .def("closure", [](const BoundLagrangian& l, const std::string& construction) {
            ClosureReport r = closure_check(l.spec, construction_from_name(construction));
            py::dict out;
            out["is_null"] = r.is_null;
            out["theta_f"] = BoundForm{l.chart, r.theta_f};
            out["d_theta_f"] = BoundForm{l.chart, r.d_theta_f};
            out["el"] = BoundForm{l.chart, r.el_form};
            return out;
        }, py::arg("construction") = "extend");

    py::class_<Problem>(mod, "Problem")
        .def_property_readonly("m", [](const Problem& p) { return p.chart->m(); })
        .def_property_readonly("n", [](const Problem& p) { return p.chart->n(); })
        .def_property_readonly("forms", [](const Problem& p) {
            std::vector<std::string> names;
            for (const auto& [k, v] : p.spec.forms) names.push_back(k);
            return names;
        })
        .def_property_readonly("lagrangians", [](const Problem& p) {
            std::vector<std::string> names;
            for (const auto& [k, v] : p.spec.lagrangians) names.push_back(k);
            return names;
        })
        .def("form", [](const Problem& p, const std::string& name) { return BoundForm{p.chart, p.spec.form(name)}; })
        .def("lagrangian", [](const Problem& p, const std::string& name) {
            return BoundLagrangian{p.chart, p.spec.lagrangian(name)};
        })
        .def("parse", [](const Problem& p, const std::string& text) {
            return BoundForm{p.chart, parse_value(p.spec, text)};
        })
        .def("parse_rendered", [](const Problem& p, const std::string& text, const std::string& fmt) {
            return BoundForm{p.chart, parse_rendered(*p.chart, text, format_from_name(fmt))};
        }, py::arg("text"), py::arg("format") = "text")
        .def("d_h", [](const Problem& p, const BoundForm& f) { return f.with(d_h(*p.chart, f.form)); })
        .def("d_v", [](const Problem& p, const BoundForm& f) { return f.with(d_v(*p.chart, f.form)); })
        .def("d", [](const Problem& p, const BoundForm& f) { return f.with(d_full(*p.chart, f.form)); })
        .def("homotopy", [](const Problem& p, const BoundForm& f, const std::string& variant) {
            if (variant != "tilde" && variant != "hat") throw DomainError("variant must be tilde or hat");
            return f.with(homotopy(*p.chart, f.form,
                                   variant == "hat" ? HomotopyVariant::Hat : HomotopyVariant::Tilde));
        }, py::arg("form"), py::arg("variant") = "tilde")
        .def("homotopy_defect", [](const Problem& p, const BoundForm& f, const std::string& rule) {
            return f.with(homotopy_defect(*p.chart, p.spec.gamma(), f.form, coefficient_rule(rule)));
        }, py::arg("form"), py::arg("rule") = "printed");

    mod.def("parse_problem", [](const std::string& text) {
        ProblemSpec spec = parse_problem(text);
        auto chart = std::make_shared<const Chart>(spec.chart);
        return Problem{chart, std::move(spec)};
    }, py::arg("text"));

    mod.def("appendix_a", [](int m, bool flat) {
        AppendixReport r = verify_appendix_a(m, flat);
        std::vector<std::pair<std::string, bool>> lines;
        for (const auto& l : r.lines) lines.emplace_back(l.name, l.pass);
        return lines;
    }, py::arg("m") = 2, py::arg("flat") = false);

    mod.def("run", [](const std::string& command, const std::optional<std::string>& spec, const std::string& format,
                      const py::kwargs& kw) {
        CommandOptions o;
        o.command = command;
        o.spec = spec;
        o.format = format_from_name(format);
        for (const auto& [key, value] : kw) {
            std::string k = py::str(key);
            if (k == "lagrangian") o.lagrangian = value.cast<std::string>();
            else if (k == "form") o.form = value.cast<std::string>();
            else if (k == "variant") o.variant = value.cast<std::string>();
            else if (k == "construction") o.construction = value.cast<std::string>();
            else if (k == "homotopy") o.homotopy = value.cast<std::string>();
            else if (k == "rule") o.rule = value.cast<std::string>();
            else if (k == "action") o.action = value.cast<std::string>();
            else if (k == "assert_zero") o.assert_zero = value.cast<bool>();
            else if (k == "flat") o.flat = value.cast<bool>();
            else if (k == "m") o.m = value.cast<int>();
            else if (k == "n") o.n = value.cast<int>();
            else if (k == "k") o.k = value.cast<int>();
            else if (k == "level") o.level = value.cast<int>();
            else if (k == "max_r") o.max_r = value.cast<int>();
            else if (k == "generators") o.generators = value.cast<std::vector<std::string>>();
            else if (k == "held_out") o.held_out = value.cast<std::vector<std::string>>();
            else throw py::type_error("unknown option '" + k + "'");
        }
        CommandResult r = run_command(o);
        return py::make_tuple(r.output, r.exit_code);
    }, py::arg("command"), py::arg("spec") = py::none(), py::arg("format") = "text");

    mod.attr("SCHEMA") = kSchema;
}
