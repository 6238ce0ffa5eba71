#include "lepage/commands.hpp"

#include "lepage/calculus.hpp"
#include "lepage/dsl.hpp"
#include "lepage/errors.hpp"

namespace lepage {

using nlohmann::json;

std::vector<std::string> command_names() {
    return {"el",           "lepage",          "vainberg-tonti", "closure",
            "homotopy-check", "bicomplex-check", "gamma-prolong",  "p-nabla",
            "conjecture",   "appendix-a"};
}

namespace {

// Collects a report as text lines or as one structured document.
class Report {
public:
    Report(Format f, const Chart& chart, const std::string& command) : f_(f), chart_(chart) {
        doc_ = {{"schema", kSchema}, {"command", command}};
    }

    void value(const std::string& key, const std::string& label, const Form& w) {
        if (f_ == Format::Structured) doc_[key] = form_to_json(chart_, w);
        else text_ += label + " = " + render_form(chart_, w, f_) + "\n";
    }
    void value(const std::string& key, const std::string& label, const Expr& e) {
        if (f_ == Format::Structured) doc_[key] = expr_to_json(chart_, e);
        else text_ += label + " = " + render_expr(chart_, e, f_) + "\n";
    }
    void flag(const std::string& key, const std::string& label, bool v) {
        if (f_ == Format::Structured) doc_[key] = v;
        else text_ += label + ": " + (v ? "yes" : "no") + "\n";
    }
    void field(const std::string& key, const json& v) {
        if (f_ == Format::Structured) doc_[key] = v;
    }
    void line(const std::string& s) {
        if (f_ != Format::Structured) text_ += s + "\n";
    }
    json& doc() { return doc_; }

    std::string str() const { return f_ == Format::Structured ? doc_.dump(2) + "\n" : text_; }

private:
    Format f_;
    const Chart& chart_;
    json doc_;
    std::string text_;
};

ProblemSpec load(const CommandOptions& o) {
    if (!o.spec) throw UsageError("command '" + o.command + "' needs --spec FILE");
    return parse_problem(*o.spec, o.order_cap);
}

std::string pick_lagrangian(const CommandOptions& o, const ProblemSpec& spec) {
    if (o.lagrangian) return *o.lagrangian;
    if (spec.lagrangians.size() == 1) return spec.lagrangians.begin()->first;
    throw UsageError("--lagrangian NAME is required when the file declares " +
                     std::to_string(spec.lagrangians.size()) + " Lagrangians");
}

std::string pick_form(const CommandOptions& o, const ProblemSpec& spec) {
    if (o.form) return *o.form;
    if (spec.forms.size() == 1) return spec.forms.begin()->first;
    throw UsageError("--form NAME is required when the file declares " + std::to_string(spec.forms.size()) +
                     " forms");
}

HomotopyVariant variant_of(const std::string& s) {
    if (s == "tilde") return HomotopyVariant::Tilde;
    if (s == "hat") return HomotopyVariant::Hat;
    throw UsageError("unknown homotopy variant '" + s + "' (expected tilde or hat)");
}

CommandResult cmd_el(const CommandOptions& o) {
    ProblemSpec spec = load(o);
    std::string name = pick_lagrangian(o, spec);
    const LagrangianSpec& L = spec.lagrangian(name);
    Report r(o.format, spec.chart, "el");
    r.field("lagrangian", name);
    Form el = euler_lagrange(spec.chart, L.L, L.k);
    r.value("el", "EL(" + name + ")", el);
    return {r.str(), o.assert_zero && !el.is_zero() ? kExitFailed : kExitOk};
}

CommandResult cmd_lepage(const CommandOptions& o) {
    ProblemSpec spec = load(o);
    std::string name = pick_lagrangian(o, spec);
    const LagrangianSpec& L = spec.lagrangian(name);
    Construction c;
    try {
        c = construction_from_name(o.variant);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    Form theta = construct(L, c);
    LepageReport rep = lepage_report(L, theta);
    Report r(o.format, spec.chart, "lepage");
    r.field("lagrangian", name);
    r.field("variant", construction_name(c));
    r.value("theta", "theta[" + construction_name(c) + "](" + name + ")", theta);
    r.flag("horizontal_part_is_lambda", "horizontal part = lambda", rep.horizontal_part_equals_lambda);
    r.flag("one_contact_d_theta_is_source", "1-contact part of d(theta) is a source form",
           rep.one_contact_is_source);
    bool ok = rep.horizontal_part_equals_lambda && rep.one_contact_is_source;
    return {r.str(), ok ? kExitOk : kExitFailed};
}

CommandResult cmd_vainberg_tonti(const CommandOptions& o) {
    ProblemSpec spec = load(o);
    std::string name = pick_form(o, spec);
    const Form& eps = spec.form(name);
    LagrangianSpec L = vainberg_tonti(spec.chart, eps);
    Report r(o.format, spec.chart, "vainberg-tonti");
    r.field("form", name);
    r.value("lagrangian", "L", L.L);
    r.field("order", L.k);
    r.line("order = " + std::to_string(L.k));
    bool variational = euler_lagrange(spec.chart, L.L, L.k) == eps;
    r.flag("el_reproduces_source", "EL(L) = " + name, variational);
    return {r.str(), kExitOk};
}

CommandResult cmd_closure(const CommandOptions& o) {
    ProblemSpec spec = load(o);
    std::string name = pick_lagrangian(o, spec);
    Construction c;
    try {
        c = construction_from_name(o.construction);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    ClosureReport rep = closure_check(spec.lagrangian(name), c);
    Report r(o.format, spec.chart, "closure");
    r.field("lagrangian", name);
    r.field("construction", construction_name(c));
    bool closed = rep.d_theta_f.is_zero();
    bool el_match = contact_component(rep.d_theta_f, 1) == rep.el_form;
    r.field("null_lagrangian", rep.is_null);
    r.field("d_theta_f_zero", closed);
    r.field("one_contact_equals_el", el_match);
    if (closed) {
        r.line("NULL: d(thetaF) = 0");
    } else {
        r.line("NOT NULL: d(thetaF) != 0");
        r.flag("one_contact_equals_el_text", "(d thetaF)^(1) = EL", el_match);
    }
    if (o.format == Format::Structured) r.doc().erase("one_contact_equals_el_text");
    // closure holds iff d(thetaF) = 0 exactly when the Lagrangian is null
    bool ok = (closed == rep.is_null) && el_match;
    if (o.assert_zero && !closed) ok = false;
    return {r.str(), ok ? kExitOk : kExitFailed};
}

CommandResult cmd_homotopy_check(const CommandOptions& o) {
    ProblemSpec spec = load(o);
    std::string name = pick_form(o, spec);
    const Form& w = spec.form(name);
    const Chart& chart = spec.chart;
    HomotopyVariant v = variant_of(o.homotopy);
    auto [p, q] = homogeneous_bidegree(w);
    Form P = homotopy(chart, w, v, std::make_pair(p, q));
    Form defect = d_h(chart, P) - w;
    if (q < chart.m()) defect += homotopy(chart, d_h(chart, w), v, std::make_pair(p, q + 1));
    Report r(o.format, chart, "homotopy-check");
    r.field("form", name);
    r.field("variant", o.homotopy);
    r.value("p", "P(" + name + ")", P);
    r.value("defect", "d_h P + P d_h - id", defect);
    r.flag("holds", "homotopy identity holds", defect.is_zero());
    return {r.str(), defect.is_zero() ? kExitOk : kExitFailed};
}

CommandResult cmd_bicomplex_check(const CommandOptions& o) {
    ProblemSpec spec = load(o);
    const Chart& chart = spec.chart;
    std::vector<std::string> names;
    if (o.form) names.push_back(*o.form);
    else
        for (const auto& [n, f] : spec.forms) names.push_back(n);
    if (names.empty()) throw UsageError("bicomplex-check needs at least one form in the file");
    Report r(o.format, chart, "bicomplex-check");
    json results = json::array();
    bool all = true;
    for (const auto& n : names) {
        const Form& w = spec.form(n);
        bool hh = d_h(chart, d_h(chart, w)).is_zero();
        bool vv = d_v(chart, d_v(chart, w)).is_zero();
        bool hv = (d_h(chart, d_v(chart, w)) + d_v(chart, d_h(chart, w))).is_zero();
        all = all && hh && vv && hv;
        r.line(n + ": d_h^2 = 0 " + (hh ? "PASS" : "FAIL") + ", d_v^2 = 0 " + (vv ? "PASS" : "FAIL") +
               ", d_h d_v + d_v d_h = 0 " + (hv ? "PASS" : "FAIL"));
        results.push_back({{"form", n}, {"dh2", hh}, {"dv2", vv}, {"anticommute", hv}});
    }
    r.field("results", results);
    return {r.str(), all ? kExitOk : kExitFailed};
}

CommandResult cmd_gamma_prolong(const CommandOptions& o) {
    ProblemSpec spec = load(o);
    if (o.level < 1) throw UsageError("--level must be at least 1");
    auto G = gamma_prolong(spec.chart, spec.gamma(), o.level);
    Report r(o.format, spec.chart, "gamma-prolong");
    r.field("level", o.level);
    json table = json::array();
    bool any = false;
    for (const auto& [key, v] : G.table()) {
        if (key.second.length() < 2) continue;
        any = true;
        std::string idx;
        for (int t = 0; t < key.second.size(); ++t) idx += (t ? "," : "") + std::to_string(key.second[t]);
        r.line("Gamma[" + std::to_string(key.first + 1) + "; " + idx + "] = " +
               render_expr(spec.chart, v, o.format));
        table.push_back({{"h", key.first + 1}, {"K", key.second.to_vector()}, {"value", expr_to_json(spec.chart, v)}});
    }
    if (!any) r.line("all coefficients with |K| >= 2 vanish");
    r.field("coefficients", table);
    return {r.str(), kExitOk};
}

CommandResult cmd_p_nabla(const CommandOptions& o) {
    ProblemSpec spec = load(o);
    const Chart& chart = spec.chart;
    auto table = projection_p_nabla(chart, spec.gamma(), o.k);
    Report r(o.format, chart, "p-nabla");
    r.field("k", o.k);
    json rows = json::array();
    for (const auto& [e, image] : table.action) {
        std::string s;
        json img = json::array();
        bool first = true;
        for (const auto& [h, c] : image) {
            std::string cs = render_expr(chart, c, o.format == Format::Structured ? Format::Text : o.format);
            std::string term = c == Expr(1) ? "" : (c.size() > 1 ? "(" + cs + ")" : cs) + " ";
            s += (first ? "" : " + ") + term + "d/d" + h.str();
            first = false;
            img.push_back({{"coordinate", h.str()}, {"coefficient", expr_to_json(chart, c)}});
        }
        if (image.empty()) s = "0";
        r.line("d/d" + e.str() + " -> " + s);
        rows.push_back({{"coordinate", e.str()}, {"image", img}});
    }
    r.field("action", rows);
    ProjectionCheck check = check_projection(chart, spec.gamma(), o.k);
    r.flag("composition_identity", "p o Ti = id", check.composition_identity);
    if (o.k == 2)
        r.flag("semiholonomic_symmetrization", "semiholonomic restriction = symmetrization",
               check.semiholonomic_symmetrization);
    for (const auto& f : check.failures) r.line("  " + f);
    bool ok = check.composition_identity && check.semiholonomic_symmetrization;
    return {r.str(), ok ? kExitOk : kExitFailed};
}

json optional_row(const std::vector<std::optional<Rational>>& row) {
    json out = json::array();
    for (const auto& v : row) out.push_back(v ? rational_to_json(*v) : json());
    return out;
}

std::string row_text(const std::vector<std::optional<Rational>>& row) {
    std::string s;
    for (std::size_t k = 0; k < row.size(); ++k) s += (k ? ", " : "") + (row[k] ? row[k]->get_str() : "?");
    return "(" + s + ")";
}

CommandResult cmd_conjecture(const CommandOptions& o) {
    ProblemSpec spec = load(o);
    const Chart& chart = spec.chart;
    const Connection& c = spec.gamma();
    CoefficientRule rule;
    try {
        rule = coefficient_rule(o.rule);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    if (o.action == "defect") {
        std::string name = pick_form(o, spec);
        const Form& w = spec.form(name);
        Form P = p_nabla_conjecture(chart, c, w, rule);
        Form defect = homotopy_defect(chart, c, w, rule);
        Report r(o.format, chart, "conjecture defect");
        r.field("form", name);
        r.field("rule", o.rule);
        r.value("p_nabla", "P_nabla(" + name + ")", P);
        r.value("defect", "defect", defect);
        r.flag("zero", "defect vanishes", defect.is_zero());
        return {r.str(), o.assert_zero && !defect.is_zero() ? kExitFailed : kExitOk};
    }
    if (o.action == "fit") {
        std::vector<std::string> names = o.generators;
        if (names.empty()) names.push_back(pick_form(o, spec));
        std::vector<Form> gens, held;
        for (const auto& n : names) gens.push_back(spec.form(n));
        for (const auto& n : o.held_out) held.push_back(spec.form(n));
        auto [p, q] = homogeneous_bidegree(gens.front());
        FitResult fr = fit_coefficients(chart, c, p, q, o.max_r, gens, held);
        Report r(o.format, chart, "conjecture fit");
        r.field("p", p);
        r.field("q", q);
        r.field("m", chart.m());
        r.field("max_r", o.max_r);
        r.field("status", fit_status_name(fr.status));
        r.field("equations", fr.equations);
        r.field("row_q", optional_row(fr.row_q));
        r.field("row_q1", optional_row(fr.row_q1));
        json unex = json::array();
        for (auto [row, k] : fr.unexercised) unex.push_back({{"row", q + row}, {"r", k}});
        r.field("unexercised", unex);
        r.field("cross_validated", fr.cross_validated ? json(*fr.cross_validated) : json());
        r.line("fit (p, q, m) = (" + std::to_string(p) + ", " + std::to_string(q) + ", " +
               std::to_string(chart.m()) + "), R = " + std::to_string(o.max_r) + ": " +
               fit_status_name(fr.status) + " (" + std::to_string(fr.equations) + " equations)");
        r.line("row " + std::to_string(q) + ": " + row_text(fr.row_q));
        if (!fr.row_q1.empty()) r.line("row " + std::to_string(q + 1) + ": " + row_text(fr.row_q1));
        std::string pr;
        for (int k = 0; k <= o.max_r; ++k) pr += (k ? ", " : "") + rule(p, q, chart.m(), k).get_str();
        r.line(o.rule + " row " + std::to_string(q) + ": (" + pr + ")");
        if (fr.cross_validated) r.line(std::string("held-out check: ") + (*fr.cross_validated ? "PASS" : "FAIL"));
        bool ok = fr.status == FitStatus::Unique && fr.cross_validated.value_or(true);
        return {r.str(), o.assert_zero && !ok ? kExitFailed : kExitOk};
    }
    throw UsageError("conjecture needs an action: defect or fit");
}

CommandResult cmd_appendix(const CommandOptions& o) {
    if (o.m < 2) throw UsageError("--m must be at least 2");
    if (o.n < 1) throw UsageError("--n must be at least 1");
    AppendixReport rep = verify_appendix_a(o.m, o.flat, o.n);
    Chart chart(o.m, o.n);
    Report r(o.format, chart, "appendix-a");
    r.field("m", o.m);
    r.field("n", o.n);
    r.field("flat", o.flat);
    r.line(std::string("worked example, m = ") + std::to_string(o.m) + ", n = " + std::to_string(o.n) + ", " +
           (o.flat ? "flat" : "formal") + " connection");
    json lines = json::array();
    for (const auto& l : rep.lines) {
        r.line(std::string(l.pass ? "PASS" : "FAIL") + "  " + l.name);
        lines.push_back({{"name", l.name}, {"pass", l.pass}, {"detail", l.detail}});
    }
    r.field("lines", lines);
    r.field("all_pass", rep.all_pass());
    r.line(std::string("all lines: ") + (rep.all_pass() ? "PASS" : "FAIL"));
    return {r.str(), rep.all_pass() ? kExitOk : kExitFailed};
}

}  // namespace

CommandResult run_command(const CommandOptions& o) {
    const std::string& c = o.command;
    if (c == "el") return cmd_el(o);
    if (c == "lepage") return cmd_lepage(o);
    if (c == "vainberg-tonti") return cmd_vainberg_tonti(o);
    if (c == "closure") return cmd_closure(o);
    if (c == "homotopy-check") return cmd_homotopy_check(o);
    if (c == "bicomplex-check") return cmd_bicomplex_check(o);
    if (c == "gamma-prolong") return cmd_gamma_prolong(o);
    if (c == "p-nabla") return cmd_p_nabla(o);
    if (c == "conjecture") return cmd_conjecture(o);
    if (c == "appendix-a") return cmd_appendix(o);
    throw UsageError("unknown command '" + c + "'");
}

}  // namespace lepage
