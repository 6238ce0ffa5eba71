#include "lepage/render.hpp"

#include <cctype>

#include "lepage/calculus.hpp"
#include "lepage/bicomplex.hpp"
#include "lepage/dsl.hpp"
#include "lepage/errors.hpp"

namespace lepage {

using nlohmann::json;

Format format_from_name(const std::string& name) {
    if (name == "text") return Format::Text;
    if (name == "latex") return Format::Latex;
    if (name == "structured" || name == "json") return Format::Structured;
    throw DomainError("unknown format '" + name + "' (expected text, latex or structured)");
}

namespace {

std::string counts(const MultiIndex& I) {
    std::string s;
    for (int k = 0; k < I.size(); ++k) {
        if (k) s += ",";
        s += std::to_string(I[k]);
    }
    return s;
}

std::string one_based(int i) { return std::to_string(i + 1); }

// --- text ----------------------------------------------------------------------

std::string text_atom(const Chart& chart, const Atom& a) {
    switch (a.kind()) {
        case AtomKind::Base: return "x[" + one_based(a.index()) + "]";
        case AtomKind::Jet: return "u[" + one_based(a.index()) + ";" + counts(a.multi()) + "]";
        case AtomKind::Gamma:
        case AtomKind::Formal: {
            std::string head = a.kind() == AtomKind::Gamma
                                   ? "G[" + one_based(a.index()) + ";" + counts(a.multi()) + "]"
                                   : chart.function(a.index()).name;
            const MultiIndex& D = a.kind() == AtomKind::Gamma ? a.gamma_derivative() : a.multi();
            std::vector<std::string> vars;
            for (int i : D.to_sequence()) vars.push_back("x[" + one_based(i) + "]");
            if (a.kind() == AtomKind::Formal)
                for (const auto& v : a.jet_derivatives())
                    vars.push_back("u[" + one_based(v.alpha) + ";" + counts(v.index) + "]");
            if (vars.empty()) return head;
            std::string s = "D(" + head + ";";
            for (std::size_t k = 0; k < vars.size(); ++k) s += (k ? ", " : " ") + vars[k];
            return s + ")";
        }
    }
    return "";
}

// --- latex ---------------------------------------------------------------------

std::string latex_sub(const MultiIndex& I) { return I.is_zero() ? "" : "_{(" + counts(I) + ")}"; }

std::string latex_head(const Chart& chart, const Atom& a) {
    switch (a.kind()) {
        case AtomKind::Base: return "x^{" + one_based(a.index()) + "}";
        case AtomKind::Jet: return "u^{" + one_based(a.index()) + "}" + latex_sub(a.multi());
        case AtomKind::Gamma: return "\\Gamma^{" + one_based(a.index()) + "}_{(" + counts(a.multi()) + ")}";
        case AtomKind::Formal: {
            std::string name;
            for (char ch : chart.function(a.index()).name) name += ch == '_' ? std::string("\\_") : std::string(1, ch);
            return "\\mathrm{" + name + "}";
        }
    }
    return "";
}

std::string latex_atom(const Chart& chart, const Atom& a) {
    std::string prefix;
    if (a.kind() == AtomKind::Gamma || a.kind() == AtomKind::Formal) {
        const MultiIndex& D = a.kind() == AtomKind::Gamma ? a.gamma_derivative() : a.multi();
        for (int i : D.to_sequence()) prefix += "\\partial_{x^{" + one_based(i) + "}}";
        if (a.kind() == AtomKind::Formal)
            for (const auto& v : a.jet_derivatives())
                prefix += "\\partial_{u^{" + one_based(v.alpha) + "}" + latex_sub(v.index) + "}";
    }
    return prefix + latex_head(chart, a);
}

bool plain_latex(const Atom& a) { return a.kind() == AtomKind::Formal && a.is_plain_formal(); }

// --- shared term layout ------------------------------------------------------------

std::string monomial_str(const Chart& chart, const Monomial& mono, Format f) {
    std::string s;
    bool first = true;
    for (const auto& [atom, p] : mono.factors()) {
        if (!first) s += f == Format::Latex ? "\\," : "*";
        first = false;
        if (f == Format::Latex) {
            std::string a = latex_atom(chart, atom);
            if (p == 1) s += a;
            else if (plain_latex(atom)) s += a + "^{" + std::to_string(p) + "}";
            else s += "\\left(" + a + "\\right)^{" + std::to_string(p) + "}";
        } else {
            s += text_atom(chart, atom);
            if (p != 1) s += "^" + std::to_string(p);
        }
    }
    return s;
}

std::string join_terms(const std::vector<std::string>& terms) {
    if (terms.empty()) return "0";
    std::string s = terms.front();
    for (std::size_t k = 1; k < terms.size(); ++k) {
        if (terms[k].front() == '-') s += " - " + terms[k].substr(1);
        else s += " + " + terms[k];
    }
    return s;
}

std::string expr_str(const Chart& chart, const Expr& e, Format f) {
    std::vector<std::string> terms;
    for (const auto& [mono, c] : e.terms()) {
        if (mono.is_one()) {
            terms.push_back(render_rational(c, f));
            continue;
        }
        std::string m = monomial_str(chart, mono, f);
        if (c == 1) terms.push_back(m);
        else if (c == -1) terms.push_back("-" + m);
        else terms.push_back(render_rational(c, f) + (f == Format::Latex ? "\\," : "*") + m);
    }
    return join_terms(terms);
}

}  // namespace

std::string render_rational(const Rational& r, Format f) {
    if (f == Format::Latex && r.get_den() != 1) {
        std::string sign = r < 0 ? "-" : "";
        Integer num = abs(r.get_num());
        return sign + "\\frac{" + num.get_str() + "}{" + r.get_den().get_str() + "}";
    }
    return r.get_str();
}

std::string render_expr(const Chart& chart, const Expr& e, Format f) {
    if (f == Format::Structured) return expr_to_json(chart, e).dump(2);
    return expr_str(chart, e, f);
}

std::string render_form(const Chart& chart, const Form& w, Format f) {
    if (f == Format::Structured) return form_to_json(chart, w).dump(2);
    int m = chart.m();
    std::vector<std::string> terms;
    for (const auto& [word, coeff] : w.terms()) {
        std::vector<std::string> parts;
        std::vector<int> dxs;
        for (const auto& b : word) {
            if (b.is_theta()) {
                parts.push_back(f == Format::Latex
                                    ? "\\theta^{" + one_based(b.index) + "}" + latex_sub(b.multi)
                                    : "theta[" + one_based(b.index) + ";" + counts(b.multi) + "]");
            } else {
                dxs.push_back(b.index);
            }
        }
        Expr c = coeff;
        int q = static_cast<int>(dxs.size());
        if (q == m) {
            parts.push_back(f == Format::Latex ? "\\omega_{0}" : "w0");
        } else if (m >= 2 && q == m - 1) {
            int missing = 0;
            while (missing < q && dxs[static_cast<std::size_t>(missing)] == missing) ++missing;
            // omega_j = (-1)^j dx^0 ^ .. (no dx^j) .. ^ dx^{m-1}
            if (missing % 2) c = -c;
            parts.push_back(f == Format::Latex ? "\\omega_{" + one_based(missing) + "}"
                                               : "w[" + one_based(missing) + "]");
        } else {
            for (int i : dxs) parts.push_back(f == Format::Latex ? "dx^{" + one_based(i) + "}" : "dx[" + one_based(i) + "]");
        }
        std::string word_s;
        for (std::size_t k = 0; k < parts.size(); ++k)
            word_s += (k ? (f == Format::Latex ? "\\wedge" : " & ") : "") + parts[k];
        if (word_s.empty()) {
            terms.push_back(expr_str(chart, c, f));
            continue;
        }
        std::string sep = f == Format::Latex ? "\\," : "*";
        if (c == Expr(1)) terms.push_back(word_s);
        else if (c == Expr(-1)) terms.push_back("-" + word_s);
        else if (c.size() == 1) terms.push_back(expr_str(chart, c, f) + sep + word_s);
        else if (f == Format::Latex) terms.push_back("\\left(" + expr_str(chart, c, f) + "\\right)" + sep + word_s);
        else terms.push_back("(" + expr_str(chart, c, f) + ")" + sep + word_s);
    }
    return join_terms(terms);
}

// --- structured --------------------------------------------------------------------

json rational_to_json(const Rational& r) {
    return json{{"num", r.get_num().get_str()}, {"den", r.get_den().get_str()}};
}

Rational rational_from_json(const json& j) {
    Rational r(Integer(j.at("num").get<std::string>()), Integer(j.at("den").get<std::string>()));
    if (r.get_den() == 0) throw DomainError("zero denominator in structured input");
    r.canonicalize();
    return r;
}

namespace {

json vec(const MultiIndex& I) { return I.to_vector(); }

MultiIndex index_from(const Chart& chart, const json& j) {
    auto v = j.get<std::vector<int>>();
    if (static_cast<int>(v.size()) != chart.m()) throw DimensionError("multi-index size differs from m");
    for (int x : v)
        if (x < 0) throw DomainError("negative multi-index entry");
    return MultiIndex(v);
}

int index_in(const json& j, const char* key, int bound) {
    int v = j.at(key).get<int>();
    if (v < 1 || v > bound) throw DimensionError(std::string(key) + " out of range");
    return v - 1;
}

json atom_to_json(const Chart& chart, const Atom& a) {
    switch (a.kind()) {
        case AtomKind::Base: return {{"kind", "x"}, {"i", a.index() + 1}};
        case AtomKind::Jet: return {{"kind", "u"}, {"alpha", a.index() + 1}, {"I", vec(a.multi())}};
        case AtomKind::Gamma:
            return {{"kind", "Gamma"}, {"h", a.index() + 1}, {"K", vec(a.multi())}, {"D", vec(a.gamma_derivative())}};
        case AtomKind::Formal: {
            json deps = json::array();
            for (const auto& v : a.jet_derivatives()) deps.push_back({{"alpha", v.alpha + 1}, {"I", vec(v.index)}});
            return {{"kind", "formal"}, {"name", chart.function(a.index()).name}, {"D", vec(a.multi())}, {"deps", deps}};
        }
    }
    return {};
}

Expr atom_from_json(const Chart& chart, const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "x") return chart.x(index_in(j, "i", chart.m()));
    if (kind == "u") return chart.u(index_in(j, "alpha", chart.n()), index_from(chart, j.at("I")));
    if (kind == "Gamma") {
        int h = index_in(j, "h", chart.m());
        MultiIndex K = index_from(chart, j.at("K")), D = index_from(chart, j.at("D"));
        if (K.length() < 2) throw DomainError("connection atoms need |K| >= 2");
        return Expr(Atom::gamma(h, K, D));
    }
    if (kind == "formal") {
        Expr e(chart.function_atom(j.at("name").get<std::string>()));
        MultiIndex D = index_from(chart, j.at("D"));
        for (int i : D.to_sequence()) e = partial(chart, e, Atom::base(i));
        for (const auto& d : j.at("deps"))
            e = partial(chart, e, Atom::jet(index_in(d, "alpha", chart.n()), index_from(chart, d.at("I"))));
        return e;
    }
    throw DomainError("unknown atom kind '" + kind + "'");
}

json expr_terms(const Chart& chart, const Expr& e) {
    json terms = json::array();
    for (const auto& [mono, c] : e.terms()) {
        json factors = json::array();
        for (const auto& [atom, p] : mono.factors())
            factors.push_back({{"atom", atom_to_json(chart, atom)}, {"power", p}});
        terms.push_back({{"coefficient", rational_to_json(c)}, {"factors", factors}});
    }
    return terms;
}

Expr expr_from_terms(const Chart& chart, const json& terms) {
    Expr out;
    for (const auto& t : terms) {
        Expr term(rational_from_json(t.at("coefficient")));
        for (const auto& f : t.at("factors")) {
            Expr a = atom_from_json(chart, f.at("atom"));
            int p = f.at("power").get<int>();
            term = term * (p >= 0 ? a.pow(p) : power(chart, a, p));
        }
        out += term;
    }
    return out;
}

void check_schema(const json& j, const char* kind) {
    if (j.value("schema", "") != kSchema) throw DomainError("unsupported structured schema");
    if (j.value("kind", "") != kind) throw DomainError(std::string("structured value is not a ") + kind);
}

}  // namespace

json expr_to_json(const Chart& chart, const Expr& e) {
    return {{"schema", kSchema}, {"kind", "expr"}, {"terms", expr_terms(chart, e)}};
}

json form_to_json(const Chart& chart, const Form& w) {
    json terms = json::array();
    for (const auto& [word, c] : w.terms()) {
        json wj = json::array();
        for (const auto& b : word) {
            if (b.is_theta()) wj.push_back({{"theta", {{"alpha", b.index + 1}, {"I", vec(b.multi)}}}});
            else wj.push_back({{"dx", b.index + 1}});
        }
        terms.push_back({{"word", wj}, {"coefficient", expr_terms(chart, c)}});
    }
    return {{"schema", kSchema}, {"kind", "form"}, {"degree", w.degree()}, {"terms", terms}};
}

Expr expr_from_json(const Chart& chart, const json& j) {
    check_schema(j, "expr");
    return expr_from_terms(chart, j.at("terms"));
}

Form form_from_json(const Chart& chart, const json& j) {
    if (j.value("kind", "") == "expr") return Form(expr_from_json(chart, j));
    check_schema(j, "form");
    int degree = j.at("degree").get<int>();
    Form out = Form::zero(degree);
    for (const auto& t : j.at("terms")) {
        Word w;
        for (const auto& b : t.at("word")) {
            if (b.contains("theta")) {
                const json& th = b.at("theta");
                w.push_back(BasisOneForm::theta(index_in(th, "alpha", chart.n()), index_from(chart, th.at("I"))));
            } else {
                w.push_back(BasisOneForm::dx(index_in(b, "dx", chart.m())));
            }
        }
        if (static_cast<int>(w.size()) != degree) throw DomainError("word length differs from the degree");
        out += Form(w, expr_from_terms(chart, t.at("coefficient")));
    }
    return out;
}

// --- latex back to text ----------------------------------------------------------------

namespace {

class LatexReader {
public:
    explicit LatexReader(const std::string& s) : s_(s) {}

    std::string run() {
        std::string out = sequence(false);
        if (k_ < s_.size()) fail("unbalanced braces");
        return out;
    }

private:
    const std::string& s_;
    std::size_t k_ = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("LaTeX: " + msg, 1, static_cast<int>(k_) + 1);
    }
    bool starts(const std::string& p) const { return s_.compare(k_, p.size(), p) == 0; }
    bool eat(const std::string& p) {
        if (!starts(p)) return false;
        k_ += p.size();
        return true;
    }
    std::string group() {
        if (!eat("{")) fail("expected '{'");
        std::string inner = sequence(true);
        if (!eat("}")) fail("expected '}'");
        return inner;
    }
    // "{i}" with raw content
    std::string raw() {
        if (!eat("{")) fail("expected '{'");
        std::size_t e = s_.find('}', k_);
        if (e == std::string::npos) fail("expected '}'");
        std::string v = s_.substr(k_, e - k_);
        k_ = e + 1;
        return v;
    }
    // "_{(I)}" or nothing; returns ";I" or ""
    std::string sub_index() {
        if (!starts("_{(")) return "";
        k_ += 3;
        std::size_t e = s_.find(")}", k_);
        if (e == std::string::npos) fail("expected ')}'");
        std::string v = s_.substr(k_, e - k_);
        k_ = e + 2;
        return ";" + v;
    }
    std::string head() {
        if (eat("x^")) return "x[" + raw() + "]";
        if (eat("u^")) {
            std::string a = raw();
            return "u[" + a + sub_index() + "]";
        }
        if (eat("\\Gamma^")) {
            std::string h = raw();
            return "G[" + h + sub_index() + "]";
        }
        if (eat("\\mathrm")) {
            std::string name, v = raw();
            for (std::size_t i = 0; i < v.size(); ++i)
                if (!(v[i] == '\\' && i + 1 < v.size() && v[i + 1] == '_')) name += v[i];
            return name;
        }
        fail("expected an atom");
    }

    std::string sequence(bool in_group) {
        std::string out;
        while (k_ < s_.size()) {
            char c = s_[k_];
            if (c == '}') {
                if (in_group) break;
                fail("unbalanced '}'");
            }
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++k_;
                continue;
            }
            if (eat("\\frac")) {
                std::string num = group();
                std::string den = group();
                out += "(" + num + ")/(" + den + ")";
            } else if (eat("\\left(")) {
                out += "(";
            } else if (eat("\\right)")) {
                out += ")";
            } else if (eat("\\,")) {
                out += "*";
            } else if (eat("\\wedge")) {
                out += " & ";
            } else if (eat("\\theta^")) {
                std::string a = raw();
                out += "theta[" + a + sub_index() + "]";
            } else if (eat("\\omega_")) {
                std::string j = raw();
                out += j == "0" ? "w0" : "w[" + j + "]";
            } else if (starts("\\partial_")) {
                std::vector<std::string> vars;
                while (eat("\\partial_")) {
                    if (!eat("{")) fail("expected '{'");
                    vars.push_back(head());
                    if (!eat("}")) fail("expected '}'");
                }
                std::string h = head();
                out += "D(" + h + ";";
                for (std::size_t v = 0; v < vars.size(); ++v) out += (v ? ", " : " ") + vars[v];
                out += ")";
            } else if (eat("dx^")) {
                out += "dx[" + raw() + "]";
            } else if (eat("^")) {
                out += "^" + raw();
            } else if (c == '\\' || c == 'x' || c == 'u') {
                out += head();
            } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '+' || c == '-') {
                out += c;
                ++k_;
            } else {
                fail(std::string("unexpected '") + c + "'");
            }
        }
        return out;
    }
};

}  // namespace

std::string latex_to_text(const std::string& latex) { return LatexReader(latex).run(); }

Form parse_rendered(const Chart& chart, const std::string& s, Format f) {
    switch (f) {
        case Format::Text: return parse_form(chart, s);
        case Format::Latex: return parse_form(chart, latex_to_text(s));
        case Format::Structured: {
            json j;
            try {
                j = json::parse(s);
            } catch (const json::exception& e) {
                throw ParseError(std::string("structured input: ") + e.what(), 1, 1);
            }
            return form_from_json(chart, j);
        }
    }
    return {};
}

}  // namespace lepage
