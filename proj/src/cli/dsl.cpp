#include "lepage/dsl.hpp"

#include <cctype>

#include "lepage/calculus.hpp"
#include "lepage/errors.hpp"

namespace lepage {

const LagrangianSpec& ProblemSpec::lagrangian(const std::string& name) const {
    auto it = lagrangians.find(name);
    if (it == lagrangians.end()) throw DomainError("no Lagrangian named '" + name + "'");
    return it->second;
}

const Form& ProblemSpec::form(const std::string& name) const {
    auto it = forms.find(name);
    if (it == forms.end()) throw DomainError("no form named '" + name + "'");
    return it->second;
}

const Connection& ProblemSpec::gamma() const {
    if (!connection) throw DomainError("the problem declares no connection (Gamma = ...)");
    return *connection;
}

namespace {

struct Token {
    enum class Kind { Ident, Int, Punct, End };
    Kind kind = Kind::End;
    std::string text;
    int line = 1, col = 1;
};

std::vector<Token> lex(const std::string& src) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t k = 0;
    auto advance = [&](std::size_t count) {
        for (std::size_t t = 0; t < count; ++t, ++k) {
            if (src[k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (k < src.size()) {
        char c = src[k];
        if (c == '#') {
            while (k < src.size() && src[k] != '\n') advance(1);
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        Token t;
        t.line = line;
        t.col = col;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t e = k;
            while (e < src.size() && (std::isalnum(static_cast<unsigned char>(src[e])) || src[e] == '_')) ++e;
            t.kind = Token::Kind::Ident;
            t.text = src.substr(k, e - k);
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t e = k;
            while (e < src.size() && std::isdigit(static_cast<unsigned char>(src[e]))) ++e;
            t.kind = Token::Kind::Int;
            t.text = src.substr(k, e - k);
        } else if (std::string("[]();,=+-*/^&:").find(c) != std::string::npos) {
            t.kind = Token::Kind::Punct;
            t.text = std::string(1, c);
        } else {
            throw ParseError(std::string("unexpected character '") + c + "'", line, col);
        }
        advance(t.text.size());
        out.push_back(t);
    }
    Token end;
    end.line = line;
    end.col = col;
    out.push_back(end);
    return out;
}

class Parser {
public:
    Parser(const std::string& text, ProblemSpec& spec, bool chart_ready)
        : toks_(lex(text)), spec_(spec), chart_ready_(chart_ready) {}

    void problem(std::optional<int> cap) {
        std::optional<int> m, n;
        while (!at_end()) {
            const Token& t = peek();
            if (t.kind != Token::Kind::Ident)
                throw error(t, "expected a statement", {"m", "n", "formal", "form", "Gamma", "NAME:"});
            if ((t.text == "m" || t.text == "n") && peek(1).text == "=") {
                if (chart_ready_) throw error(t, "dimensions must come before every other statement");
                next();
                expect("=");
                int v = integer();
                if (v < 1) throw error(t, t.text + " must be positive");
                (t.text == "m" ? m : n) = v;
                expect(";");
                if (m && n) {
                    spec_.chart = Chart(*m, *n, cap.value_or(Chart::kDefaultOrderCap));
                    chart_ready_ = true;
                }
                continue;
            }
            need_chart(t);
            if (t.text == "formal") {
                formal();
            } else if (t.text == "Gamma") {
                connection();
            } else if (t.text == "form") {
                next();
                Token name = ident();
                check_fresh(name);
                expect("=");
                Form v = value();
                expect(";");
                spec_.forms.emplace(name.text, v);
            } else if (peek(1).text == ":") {
                lagrangian();
            } else {
                throw error(t, "unknown statement '" + t.text + "'",
                            {"m", "n", "formal", "form", "Gamma", "NAME:"});
            }
        }
        if (!chart_ready_) throw error(peek(), "missing dimension declarations", {"m = INT;", "n = INT;"});
        for (auto& [name, l] : spec_.lagrangians) l.chart = spec_.chart;
    }

    Form single_value() {
        Form v = value();
        if (!at_end()) throw error(peek(), "trailing input", {"end of input"});
        return v;
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    ProblemSpec& spec_;
    bool chart_ready_;

    const Chart& chart() const { return spec_.chart; }
    const Token& peek(std::size_t ahead = 0) const {
        return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
    }
    bool at_end() const { return peek().kind == Token::Kind::End; }
    const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
    bool accept(const std::string& p) {
        if (peek().kind == Token::Kind::Punct && peek().text == p) {
            next();
            return true;
        }
        return false;
    }
    static ParseError error(const Token& t, const std::string& msg, std::vector<std::string> exp = {}) {
        return ParseError(msg, t.line, t.col, std::move(exp));
    }
    void expect(const std::string& p) {
        if (!accept(p)) {
            const Token& t = peek();
            throw error(t, at_end() ? "unexpected end of input" : "unexpected '" + t.text + "'",
                        {"'" + p + "'"});
        }
    }
    Token ident() {
        if (peek().kind != Token::Kind::Ident) throw error(peek(), "expected a name", {"NAME"});
        return next();
    }
    int integer() {
        bool neg = accept("-");
        if (peek().kind != Token::Kind::Int) throw error(peek(), "expected an integer", {"INT"});
        const Token& t = next();
        if (t.text.size() > 9) throw error(t, "integer too large");
        int v = std::stoi(t.text);
        return neg ? -v : v;
    }
    void need_chart(const Token& t) const {
        if (!chart_ready_) throw error(t, "declare m and n first", {"m = INT;", "n = INT;"});
    }
    void check_fresh(const Token& name) const {
        if (spec_.forms.count(name.text) || spec_.lagrangians.count(name.text) ||
            chart().find_function(name.text))
            throw error(name, "name '" + name.text + "' is already defined");
        static const std::vector<std::string> reserved{"x", "u", "dx", "theta", "du", "w0", "w",
                                                       "G", "D", "Gamma", "form", "formal"};
        for (const auto& r : reserved)
            if (name.text == r) throw error(name, "'" + r + "' is reserved");
    }

    void formal() {
        next();
        Token name = ident();
        check_fresh(name);
        FormalFunctionDecl decl;
        decl.name = name.text;
        Token kind = ident();
        if (kind.text == "order") {
            accept("=");
            decl.max_order = integer();
            if (decl.max_order < 0) throw error(kind, "order must be non-negative");
            if (decl.max_order > chart().order_cap())
                throw error(kind, "order exceeds the jet-order cap " + std::to_string(chart().order_cap()));
        } else if (kind.text == "base") {
            decl.dependence = Dependence::Base;
        } else {
            throw error(kind, "unexpected '" + kind.text + "'", {"order", "base"});
        }
        if (peek().kind == Token::Kind::Ident && peek().text == "nonvanishing") {
            next();
            decl.nonvanishing = true;
        }
        expect(";");
        spec_.chart.declare(decl);
    }

    void connection() {
        Token g = next();
        int m = chart().m();
        if (accept("=")) {
            Token kind = ident();
            if (spec_.connection) throw error(kind, "Gamma is already set");
            if (kind.text == "flat") spec_.connection = Connection::flat(m);
            else if (kind.text == "formal") spec_.connection = Connection::formal(m);
            else throw error(kind, "unexpected '" + kind.text + "'", {"flat", "formal"});
            expect(";");
            return;
        }
        expect("[");
        int h = index_1(m, "Gamma index");
        expect(";");
        int i = index_1(m, "Gamma index");
        expect(",");
        int j = index_1(m, "Gamma index");
        expect("]");
        expect("=");
        Token at = peek();
        Expr v = scalar(value(), at);
        expect(";");
        if (!spec_.connection) spec_.connection = Connection::concrete(m);
        if (spec_.connection->kind() == Connection::Kind::Formal)
            throw error(g, "cannot set entries of a formal connection");
        try {
            spec_.connection->set(chart(), h, i, j, v);
        } catch (const Error& e) {
            throw error(at, e.what());
        }
    }

    void lagrangian() {
        Token name = ident();
        check_fresh(name);
        expect(":");
        Token kw = ident();
        if (kw.text != "order") throw error(kw, "unexpected '" + kw.text + "'", {"order"});
        expect("=");
        int k = integer();
        Token at = peek();
        Expr L = scalar(value(), at);
        expect(";");
        LagrangianSpec spec{chart(), L, k};
        try {
            spec.validate();
        } catch (const Error& e) {
            throw error(name, e.what());
        }
        spec_.lagrangians.emplace(name.text, spec);
    }

    Expr scalar(const Form& f, const Token& at) const {
        if (f.degree() != 0) throw error(at, "expected a function, found a " + std::to_string(f.degree()) + "-form");
        return f.scalar();
    }

    int index_1(int bound, const std::string& what) {
        const Token& t = peek();
        int v = integer();
        if (v < 1 || v > bound)
            throw error(t, what + " " + std::to_string(v) + " out of range 1.." + std::to_string(bound));
        return v - 1;
    }

    MultiIndex counts(const Token& at) {
        std::vector<int> c{integer()};
        while (accept(",")) c.push_back(integer());
        for (int v : c)
            if (v < 0) throw error(at, "multi-index entries must be non-negative");
        if (static_cast<int>(c.size()) != chart().m())
            throw error(at, "dimension mismatch: multi-index has " + std::to_string(c.size()) +
                                " entries, m = " + std::to_string(chart().m()));
        MultiIndex I(c);
        if (I.length() > chart().order_cap())
            throw error(at, "multi-index order exceeds the jet-order cap " + std::to_string(chart().order_cap()));
        return I;
    }

    // "[a; I]" or "[a]"
    std::pair<int, MultiIndex> field_index(const Token& at) {
        expect("[");
        int a = index_1(chart().n(), "field index");
        MultiIndex I = chart().zero_index();
        if (accept(";")) I = counts(at);
        expect("]");
        return {a, I};
    }

    // value := ['-'] wedge (('+' | '-') wedge)*
    Form value() {
        Token start = peek();
        Form v = accept("-") ? -wedge_chain() : wedge_chain();
        while (peek().kind == Token::Kind::Punct && (peek().text == "+" || peek().text == "-")) {
            Token op = next();
            Form r = wedge_chain();
            if (r.degree() != v.degree() && !r.is_zero() && !v.is_zero())
                throw error(op, "cannot add a " + std::to_string(v.degree()) + "-form and a " +
                                    std::to_string(r.degree()) + "-form");
            if (op.text == "+") v += r;
            else v -= r;
            if (v.is_zero()) v = Form::zero(std::max(v.degree(), r.degree()));
        }
        return v;
    }

    Form wedge_chain() {
        Form v = product();
        while (accept("&")) v = wedge(v, product());
        return v;
    }

    Form product() {
        Form v = power();
        while (peek().kind == Token::Kind::Punct && (peek().text == "*" || peek().text == "/")) {
            Token op = next();
            Form r = power();
            if (op.text == "*") {
                if (v.degree() > 0 && r.degree() > 0)
                    throw error(op, "'*' multiplies by functions only; use '&' for the wedge product");
                v = wedge(v, r);
            } else {
                Expr d = scalar(r, op);
                if (d.is_zero()) throw error(op, "division by zero");
                Expr inv;
                try {
                    inv = power_of(d, -1);
                } catch (const Error& e) {
                    throw error(op, e.what());
                }
                v = v * inv;
            }
        }
        return v;
    }

    Expr power_of(const Expr& e, int k) const {
        if (auto c = e.constant_value()) {
            if (k >= 0) return e.pow(k);
            Rational inv = 1 / *c;
            return Expr(inv).pow(-k);
        }
        return lepage::power(chart(), e, k);
    }

    Form power() {
        Form base = unary_primary();
        if (accept("^")) {
            Token at = peek();
            int k = integer();
            Expr e = scalar(base, at);
            try {
                return Form(power_of(e, k));
            } catch (const Error& err) {
                throw error(at, err.what());
            }
        }
        return base;
    }

    Form unary_primary() {
        if (accept("-")) return -power();
        return primary();
    }

    Atom variable(const Token& at) {
        Token t = ident();
        if (t.text == "x") {
            expect("[");
            int i = index_1(chart().m(), "base index");
            expect("]");
            return Atom::base(i);
        }
        if (t.text == "u") {
            auto [a, I] = field_index(at);
            return Atom::jet(a, I);
        }
        throw error(t, "expected a coordinate", {"x[i]", "u[a; I]"});
    }

    Form primary() {
        const Token& t = peek();
        if (t.kind == Token::Kind::Int) {
            next();
            if (t.text.size() > 30) throw error(t, "integer literal too large");
            return Form(Expr(Rational(Integer(t.text))));
        }
        if (accept("(")) {
            Form v = value();
            expect(")");
            return v;
        }
        if (t.kind != Token::Kind::Ident)
            throw error(t, at_end() ? "unexpected end of input" : "unexpected '" + t.text + "'",
                        {"number", "(", "x[i]", "u[a; I]", "dx[i]", "theta[a; I]", "w0", "NAME"});
        Token id = t;
        const std::string& s = id.text;
        int m = chart().m();
        if (s == "x" || s == "u") return Form(Expr(variable(id)));
        next();
        if (s == "dx") {
            expect("[");
            int i = index_1(m, "base index");
            expect("]");
            return Form::dx(i);
        }
        if (s == "theta" || s == "du") {
            auto [a, I] = field_index(id);
            return s == "theta" ? Form::theta(a, I) : Form::du(chart(), a, I);
        }
        if (s == "w0") return omega0(chart());
        if (s == "w") {
            expect("[");
            int j = index_1(m, "base index");
            expect("]");
            return omega_basis(chart(), {j});
        }
        if (s == "G") return Form(Expr(gamma_atom(id)));
        if (s == "D") {
            expect("(");
            Token head_tok = peek();
            Expr head;
            Token h = ident();
            if (h.text == "G") head = Expr(gamma_atom(h));
            else head = Expr(function_atom(h));
            expect(";");
            do {
                Token vt = peek();
                Atom v = variable(vt);
                head = partial(chart(), head, v);
            } while (accept(","));
            expect(")");
            return Form(head);
        }
        if (auto it = spec_.forms.find(s); it != spec_.forms.end()) return it->second;
        if (auto it = spec_.lagrangians.find(s); it != spec_.lagrangians.end()) return Form(it->second.L);
        return Form(Expr(function_atom(id)));
    }

    Atom function_atom(const Token& t) const {
        if (!chart().find_function(t.text)) throw error(t, "unknown identifier '" + t.text + "'");
        return chart().function_atom(t.text);
    }

    Atom gamma_atom(const Token& at) {
        expect("[");
        int h = index_1(chart().m(), "Gamma index");
        expect(";");
        MultiIndex K = counts(at);
        expect("]");
        if (K.length() < 2) throw error(at, "connection atoms need |K| >= 2");
        return Atom::gamma(h, K);
    }
};

}  // namespace

ProblemSpec parse_problem(const std::string& text, std::optional<int> order_cap) {
    ProblemSpec spec;
    Parser p(text, spec, false);
    p.problem(order_cap);
    return spec;
}

Form parse_value(const ProblemSpec& spec, const std::string& text) {
    ProblemSpec copy = spec;
    Parser p(text, copy, true);
    return p.single_value();
}

Form parse_form(const Chart& chart, const std::string& text) {
    ProblemSpec spec;
    spec.chart = chart;
    return parse_value(spec, text);
}

Expr parse_expr(const Chart& chart, const std::string& text) {
    Form f = parse_form(chart, text);
    if (f.degree() != 0) throw ParseError("expected a function, found a form", 1, 1);
    return f.scalar();
}

}  // namespace lepage
