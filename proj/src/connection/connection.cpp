#include "lepage/connection.hpp"

#include <algorithm>

#include "lepage/calculus.hpp"
#include "lepage/errors.hpp"

namespace lepage {

// --- Connection ---------------------------------------------------------------

Connection Connection::flat(int m) { return Connection(m, Kind::Flat); }
Connection Connection::formal(int m) { return Connection(m, Kind::Formal); }
Connection Connection::concrete(int m) { return Connection(m, Kind::Concrete); }

Expr Connection::coefficient(int h, int i, int j) const {
    if (h < 0 || h >= m_ || i < 0 || i >= m_ || j < 0 || j >= m_)
        throw DimensionError("connection index out of range");
    switch (kind_) {
        case Kind::Flat: return {};
        case Kind::Formal:
            return Expr(Atom::gamma(h, MultiIndex::unit(m_, i) + MultiIndex::unit(m_, j)));
        case Kind::Concrete: {
            auto it = table_.find({h, std::min(i, j), std::max(i, j)});
            return it == table_.end() ? Expr() : it->second;
        }
    }
    return {};
}

void Connection::set(const Chart& chart, int h, int i, int j, const Expr& value) {
    if (chart.m() != m_) throw ChartMismatchError("connection and chart have different m");
    if (!is_base_only(chart, value))
        throw DomainError("connection coefficients must depend on the base coordinates only");
    if (kind_ == Kind::Flat) kind_ = Kind::Concrete;
    if (kind_ != Kind::Concrete) throw DomainError("only concrete connections take explicit values");
    chart.check_base_index(h);
    chart.check_base_index(i);
    chart.check_base_index(j);
    auto key = std::make_tuple(h, std::min(i, j), std::max(i, j));
    if (value.is_zero()) table_.erase(key);
    else table_[key] = value;
}

// --- prolongation ---------------------------------------------------------------

const Expr& GammaProlongation::at(int h, const MultiIndex& K) const {
    static const Expr zero;
    if (K.length() > max_level_ + 1 || K.length() == 0)
        throw DomainError("prolongation level " + std::to_string(K.length()) + " not computed");
    auto it = table_.find({h, K});
    return it == table_.end() ? zero : it->second;
}

GammaProlongation gamma_prolong(const Chart& chart, const Connection& c, int l) {
    if (c.m() != chart.m()) throw ChartMismatchError("connection and chart have different m");
    if (l < 0) throw DomainError("prolongation level must be non-negative");
    int m = chart.m();
    GammaProlongation out;
    out.m_ = m;
    out.max_level_ = l;
    for (int h = 0; h < m; ++h) out.table_[{h, chart.unit(h)}] = Expr(1);
    for (int level = 2; level <= l + 1; ++level) {
        for (const auto& K : multi_indices_of_length(m, level)) {
            for (int g = 0; g < m; ++g) {
                // symmetrize T(K - 1_j, j) = dGamma^g_{K-1_j}/dx^j + Gamma^g_{hj} Gamma^h_{K-1_j}
                Expr value;
                for (int j = 0; j < m; ++j) {
                    if (K[j] == 0) continue;
                    MultiIndex lower = *K.minus_unit(j);
                    Expr t = partial_x(chart, out.at(g, lower), j);
                    for (int h = 0; h < m; ++h) {
                        const Expr& gl = out.at(h, lower);
                        if (gl.is_zero()) continue;
                        Expr gc = c.coefficient(g, h, j);
                        if (!gc.is_zero()) t += gc * gl;
                    }
                    value += t * make_rational(Integer(K[j]), Integer(level));
                }
                if (!value.is_zero()) out.table_[{g, K}] = value;
            }
        }
    }
    return out;
}

// --- VForm ----------------------------------------------------------------------

VForm::VForm(const Form& f) : VForm(Slots{}, f) {}

VForm::VForm(Slots slots, const Form& f) {
    std::sort(slots.begin(), slots.end());
    degree_ = f.degree();
    if (!f.is_zero()) terms_.emplace(std::move(slots), f);
}

int VForm::slot_count() const {
    if (terms_.empty()) return 0;
    int r = static_cast<int>(terms_.begin()->first.size());
    for (const auto& [s, f] : terms_)
        if (static_cast<int>(s.size()) != r) throw DomainError("mixed slot counts");
    return r;
}

Form VForm::form_part() const {
    auto it = terms_.find(Slots{});
    return it == terms_.end() ? Form::zero(degree_) : it->second;
}

void VForm::add(const Slots& slots, const Form& f) {
    if (f.is_zero()) {
        if (terms_.empty()) degree_ = f.degree();
        return;
    }
    if (terms_.empty()) degree_ = f.degree();
    else if (f.degree() != degree_) throw DomainError("cannot add vector-valued forms of different degree");
    Slots s = slots;
    std::sort(s.begin(), s.end());
    auto [it, inserted] = terms_.try_emplace(s, f);
    if (!inserted) {
        it->second += f;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

VForm& VForm::operator+=(const VForm& o) {
    if (terms_.empty() && o.terms_.empty()) degree_ = std::max(degree_, o.degree_);
    for (const auto& [s, f] : o.terms_) add(s, f);
    return *this;
}

VForm& VForm::operator-=(const VForm& o) {
    for (const auto& [s, f] : o.terms_) add(s, -f);
    return *this;
}

VForm operator*(const VForm& a, const Expr& c) {
    VForm out;
    out.degree_ = a.degree_;
    for (const auto& [s, f] : a.terms_) out.add(s, f * c);
    return out;
}

// --- S_nabla, d_h nabla, C --------------------------------------------------------

namespace {

Slots with_slot(Slots s, int h) {
    s.insert(std::upper_bound(s.begin(), s.end(), h), h);
    return s;
}

Slots without_slot(const Slots& s, std::size_t a) {
    Slots out = s;
    out.erase(out.begin() + static_cast<long>(a));
    return out;
}

void check_connection(const Chart& chart, const Connection& c) {
    if (c.m() != chart.m()) throw ChartMismatchError("connection and chart have different m");
}

}  // namespace

VForm s_nabla(const Chart& chart, const Connection& c, const VForm& v, std::optional<int> k) {
    check_connection(chart, c);
    int top = 0;
    for (const auto& [s, f] : v.terms()) top = std::max(top, f.max_theta_order());
    VForm out;
    out.add({}, Form::zero(v.degree()));
    if (top <= 0) return out;
    GammaProlongation G = gamma_prolong(chart, c, top - 1);
    int m = chart.m();
    for (const auto& [slots, form] : v.terms()) {
        for (int h = 0; h < m; ++h) {
            Form image = apply_derivation(
                form, 0, [](const Expr&) { return Form(); },
                [&](const BasisOneForm& b) {
                    Form img;
                    if (!b.is_theta()) return img;
                    const MultiIndex& L = b.multi;
                    if (k && L.length() > *k) return img;
                    for (const auto& K : sub_indices(L)) {
                        if (K.is_zero()) continue;
                        const Expr& g = G.at(h, K);
                        if (g.is_zero()) continue;
                        MultiIndex J = *L.checked_difference(K);
                        img += Form::theta(b.index, J) * (g * Rational(multi_binomial(L, K)));
                    }
                    return img;
                });
            out.add(with_slot(slots, h), image);
        }
    }
    return out;
}

VForm s_nabla_power(const Chart& chart, const Connection& c, const VForm& v, int r,
                    std::optional<int> k) {
    VForm out = v;
    for (int t = 0; t < r; ++t) out = s_nabla(chart, c, out, k);
    return out;
}

VForm d_h_nabla(const Chart& chart, const Connection& c, const VForm& v) {
    check_connection(chart, c);
    int m = chart.m();
    VForm out;
    out.add({}, Form::zero(v.degree() + 1));
    for (const auto& [slots, form] : v.terms()) {
        out.add(slots, d_h(chart, form));
        for (std::size_t a = 0; a < slots.size(); ++a) {
            int h = slots[a];
            Slots rest = without_slot(slots, a);
            for (int kk = 0; kk < m; ++kk)
                for (int j = 0; j < m; ++j) {
                    Expr g = c.coefficient(kk, h, j);
                    if (g.is_zero()) continue;
                    out.add(with_slot(rest, kk), wedge(Form::dx(j), form) * g);
                }
        }
    }
    return out;
}

VForm contract_C(const Chart& chart, const VForm& v) {
    VForm out;
    out.add({}, Form::zero(v.degree() - 1));
    for (const auto& [slots, form] : v.terms()) {
        if (slots.empty()) throw DomainError("contraction needs at least one vector slot");
        for (std::size_t a = 0; a < slots.size(); ++a)
            out.add(without_slot(slots, a), interior_total(chart, slots[a], form));
    }
    return out;
}

// --- the conjectured operator -------------------------------------------------------

Rational printed_coefficient(int p, int q, int m, int r) {
    Rational c = make_rational(factorial(m - q), Integer(Integer(p) * (m - q + r + 1) * factorial(r)));
    return r % 2 ? Rational(-c) : c;
}

Rational appendix_coefficient(int p, int q, int m, int r) {
    Rational c = make_rational(factorial(m - q),
                               Integer(Integer(p) * factorial(m - q + r + 1) * factorial(r + 1)));
    return r % 2 ? Rational(-c) : c;
}

CoefficientRule coefficient_rule(const std::string& name) {
    if (name == "printed") return printed_coefficient;
    if (name == "appendix") return appendix_coefficient;
    throw DomainError("unknown coefficient rule '" + name + "' (expected printed or appendix)");
}

std::vector<Form> conjecture_terms(const Chart& chart, const Connection& c, const Form& omega,
                                   std::optional<int> max_r) {
    std::vector<Form> out;
    VForm S(omega);
    for (int r = 0;; ++r) {
        if (max_r && r > *max_r) break;
        S = s_nabla(chart, c, S);
        if (S.is_zero()) break;
        VForm T = contract_C(chart, S);
        for (int t = 0; t < r; ++t) T = contract_C(chart, d_h_nabla(chart, c, T));
        out.push_back(T.form_part());
    }
    return out;
}

namespace {

std::pair<int, int> checked_bidegree(const Chart& chart, const Form& omega,
                                     std::optional<std::pair<int, int>> bideg) {
    if (!bideg) {
        bideg = homogeneous_bidegree(omega);
    } else if (!has_bidegree(omega, bideg->first, bideg->second)) {
        throw DomainError("form is not of the stated bidegree");
    }
    if (bideg->first < 1) throw DomainError("homotopy operator needs contact degree p >= 1");
    if (bideg->second < 1 || bideg->second > chart.m())
        throw DomainError("homotopy operator needs 1 <= q <= m");
    return *bideg;
}

}  // namespace

Form p_nabla_conjecture(const Chart& chart, const Connection& c, const Form& omega,
                        const CoefficientRule& rule, std::optional<std::pair<int, int>> bideg) {
    if (omega.is_zero() && !bideg) return Form::zero(omega.degree() - 1);
    auto [p, q] = checked_bidegree(chart, omega, bideg);
    Form out = Form::zero(p + q - 1);
    auto terms = conjecture_terms(chart, c, omega);
    for (std::size_t r = 0; r < terms.size(); ++r)
        out += terms[r] * rule(p, q, chart.m(), static_cast<int>(r));
    if (out.is_zero()) return Form::zero(p + q - 1);
    return out;
}

Form homotopy_defect(const Chart& chart, const Connection& c, const Form& omega,
                     const CoefficientRule& rule, std::optional<std::pair<int, int>> bideg) {
    auto [p, q] = checked_bidegree(chart, omega, bideg);
    Form out = d_h(chart, p_nabla_conjecture(chart, c, omega, rule, std::make_pair(p, q)));
    if (q < chart.m())
        out += p_nabla_conjecture(chart, c, d_h(chart, omega), rule, std::make_pair(p, q + 1));
    out -= omega;
    if (out.is_zero()) return Form::zero(p + q);
    return out;
}

}  // namespace lepage
