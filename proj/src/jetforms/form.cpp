#include "lepage/form.hpp"

#include <algorithm>

#include "lepage/calculus.hpp"
#include "lepage/errors.hpp"

namespace lepage {

int canonicalize(Word& factors) {
    int sign = 1;
    // Insertion sort: words are short and the parity falls out of the swaps.
    for (std::size_t i = 1; i < factors.size(); ++i) {
        for (std::size_t j = i; j > 0; --j) {
            auto c = factors[j - 1] <=> factors[j];
            if (c == 0) return 0;
            if (c < 0) break;
            std::swap(factors[j - 1], factors[j]);
            sign = -sign;
        }
    }
    return sign;
}

std::pair<int, int> bidegree(const Word& w) {
    int p = 0;
    for (const auto& b : w)
        if (b.is_theta()) ++p;
    return {p, static_cast<int>(w.size()) - p};
}

namespace {

/// Merges two canonical words; sign of the shuffle, or 0 on a repeated factor.
int merge_words(const Word& a, const Word& b, Word& out) {
    out.clear();
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    int inversions = 0;
    while (i < a.size() && j < b.size()) {
        auto c = a[i] <=> b[j];
        if (c == 0) return 0;
        if (c < 0) {
            out.push_back(a[i++]);
        } else {
            // b[j] jumps over the remaining a.size() - i factors of a.
            inversions += static_cast<int>(a.size() - i);
            out.push_back(b[j++]);
        }
    }
    out.insert(out.end(), a.begin() + static_cast<long>(i), a.end());
    out.insert(out.end(), b.begin() + static_cast<long>(j), b.end());
    return inversions % 2 ? -1 : 1;
}

int theta_dimension(const Form& f) {
    for (const auto& [w, c] : f.terms())
        for (const auto& b : w)
            if (b.is_theta()) return b.multi.size();
    return -1;
}

}  // namespace

Form::Form(const Expr& f) {
    if (!f.is_zero()) terms_.emplace(Word{}, f);
}

Form::Form(const Word& w, const Expr& coeff) {
    Word sorted = w;
    int sign = canonicalize(sorted);
    degree_ = static_cast<int>(w.size());
    if (sign == 0 || coeff.is_zero()) return;
    terms_.emplace(std::move(sorted), sign > 0 ? coeff : -coeff);
}

Form Form::zero(int degree) {
    Form out;
    out.degree_ = std::max(0, degree);
    return out;
}

Form Form::dx(int i) { return Form(Word{BasisOneForm::dx(i)}, Expr(1)); }

Form Form::theta(int alpha, const MultiIndex& I) {
    return Form(Word{BasisOneForm::theta(alpha, I)}, Expr(1));
}

Form Form::du(const Chart& chart, int alpha, const MultiIndex& I) {
    chart.check_alpha(alpha);
    chart.check_multi_index(I);
    Form out = theta(alpha, I);
    for (int j = 0; j < chart.m(); ++j) {
        MultiIndex up = I.plus_unit(j);
        chart.check_order(up);
        out += dx(j) * Expr::u(alpha, up);
    }
    return out;
}

Expr Form::scalar() const {
    if (degree_ != 0 && !terms_.empty()) throw DomainError("form is not a 0-form");
    auto it = terms_.find(Word{});
    return it == terms_.end() ? Expr() : it->second;
}

void Form::add_term(const Word& w, const Expr& coeff) {
    int d = static_cast<int>(w.size());
    if (coeff.is_zero()) {
        if (terms_.empty()) degree_ = d;
        return;
    }
    if (terms_.empty()) {
        degree_ = d;
    } else if (d != degree_) {
        throw DomainError("cannot add forms of degree " + std::to_string(degree_) + " and " +
                          std::to_string(d));
    }
    auto [it, inserted] = terms_.try_emplace(w, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Form& Form::operator+=(const Form& other) {
    if (terms_.empty() && other.terms_.empty()) {
        degree_ = std::max(degree_, other.degree_);
        return *this;
    }
    for (const auto& [w, c] : other.terms_) add_term(w, c);
    return *this;
}

Form& Form::operator-=(const Form& other) {
    for (const auto& [w, c] : other.terms_) add_term(w, -c);
    return *this;
}

Form operator*(const Form& a, const Expr& c) {
    Form out;
    out.degree_ = a.degree_;
    if (c.is_zero()) return out;
    for (const auto& [w, coeff] : a.terms_) out.add_term(w, coeff * c);
    return out;
}

int Form::max_theta_order() const {
    int order = -1;
    for (const auto& [w, c] : terms_)
        for (const auto& b : w)
            if (b.is_theta()) order = std::max(order, b.multi.length());
    return order;
}

int Form::order(const Chart& chart) const {
    int order = std::max(0, max_theta_order());
    for (const auto& [w, c] : terms_) order = std::max(order, jet_order(chart, c));
    return order;
}

Form wedge(const Form& a, const Form& b) {
    int da = theta_dimension(a), db = theta_dimension(b);
    if (da >= 0 && db >= 0 && da != db)
        throw ChartMismatchError("wedge of forms from charts of different dimension");
    Form out;
    Word merged;
    for (const auto& [wa, ca] : a.terms())
        for (const auto& [wb, cb] : b.terms()) {
            int sign = merge_words(wa, wb, merged);
            if (sign == 0) continue;
            Expr c = ca * cb;
            out.add_term(merged, sign > 0 ? c : -c);
        }
    if (out.is_zero()) out = Form::zero(a.degree() + b.degree());
    return out;
}

Form wedge(std::initializer_list<Form> factors) {
    Form out(Expr(1));
    for (const auto& f : factors) out = wedge(out, f);
    return out;
}

}  // namespace lepage
