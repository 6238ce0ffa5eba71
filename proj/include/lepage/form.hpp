#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "lepage/chart.hpp"
#include "lepage/expr.hpp"

namespace lepage {

/// A basis one-form: dx^i or the contact form theta^alpha_I.
struct BasisOneForm {
    enum class Kind : std::uint8_t { Theta = 0, Dx = 1 };

    Kind kind = Kind::Dx;
    int index = 0;      // alpha for Theta, i for Dx
    MultiIndex multi;   // I for Theta

    static BasisOneForm dx(int i) { return {Kind::Dx, i, MultiIndex()}; }
    static BasisOneForm theta(int alpha, const MultiIndex& I) { return {Kind::Theta, alpha, I}; }
    bool is_theta() const noexcept { return kind == Kind::Theta; }
    bool is_dx() const noexcept { return kind == Kind::Dx; }

    friend bool operator==(const BasisOneForm&, const BasisOneForm&) = default;
    friend auto operator<=>(const BasisOneForm&, const BasisOneForm&) = default;
};

/// A canonical wedge word: theta factors sorted by (alpha, I), then dx factors
/// sorted by i, with no repeats.
using Word = std::vector<BasisOneForm>;

/// Sorts `factors` into canonical order; returns the sign of the permutation,
/// or 0 when a factor repeats.
int canonicalize(Word& factors);

/// (number of theta factors, number of dx factors)
std::pair<int, int> bidegree(const Word& w);

/// A differential form on the chart of J^infinity, stored in the theta/dx basis.
/// Terms of different contact degree may be mixed; the total degree is uniform.
class Form {
public:
    using TermMap = std::map<Word, Expr>;

    Form() = default;
    /// A 0-form.
    Form(const Expr& f);  // NOLINT: functions are 0-forms
    Form(const Word& w, const Expr& coeff);

    /// The zero form of the given degree.
    static Form zero(int degree);
    static Form dx(int i);
    static Form theta(int alpha, const MultiIndex& I);
    /// du^alpha_I = theta^alpha_I + u^alpha_{I+1_j} dx^j.
    static Form du(const Chart& chart, int alpha, const MultiIndex& I);

    const TermMap& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    /// Total degree; 0 for the zero form.
    int degree() const noexcept { return degree_; }
    /// Scalar value of a 0-form (zero for the zero form).
    Expr scalar() const;

    void add_term(const Word& w, const Expr& coeff);

    Form& operator+=(const Form& other);
    Form& operator-=(const Form& other);
    friend Form operator+(Form a, const Form& b) { return a += b; }
    friend Form operator-(Form a, const Form& b) { return a -= b; }
    friend Form operator-(const Form& a) { return a * Expr(-1); }
    friend Form operator*(const Form& a, const Expr& c);
    friend Form operator*(const Expr& c, const Form& a) { return a * c; }
    friend Form operator*(const Form& a, const Rational& c) { return a * Expr(c); }
    friend Form operator*(const Rational& c, const Form& a) { return a * Expr(c); }

    /// Keeps the terms accepted by `pred(word)`.
    template <class Pred>
    Form filter(Pred&& pred) const {
        Form out;
        for (const auto& [w, c] : terms_)
            if (pred(w)) out.add_term(w, c);
        return out;
    }

    /// Applies f to every coefficient.
    template <class Fn>
    Form map_coefficients(Fn&& f) const {
        Form out;
        for (const auto& [w, c] : terms_) out.add_term(w, f(c));
        return out;
    }

    /// Largest |I| among theta factors (-1 if none).
    int max_theta_order() const;
    /// Largest jet order among coefficients and theta factors.
    int order(const Chart& chart) const;

    friend bool operator==(const Form& a, const Form& b) { return a.terms_ == b.terms_; }

private:
    TermMap terms_;
    int degree_ = 0;
};

/// Exterior product.
Form wedge(const Form& a, const Form& b);
Form wedge(std::initializer_list<Form> factors);

}  // namespace lepage
