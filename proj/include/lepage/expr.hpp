#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "lepage/multi_index.hpp"
#include "lepage/rational.hpp"

namespace lepage {

/// A jet coordinate u^alpha_I (alpha is 0-based).
struct JetVar {
    int alpha = 0;
    MultiIndex index;

    friend bool operator==(const JetVar&, const JetVar&) = default;
    friend auto operator<=>(const JetVar&, const JetVar&) = default;
};

enum class AtomKind : std::uint8_t { Base = 0, Jet = 1, Gamma = 2, Formal = 3 };

/// An indeterminate of the expression kernel.
///
///   Base(i)                  x^i
///   Jet(alpha, I)            u^alpha_I
///   Gamma(h, K, D)           d^D Gamma^h_K / dx^D, |K| >= 2 (|K| = 1 is the Kronecker delta)
///   Formal(F, D, deps)       d^D/dx^D d/du... F, derivative records sorted
class Atom {
public:
    static Atom base(int i);
    static Atom jet(int alpha, const MultiIndex& I);
    static Atom jet(const JetVar& v) { return jet(v.alpha, v.index); }
    static Atom gamma(int h, const MultiIndex& K, const MultiIndex& D);
    static Atom gamma(int h, const MultiIndex& K) { return gamma(h, K, MultiIndex(K.size())); }
    /// The undifferentiated formal function with id `function` on an m-dimensional base.
    static Atom formal(int function, int m);
    static Atom formal(int function, const MultiIndex& D, std::vector<JetVar> deps);

    AtomKind kind() const noexcept { return kind_; }
    /// i for Base, alpha for Jet, h for Gamma, the function id for Formal.
    int index() const noexcept { return index_; }
    /// I for Jet, K for Gamma, the base-derivative record D for Formal.
    const MultiIndex& multi() const noexcept { return multi_; }
    /// Base-derivative record of a Gamma atom.
    const MultiIndex& gamma_derivative() const noexcept { return deriv_; }
    /// Jet-derivative record of a Formal atom (sorted).
    const std::vector<JetVar>& jet_derivatives() const noexcept { return deps_; }

    bool is_base() const noexcept { return kind_ == AtomKind::Base; }
    bool is_jet() const noexcept { return kind_ == AtomKind::Jet; }
    /// True for an undifferentiated formal function.
    bool is_plain_formal() const noexcept {
        return kind_ == AtomKind::Formal && multi_.is_zero() && deps_.empty();
    }
    JetVar jet_var() const { return JetVar{index_, multi_}; }

    /// Same atom with one more base derivative (Gamma and Formal only).
    Atom differentiate_base(int i) const;
    /// Formal atom with one more jet derivative.
    Atom differentiate_jet(const JetVar& v) const;
    /// The undifferentiated head of a Gamma or Formal atom.
    Atom head() const;

    friend bool operator==(const Atom&, const Atom&) = default;
    friend std::strong_ordering operator<=>(const Atom& a, const Atom& b);

private:
    AtomKind kind_ = AtomKind::Base;
    int index_ = 0;
    MultiIndex multi_;
    MultiIndex deriv_;
    std::vector<JetVar> deps_;
};

/// A product of atoms with integer (possibly negative) powers, sorted by atom.
class Monomial {
public:
    using Factor = std::pair<Atom, int>;

    Monomial() = default;
    explicit Monomial(const Atom& a, int power = 1);

    const std::vector<Factor>& factors() const noexcept { return factors_; }
    bool is_one() const noexcept { return factors_.empty(); }
    int degree_in(const Atom& a) const;
    /// Total degree in jet coordinates (formal atoms are not counted).
    int jet_degree() const;

    Monomial operator*(const Monomial& other) const;
    /// Removes one power of the factor at position k (the power may drop to zero).
    Monomial without(std::size_t k, int power) const;

    friend bool operator==(const Monomial&, const Monomial&) = default;
    friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);

private:
    std::vector<Factor> factors_;
};

/// Exact-rational Laurent polynomial in atoms, kept in canonical form:
/// two expressions are equal iff their term maps coincide, and no zero
/// coefficient is ever stored.
class Expr {
public:
    using TermMap = std::map<Monomial, Rational>;

    Expr() = default;
    Expr(const Rational& c);  // NOLINT: implicit constants read naturally
    Expr(long c) : Expr(Rational(c)) {}  // NOLINT
    Expr(int c) : Expr(Rational(c)) {}   // NOLINT
    explicit Expr(const Atom& a, int power = 1);
    Expr(const Monomial& m, const Rational& c);

    static Expr x(int i) { return Expr(Atom::base(i)); }
    static Expr u(int alpha, const MultiIndex& I) { return Expr(Atom::jet(alpha, I)); }

    const TermMap& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const;
    /// The value of a constant expression (zero included).
    std::optional<Rational> constant_value() const;
    std::size_t size() const noexcept { return terms_.size(); }

    /// Adds c * m in place.
    void add_term(const Monomial& m, const Rational& c);

    Expr& operator+=(const Expr& other);
    Expr& operator-=(const Expr& other);
    Expr& operator*=(const Rational& c);
    friend Expr operator+(Expr a, const Expr& b) { return a += b; }
    friend Expr operator-(Expr a, const Expr& b) { return a -= b; }
    friend Expr operator-(Expr a) { return a *= Rational(-1); }
    friend Expr operator*(const Expr& a, const Expr& b);
    friend Expr operator*(Expr a, const Rational& c) { return a *= c; }
    friend Expr operator*(const Rational& c, Expr a) { return a *= c; }
    friend Expr operator*(Expr a, int c) { return a *= Rational(c); }
    friend Expr operator*(int c, Expr a) { return a *= Rational(c); }

    /// Non-negative integer power.
    Expr pow(int n) const;

    /// All atoms occurring in the expression, sorted.
    std::vector<Atom> atoms() const;
    bool contains(const Atom& a) const;

    friend bool operator==(const Expr&, const Expr&) = default;

private:
    TermMap terms_;
};

}  // namespace lepage
