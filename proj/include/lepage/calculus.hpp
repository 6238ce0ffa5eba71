#pragma once

#include <map>
#include <optional>

#include "lepage/chart.hpp"
#include "lepage/expr.hpp"

namespace lepage {

/// Exact partial derivative. Differentiating by x^i or u^alpha_I chains through
/// connection and formal-function atoms; any other atom is treated as an
/// independent symbol.
Expr partial(const Chart& chart, const Expr& e, const Atom& a);
inline Expr partial_x(const Chart& chart, const Expr& e, int i) {
    return partial(chart, e, Atom::base(i));
}
inline Expr partial_u(const Chart& chart, const Expr& e, const JetVar& v) {
    return partial(chart, e, Atom::jet(v));
}
/// Iterated base derivative d^D / dx^D.
Expr partial_x(const Chart& chart, const Expr& e, const MultiIndex& D);

/// d_i e = de/dx^i + sum u^alpha_{I+1_i} de/du^alpha_I, formal functions
/// contributing their full declared dependency set.
Expr total_derivative(const Chart& chart, const Expr& e, int i);

/// d_I = composition of total derivatives.
Expr iterated_total(const Chart& chart, const Expr& e, const MultiIndex& I);

/// sum_{K <= I} I!/(K!(I-K)!) d_K f d_{I-K} g.
Expr leibniz_dI(const Chart& chart, const Expr& f, const Expr& g, const MultiIndex& I);

struct BinomialCheck {
    Rational lhs;
    Rational rhs;
    bool equal;
};

/// sum_{0<=K<=I} (-1)^|K| I! / ((|K|+p+1) K! (I-K)!)  against  p! |I|! / (|I|+p+1)!.
BinomialCheck weighted_binomial_check(const MultiIndex& I, int p);

/// Simultaneous substitution. Binding the head of a formal function (or of a
/// connection coefficient) replaces every derivative atom of it by the matching
/// derivative of the bound expression.
Expr substitute(const Chart& chart, const Expr& e, const std::map<Atom, Expr>& bindings);

/// 1/e for a single term built from nonvanishing formal functions.
Expr inverse(const Chart& chart, const Expr& e);
/// e^n for any integer n (negative n goes through inverse()).
Expr power(const Chart& chart, const Expr& e, int n);

/// Highest jet order the expression depends on (formal functions count with
/// their declared order).
int jet_order(const Chart& chart, const Expr& e);

/// True when e depends on the base coordinates only.
bool is_base_only(const Chart& chart, const Expr& e);

/// Jet coordinates e depends on, directly or through formal functions.
std::vector<JetVar> jet_dependencies(const Chart& chart, const Expr& e);

/// Result of the elementary multi-index operations.
struct MultiIndexArith {
    MultiIndex sum;
    std::optional<MultiIndex> checked_difference;
    int length;
    Integer factorial;
    Integer weight;
};

/// Combined multi-index arithmetic on a and (for sum/difference) b.
MultiIndexArith mi_arith(const MultiIndex& a, const MultiIndex& b);

}  // namespace lepage
