#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lepage/varops.hpp"

namespace lepage {

/// A symmetric linear connection on the base: Gamma^h_{ij} = Gamma^h_{ji}.
class Connection {
public:
    enum class Kind { Flat, Formal, Concrete };

    /// All coefficients zero.
    static Connection flat(int m);
    /// Coefficients are the symbolic atoms Gamma^h_{ij} (functions of x).
    static Connection formal(int m);
    /// Starts from zero; fill in with set().
    static Connection concrete(int m);

    int m() const noexcept { return m_; }
    Kind kind() const noexcept { return kind_; }

    /// Gamma^h_{ij} (0-based; symmetric in i, j).
    Expr coefficient(int h, int i, int j) const;
    /// Sets Gamma^h_{ij} = Gamma^h_{ji}; the value must depend on x only.
    void set(const Chart& chart, int h, int i, int j, const Expr& value);

    friend bool operator==(const Connection&, const Connection&) = default;

private:
    Connection(int m, Kind kind) : m_(m), kind_(kind) {}

    int m_ = 1;
    Kind kind_ = Kind::Flat;
    std::map<std::tuple<int, int, int>, Expr> table_;  // (h, min(i,j), max(i,j))
};

/// Gamma^h_K for 1 <= |K| <= max_level + 1 (|K| = 1 is the Kronecker delta).
class GammaProlongation {
public:
    int max_level() const noexcept { return max_level_; }
    int m() const noexcept { return m_; }
    /// Gamma^h_K; zero above the computed level is an error.
    const Expr& at(int h, const MultiIndex& K) const;
    const std::map<std::pair<int, MultiIndex>, Expr>& table() const noexcept { return table_; }

private:
    friend GammaProlongation gamma_prolong(const Chart&, const Connection&, int);
    int m_ = 1;
    int max_level_ = 0;
    std::map<std::pair<int, MultiIndex>, Expr> table_;
};

/// Recursive symmetrized prolongation up to |K| = l + 1.
GammaProlongation gamma_prolong(const Chart& chart, const Connection& c, int l);

/// Sorted multiset of base directions d/dx^i (0-based).
using Slots = std::vector<int>;

/// Symmetric-multivector-valued forms: sum of X_1 . ... . X_r (x) omega.
class VForm {
public:
    VForm() = default;
    VForm(const Form& f);  // NOLINT: r = 0
    VForm(Slots slots, const Form& f);

    const std::map<Slots, Form>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    /// Form degree (0 for the zero value).
    int degree() const noexcept { return degree_; }
    /// Slot count of a homogeneous value; DomainError when mixed.
    int slot_count() const;
    /// The r = 0 part.
    Form form_part() const;

    void add(const Slots& slots, const Form& f);

    VForm& operator+=(const VForm& o);
    VForm& operator-=(const VForm& o);
    friend VForm operator+(VForm a, const VForm& b) { return a += b; }
    friend VForm operator-(VForm a, const VForm& b) { return a -= b; }
    friend VForm operator*(const VForm& a, const Expr& c);
    friend VForm operator*(const VForm& a, const Rational& c) { return a * Expr(c); }

    friend bool operator==(const VForm& a, const VForm& b) { return a.terms_ == b.terms_; }

private:
    std::map<Slots, Form> terms_;
    int degree_ = 0;
};

/// S_nabla on J^k (k = nullopt: no upper bound, the J^infinity version).
VForm s_nabla(const Chart& chart, const Connection& c, const VForm& v,
              std::optional<int> k = std::nullopt);
/// S_nabla^r.
VForm s_nabla_power(const Chart& chart, const Connection& c, const VForm& v, int r,
                    std::optional<int> k = std::nullopt);

/// d_{h nabla}(X (x) w) = nabla X ^ w + X (x) d_h w, nabla d_h = Gamma^k_{hj} dx^j (x) d_k.
VForm d_h_nabla(const Chart& chart, const Connection& c, const VForm& v);

/// Contracts each slot occurrence d_i with the form part through i_{d/dx^i}.
VForm contract_C(const Chart& chart, const VForm& v);

/// Coefficient c_r for a row (p, q) of the conjectured operator.
using CoefficientRule = std::function<Rational(int p, int q, int m, int r)>;

/// (-1)^r (m-q)! / (p (m-q+r+1) r!), the printed sequence.
Rational printed_coefficient(int p, int q, int m, int r);
/// (-1)^r (m-q)! / (p (m-q+r+1)! (r+1)!), the sequence the worked example uses at p = q = 1.
Rational appendix_coefficient(int p, int q, int m, int r);

CoefficientRule coefficient_rule(const std::string& name);

/// T_r = (C o d_{h nabla})^r C(S_nabla^{r+1} omega) for r = 0, 1, ... until S^{r+1} omega = 0
/// (at most max_r + 1 entries when max_r is given).
std::vector<Form> conjecture_terms(const Chart& chart, const Connection& c, const Form& omega,
                                   std::optional<int> max_r = std::nullopt);

/// sum_r c_r T_r for omega of bidegree (p, q).
Form p_nabla_conjecture(const Chart& chart, const Connection& c, const Form& omega,
                        const CoefficientRule& rule = printed_coefficient,
                        std::optional<std::pair<int, int>> bideg = std::nullopt);

/// d_h P omega + P d_h omega - omega (the second term only when q < m).
Form homotopy_defect(const Chart& chart, const Connection& c, const Form& omega,
                     const CoefficientRule& rule = printed_coefficient,
                     std::optional<std::pair<int, int>> bideg = std::nullopt);

enum class FitStatus { Unique, NonUnique, Inconsistent };

struct FitResult {
    FitStatus status = FitStatus::Inconsistent;
    int p = 1, q = 1, m = 1, max_r = 0;
    /// Row q coefficients c_0..c_R (nullopt where not determined).
    std::vector<std::optional<Rational>> row_q;
    /// Row q + 1 coefficients (empty when q = m).
    std::vector<std::optional<Rational>> row_q1;
    /// Unknowns that no generator exercises, as (row offset 0/1, r).
    std::vector<std::pair<int, int>> unexercised;
    std::size_t equations = 0;
    /// Held-out generators give zero defect with the fitted values.
    std::optional<bool> cross_validated;
};

/// Solves exactly for the coefficients of rows q and q + 1 that make the
/// homotopy defect vanish on every generator (all of bidegree (p, q)).
FitResult fit_coefficients(const Chart& chart, const Connection& c, int p, int q, int max_r,
                           const std::vector<Form>& generators,
                           const std::vector<Form>& held_out = {});

std::string fit_status_name(FitStatus s);

/// Coordinates on J^1 pi_{k-1} (nonholonomic) and on J^k pi.
struct NonholonomicCoord {
    enum class Kind { Base, Lower, Upper };
    Kind kind = Kind::Base;
    int index = 0;  // i for Base, alpha otherwise
    MultiIndex I;   // the J^{k-1} multi-index
    int j = -1;     // derivative direction for Upper (u_{Ij})

    std::string str() const;
    friend auto operator<=>(const NonholonomicCoord&, const NonholonomicCoord&) = default;
};

struct HolonomicCoord {
    bool base = false;
    int index = 0;  // i or alpha
    MultiIndex J;

    std::string str() const;
    friend auto operator<=>(const HolonomicCoord&, const HolonomicCoord&) = default;
};

using HolonomicVector = std::map<HolonomicCoord, Expr>;
using NonholonomicVector = std::map<NonholonomicCoord, Expr>;

struct ProjectionTable {
    int k = 2;
    std::map<NonholonomicCoord, HolonomicVector> action;
};

/// The infinitesimal projection p_nabla: T J^1 pi_{k-1} -> T J^k pi on the coordinate basis.
ProjectionTable projection_p_nabla(const Chart& chart, const Connection& c, int k);
/// T i_{1,k-1} on the holonomic coordinate basis of J^k pi.
NonholonomicVector tangent_inclusion(const Chart& chart, int k, const HolonomicCoord& e);
HolonomicVector apply_projection(const ProjectionTable& p, const NonholonomicVector& v);

struct ProjectionCheck {
    bool composition_identity = true;
    bool semiholonomic_symmetrization = true;
    std::vector<std::string> failures;
};

/// p o Ti = id on every holonomic basis vector, and (k = 2) the restriction to
/// semiholonomic directions equals the symmetrization.
ProjectionCheck check_projection(const Chart& chart, const Connection& c, int k);

struct AppendixLine {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct AppendixReport {
    int m = 2;
    bool flat = false;
    std::vector<AppendixLine> lines;
    bool all_pass() const;
};

/// Recomputes each displayed step of the worked P_nabla example for
/// omega = f^i_{a j} dx^j ^ theta^a_i and checks the closing identity.
AppendixReport verify_appendix_a(int m, bool flat = false, int n = 1);

}  // namespace lepage
