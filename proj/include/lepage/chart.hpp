#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lepage/expr.hpp"

namespace lepage {

/// What a formal function may depend on.
enum class Dependence {
    /// All x^i and every u^alpha_I with |I| <= max_order.
    Jet,
    /// Only the base coordinates x^i.
    Base,
    /// An explicit list of base indices and jet coordinates.
    Explicit,
};

struct FormalFunctionDecl {
    std::string name;
    int max_order = 0;
    bool nonvanishing = false;
    Dependence dependence = Dependence::Jet;
    std::vector<int> base_deps;     // Dependence::Explicit only
    std::vector<JetVar> jet_deps;   // Dependence::Explicit only
};

/// One coordinate chart: dim M = m, fibre dimension n, a jet-order cap, and
/// the formal functions that expressions on this chart may mention.
///
/// Every expression and form in a computation refers to one chart. Charts are
/// built once (declarations first) and then only read.
class Chart {
public:
    static constexpr int kDefaultOrderCap = 10;

    Chart(int m, int n, int order_cap = kDefaultOrderCap);

    int m() const noexcept { return m_; }
    int n() const noexcept { return n_; }
    int order_cap() const noexcept { return order_cap_; }
    Chart with_order_cap(int cap) const;

    /// Registers a formal function and returns its atom; names must be unique.
    Atom declare(const FormalFunctionDecl& decl);
    Atom declare(const std::string& name, int max_order, bool nonvanishing = false);
    /// Formal function of the base coordinates only.
    Atom declare_base_function(const std::string& name);

    const std::vector<FormalFunctionDecl>& functions() const noexcept { return functions_; }
    const FormalFunctionDecl& function(int id) const;
    std::optional<int> find_function(const std::string& name) const;
    /// The undifferentiated atom of a declared function.
    Atom function_atom(const std::string& name) const;

    /// Does the formal function `id` depend on x^i / on v?
    bool depends_on_base(int id, int i) const;
    bool depends_on_jet(int id, const JetVar& v) const;
    /// Jet coordinates the formal function depends on, in canonical order.
    std::vector<JetVar> jet_dependencies(int id) const;

    /// Nonvanishing declared plain formal atom: may carry negative powers.
    bool is_invertible(const Atom& a) const;

    MultiIndex zero_index() const { return MultiIndex(m_); }
    MultiIndex unit(int i) const { return MultiIndex::unit(m_, i); }
    Expr x(int i) const;
    Expr u(int alpha, const MultiIndex& I) const;
    Expr u(int alpha) const { return u(alpha, zero_index()); }

    void check_base_index(int i) const;
    void check_alpha(int alpha) const;
    void check_multi_index(const MultiIndex& I) const;
    /// Throws OrderCapError when |I| exceeds the cap.
    void check_order(const MultiIndex& I) const;

    friend bool operator==(const Chart& a, const Chart& b);

private:
    int m_;
    int n_;
    int order_cap_;
    std::vector<FormalFunctionDecl> functions_;
};

}  // namespace lepage
