#include "lepage/chart.hpp"

#include <algorithm>

#include "lepage/errors.hpp"

namespace lepage {

Chart::Chart(int m, int n, int order_cap) : m_(m), n_(n), order_cap_(order_cap) {
    if (m < 1 || m > MultiIndex::kMaxDim)
        throw DimensionError("base dimension m must lie in [1, " +
                             std::to_string(MultiIndex::kMaxDim) + "]");
    if (n < 1) throw DimensionError("fibre dimension n must be >= 1");
    if (order_cap < 1) throw DomainError("order cap must be >= 1");
}

Chart Chart::with_order_cap(int cap) const {
    Chart out = *this;
    if (cap < 1) throw DomainError("order cap must be >= 1");
    out.order_cap_ = cap;
    return out;
}

Atom Chart::declare(const FormalFunctionDecl& decl) {
    if (find_function(decl.name)) throw DomainError("formal function '" + decl.name + "' redeclared");
    if (decl.max_order < 0) throw DomainError("formal function order must be >= 0");
    for (int i : decl.base_deps) check_base_index(i);
    for (const auto& v : decl.jet_deps) {
        check_alpha(v.alpha);
        check_multi_index(v.index);
    }
    functions_.push_back(decl);
    if (decl.dependence == Dependence::Explicit) {
        auto& d = functions_.back();
        std::sort(d.base_deps.begin(), d.base_deps.end());
        std::sort(d.jet_deps.begin(), d.jet_deps.end());
        int order = 0;
        for (const auto& v : d.jet_deps) order = std::max(order, v.index.length());
        d.max_order = order;
    }
    return Atom::formal(static_cast<int>(functions_.size()) - 1, m_);
}

Atom Chart::declare(const std::string& name, int max_order, bool nonvanishing) {
    FormalFunctionDecl decl;
    decl.name = name;
    decl.max_order = max_order;
    decl.nonvanishing = nonvanishing;
    return declare(decl);
}

Atom Chart::declare_base_function(const std::string& name) {
    FormalFunctionDecl decl;
    decl.name = name;
    decl.dependence = Dependence::Base;
    return declare(decl);
}

const FormalFunctionDecl& Chart::function(int id) const {
    if (id < 0 || id >= static_cast<int>(functions_.size()))
        throw DomainError("unknown formal function id " + std::to_string(id));
    return functions_[id];
}

std::optional<int> Chart::find_function(const std::string& name) const {
    for (std::size_t k = 0; k < functions_.size(); ++k)
        if (functions_[k].name == name) return static_cast<int>(k);
    return std::nullopt;
}

Atom Chart::function_atom(const std::string& name) const {
    auto id = find_function(name);
    if (!id) throw DomainError("unknown formal function '" + name + "'");
    return Atom::formal(*id, m_);
}

bool Chart::depends_on_base(int id, int i) const {
    const auto& f = function(id);
    if (f.dependence != Dependence::Explicit) return true;
    return std::binary_search(f.base_deps.begin(), f.base_deps.end(), i);
}

bool Chart::depends_on_jet(int id, const JetVar& v) const {
    const auto& f = function(id);
    switch (f.dependence) {
        case Dependence::Jet: return v.index.length() <= f.max_order;
        case Dependence::Base: return false;
        case Dependence::Explicit:
            return std::binary_search(f.jet_deps.begin(), f.jet_deps.end(), v);
    }
    return false;
}

std::vector<JetVar> Chart::jet_dependencies(int id) const {
    const auto& f = function(id);
    switch (f.dependence) {
        case Dependence::Base: return {};
        case Dependence::Explicit: return f.jet_deps;
        case Dependence::Jet: break;
    }
    std::vector<JetVar> out;
    for (int alpha = 0; alpha < n_; ++alpha)
        for (const auto& I : multi_indices_up_to(m_, f.max_order)) out.push_back(JetVar{alpha, I});
    std::sort(out.begin(), out.end());
    return out;
}

bool Chart::is_invertible(const Atom& a) const {
    return a.is_plain_formal() && function(a.index()).nonvanishing;
}

Expr Chart::x(int i) const {
    check_base_index(i);
    return Expr::x(i);
}

Expr Chart::u(int alpha, const MultiIndex& I) const {
    check_alpha(alpha);
    check_multi_index(I);
    return Expr::u(alpha, I);
}

void Chart::check_base_index(int i) const {
    if (i < 0 || i >= m_)
        throw DimensionError("base index " + std::to_string(i + 1) + " outside 1.." +
                             std::to_string(m_));
}

void Chart::check_alpha(int alpha) const {
    if (alpha < 0 || alpha >= n_)
        throw DimensionError("dependent index " + std::to_string(alpha + 1) + " outside 1.." +
                             std::to_string(n_));
}

void Chart::check_multi_index(const MultiIndex& I) const {
    if (I.size() != m_)
        throw DimensionError("multi-index " + I.str() + " has length " + std::to_string(I.size()) +
                             ", chart dimension is " + std::to_string(m_));
}

void Chart::check_order(const MultiIndex& I) const {
    if (I.length() > order_cap_)
        throw OrderCapError("jet order " + std::to_string(I.length()) + " exceeds the cap " +
                            std::to_string(order_cap_));
}

bool operator==(const Chart& a, const Chart& b) {
    if (a.m_ != b.m_ || a.n_ != b.n_ || a.functions_.size() != b.functions_.size()) return false;
    for (std::size_t k = 0; k < a.functions_.size(); ++k)
        if (a.functions_[k].name != b.functions_[k].name) return false;
    return true;
}

}  // namespace lepage
