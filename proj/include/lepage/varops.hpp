#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "lepage/bicomplex.hpp"

namespace lepage {

/// A degree-0 endomorphism of the contact one-forms, theta^a_J -> sum c theta^a_J',
/// preserving a and killing dx. Applied to forms as a derivation (i_S).
class LoweringEndo {
public:
    using Image = std::vector<std::pair<Expr, MultiIndex>>;
    using Action = std::function<Image(const MultiIndex&)>;

    LoweringEndo() = default;
    explicit LoweringEndo(Action action) : action_(std::move(action)) {}

    /// Image of theta_J (the dependent index is carried through unchanged).
    Image operator()(const MultiIndex& J) const;
    /// Image of theta^alpha_J as a one-form.
    Form on_theta(int alpha, const MultiIndex& J) const;

    /// One-form action of `first` followed by `second`.
    friend LoweringEndo compose(const LoweringEndo& first, const LoweringEndo& second);

private:
    Action action_;
};

/// S^i: theta_J -> J(i) theta_{J-1_i}.
LoweringEndo s_i(const Chart& chart, int i);
/// S^eta for a closed one-form eta = eta_i dx^i on the base, on J^k.
LoweringEndo s_eta(const Chart& chart, const std::vector<Expr>& eta, int k);
/// S^{j1} o ... o S^{jr} for J = 1_{j1} + ... + 1_{jr}.
LoweringEndo s_multi(const Chart& chart, const MultiIndex& J);

/// i_S omega.
Form apply(const LoweringEndo& S, const Form& omega);

Form s_tilde(const Chart& chart, const MultiIndex& J, const Form& omega);
Form s_hat(const Chart& chart, const MultiIndex& J, const Form& omega);

enum class HomotopyVariant { Tilde, Hat };

/// The local homotopy operators for d_h on Omega^{p,q}, 1 <= p, 1 <= q <= m.
/// The bidegree is read off omega; pass it explicitly for a zero input.
Form p_tilde(const Chart& chart, const Form& omega,
             std::optional<std::pair<int, int>> bideg = std::nullopt);
Form p_hat(const Chart& chart, const Form& omega,
           std::optional<std::pair<int, int>> bideg = std::nullopt);
Form homotopy(const Chart& chart, const Form& omega, HomotopyVariant variant,
              std::optional<std::pair<int, int>> bideg = std::nullopt);

/// Euler-Lagrange form of L omega_0 for a Lagrangian of order k.
Form euler_lagrange(const Chart& chart, const Expr& L, int k);

/// theta^a ^ sum_I (-1)^|I| d_I(i_{d/du^a_I} omega) for omega in Omega^{1,m}.
Form source_residue(const Chart& chart, const Form& omega);

/// Every term is c theta^a ^ omega_0.
bool is_source_form(const Chart& chart, const Form& omega);

}  // namespace lepage
