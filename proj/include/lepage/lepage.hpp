#pragma once

#include <string>
#include <vector>

#include "lepage/varops.hpp"

namespace lepage {

/// lambda = L omega_0 of declared order k on a chart.
struct LagrangianSpec {
    Chart chart;
    Expr L;
    int k = 1;

    /// Throws DomainError unless the jet order of L is at most k.
    void validate() const;
    Form lambda() const;
};

/// Lepage properties of a candidate form, recomputed from scratch.
struct LepageReport {
    Form theta;
    bool one_contact_is_source = false;
    bool horizontal_part_equals_lambda = false;
    Form d_theta;
};

LepageReport lepage_report(const LagrangianSpec& spec, const Form& theta);

/// The principal Lepage equivalent by its closed-form double sum.
Form principal_lepage(const LagrangianSpec& spec);
/// lambda - P d_v lambda.
Form principal_lepage_via_homotopy(const LagrangianSpec& spec,
                                   HomotopyVariant variant = HomotopyVariant::Tilde);
/// L omega_0 + (dL/du^a_j) theta^a ^ omega_j (first order).
Form poincare_cartan(const LagrangianSpec& spec);
/// L^{1-m} wedge_j (L dx^j + (dL/du^a_j) theta^a); first order, L nonvanishing.
Form caratheodory(const LagrangianSpec& spec);
/// The second order analogue with the 1/#(ij) weights.
Form caratheodory2(const LagrangianSpec& spec);
/// sum_p 1/(p!)^2 d^pL/du^{a1}_{j1}..du^{ap}_{jp} theta^{a1}^..^theta^{ap}^omega_{j1..jp}.
Form fundamental_first_order(const LagrangianSpec& spec);

/// L = u^a int_0^1 eps_a(x, t u) dt for a source form polynomial in the jets.
LagrangianSpec vainberg_tonti(const Chart& chart, const Form& source);

/// theta + sum_{p=1}^{m-1} (-P d_v)^p theta^{(1)}; rows[p-1] picks the homotopy
/// operator used on contact row p + 1 (P-tilde where unspecified).
Form extend(const Chart& chart, const Form& theta,
            const std::vector<HomotopyVariant>& rows = {});

enum class Construction {
    Principal,
    PoincareCartan,
    Caratheodory,
    Caratheodory2,
    Fundamental,
    Extended,
};

Construction construction_from_name(const std::string& name);
std::string construction_name(Construction c);
Form construct(const LagrangianSpec& spec, Construction c);

struct ClosureReport {
    bool is_null = false;
    Form d_theta_f;
    Form el_form;
    Form theta_f;
};

/// Builds the extended form (by default from the principal equivalent) and
/// reports d of it next to the Euler-Lagrange form.
ClosureReport closure_check(const LagrangianSpec& spec,
                            Construction base = Construction::Principal);

struct DifferenceDecomposition {
    Form psi;
    Form remainder;
    /// The remainder has no 0- or 1-contact component.
    bool at_least_two_contact = false;
};

/// theta = t1 - t2 = d psi + remainder with psi = P(theta^{(1)}).
DifferenceDecomposition lepage_difference_decompose(const Chart& chart, const Form& t1,
                                                    const Form& t2);

}  // namespace lepage
