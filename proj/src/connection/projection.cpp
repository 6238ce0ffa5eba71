#include "lepage/connection.hpp"
#include "lepage/errors.hpp"

namespace lepage {

namespace {

std::string entries(const MultiIndex& I) {
    std::string s;
    for (int k = 0; k < I.size(); ++k) {
        if (k) s += ",";
        s += std::to_string(I[k]);
    }
    return s;
}

void accumulate(HolonomicVector& v, const HolonomicCoord& e, const Expr& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = v.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) v.erase(it);
    }
}

HolonomicCoord jet(int alpha, const MultiIndex& J) { return {false, alpha, J}; }

}  // namespace

std::string NonholonomicCoord::str() const {
    switch (kind) {
        case Kind::Base: return "x[" + std::to_string(index + 1) + "]";
        case Kind::Lower: return "u[" + std::to_string(index + 1) + "; " + entries(I) + " | .]";
        case Kind::Upper:
            return "u[" + std::to_string(index + 1) + "; " + entries(I) + " | " +
                   std::to_string(j + 1) + "]";
    }
    return "";
}

std::string HolonomicCoord::str() const {
    if (base) return "x[" + std::to_string(index + 1) + "]";
    return "u[" + std::to_string(index + 1) + "; " + entries(J) + "]";
}

ProjectionTable projection_p_nabla(const Chart& chart, const Connection& c, int k) {
    if (k < 2) throw DomainError("the projection needs k >= 2");
    if (c.m() != chart.m()) throw ChartMismatchError("connection and chart have different m");
    if (k > chart.order_cap()) throw OrderCapError("k exceeds the jet-order cap");
    int m = chart.m(), n = chart.n();
    GammaProlongation G = gamma_prolong(chart, c, k - 1);
    ProjectionTable out;
    out.k = k;

    // sum_{K} (I+K)!/(I! K!) Gamma^j_K d_{I+K} over lo <= |K| <= k - |I|
    auto spread = [&](HolonomicVector& v, int alpha, const MultiIndex& I, int j, int lo,
                      const Rational& sign) {
        for (int len = lo; len <= k - I.length(); ++len)
            for (const auto& K : multi_indices_of_length(m, len)) {
                const Expr& g = G.at(j, K);
                if (g.is_zero()) continue;
                accumulate(v, jet(alpha, I + K), g * Rational(multi_binomial(I + K, K) * sign));
            }
    };

    for (int i = 0; i < m; ++i) {
        NonholonomicCoord e{NonholonomicCoord::Kind::Base, i, chart.zero_index(), -1};
        out.action[e][{true, i, chart.zero_index()}] = Expr(1);
    }
    for (int alpha = 0; alpha < n; ++alpha) {
        for (const auto& I : multi_indices_up_to(m, k - 1)) {
            for (int j = 0; j < m; ++j) {
                NonholonomicCoord e{NonholonomicCoord::Kind::Upper, alpha, I, j};
                HolonomicVector v;
                if (I.length() == k - 1) {
                    accumulate(v, jet(alpha, I.plus_unit(j)),
                               Expr(make_rational(I[j] + 1, k)));
                } else {
                    spread(v, alpha, I, j, 1, Rational(1));
                }
                out.action[e] = v;
            }
            NonholonomicCoord e{NonholonomicCoord::Kind::Lower, alpha, I, -1};
            HolonomicVector v;
            accumulate(v, jet(alpha, I), Expr(Rational(1 - I.length())));
            for (int j = 0; j < m; ++j) {
                auto lower = I.minus_unit(j);
                if (!lower) continue;
                spread(v, alpha, *lower, j, 2, Rational(-1));
            }
            out.action[e] = v;
        }
    }
    return out;
}

NonholonomicVector tangent_inclusion(const Chart& chart, int k, const HolonomicCoord& e) {
    NonholonomicVector out;
    if (e.base) {
        out[{NonholonomicCoord::Kind::Base, e.index, chart.zero_index(), -1}] = Expr(1);
        return out;
    }
    if (e.J.length() > k) throw DomainError("coordinate above the jet order");
    if (e.J.length() <= k - 1) out[{NonholonomicCoord::Kind::Lower, e.index, e.J, -1}] = Expr(1);
    for (int j = 0; j < chart.m(); ++j) {
        auto lower = e.J.minus_unit(j);
        if (!lower) continue;
        out[{NonholonomicCoord::Kind::Upper, e.index, *lower, j}] += Expr(1);
    }
    return out;
}

HolonomicVector apply_projection(const ProjectionTable& p, const NonholonomicVector& v) {
    HolonomicVector out;
    for (const auto& [e, c] : v) {
        auto it = p.action.find(e);
        if (it == p.action.end()) throw DomainError("no projection image for " + e.str());
        for (const auto& [h, hc] : it->second) accumulate(out, h, hc * c);
    }
    return out;
}

ProjectionCheck check_projection(const Chart& chart, const Connection& c, int k) {
    ProjectionCheck out;
    ProjectionTable p = projection_p_nabla(chart, c, k);
    int m = chart.m(), n = chart.n();

    std::vector<HolonomicCoord> basis;
    for (int i = 0; i < m; ++i) basis.push_back({true, i, chart.zero_index()});
    for (int alpha = 0; alpha < n; ++alpha)
        for (const auto& J : multi_indices_up_to(m, k)) basis.push_back(jet(alpha, J));
    for (const auto& e : basis) {
        HolonomicVector image = apply_projection(p, tangent_inclusion(chart, k, e));
        HolonomicVector expected{{e, Expr(1)}};
        if (image != expected) {
            out.composition_identity = false;
            out.failures.push_back("p(Ti(d/d" + e.str() + ")) != d/d" + e.str());
        }
    }

    if (k == 2) {
        // semiholonomic directions at a holonomic point: d_{ij} for ordered pairs,
        // d_{i.} + d_{.i}, and d_{..}; the symmetrization u_(ij) = (u_ij + u_ji)/2
        // differentiates to d_{ij} -> d u_(ij)/d u_ij d_(ij)
        for (int alpha = 0; alpha < n; ++alpha) {
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) {
                    NonholonomicVector v{{{NonholonomicCoord::Kind::Upper, alpha, chart.unit(i), j}, Expr(1)}};
                    Rational du = 0;
                    for (int a = 0; a < 2; ++a) {
                        int s = a ? j : i, t = a ? i : j;
                        if (s == i && t == j) du += Rational(1, 2);
                    }
                    HolonomicVector expected{{jet(alpha, chart.unit(i) + chart.unit(j)), Expr(du)}};
                    if (apply_projection(p, v) != expected) {
                        out.semiholonomic_symmetrization = false;
                        out.failures.push_back("symmetrization fails on d/d" + v.begin()->first.str());
                    }
                }
            for (int i = 0; i < m; ++i) {
                NonholonomicVector v{
                    {{NonholonomicCoord::Kind::Upper, alpha, chart.zero_index(), i}, Expr(1)},
                    {{NonholonomicCoord::Kind::Lower, alpha, chart.unit(i), -1}, Expr(1)}};
                HolonomicVector expected{{jet(alpha, chart.unit(i)), Expr(1)}};
                if (apply_projection(p, v) != expected) {
                    out.semiholonomic_symmetrization = false;
                    out.failures.push_back("first order semiholonomic direction " + std::to_string(i + 1));
                }
            }
            NonholonomicVector v{{{NonholonomicCoord::Kind::Lower, alpha, chart.zero_index(), -1}, Expr(1)}};
            HolonomicVector expected{{jet(alpha, chart.zero_index()), Expr(1)}};
            if (apply_projection(p, v) != expected) {
                out.semiholonomic_symmetrization = false;
                out.failures.push_back("zeroth order direction");
            }
        }
    }
    return out;
}

}  // namespace lepage
