#pragma once

#include <string>

#include "lepage/bicomplex.hpp"

namespace testing_support {

using namespace lepage;

/// Every (p, q) word with theta orders <= order (single field alpha = 0 unless
/// n > 1), each with its own formal coefficient of jet order `order`.
inline Form generic_form(Chart& chart, int p, int q, int order, const std::string& tag) {
    int m = chart.m();
    std::vector<std::vector<int>> dirs{{}};
    for (int k = 0; k < q; ++k) {
        std::vector<std::vector<int>> next;
        for (const auto& d : dirs)
            for (int j = d.empty() ? 0 : d.back() + 1; j < m; ++j) {
                auto e = d;
                e.push_back(j);
                next.push_back(e);
            }
        dirs = next;
    }
    std::vector<BasisOneForm> thetas;
    for (int a = 0; a < chart.n(); ++a)
        for (const auto& I : multi_indices_up_to(m, order)) thetas.push_back(BasisOneForm::theta(a, I));
    std::vector<std::vector<std::size_t>> picks{{}};
    for (int k = 0; k < p; ++k) {
        std::vector<std::vector<std::size_t>> next;
        for (const auto& t : picks)
            for (std::size_t s = t.empty() ? 0 : t.back() + 1; s < thetas.size(); ++s) {
                auto e = t;
                e.push_back(s);
                next.push_back(e);
            }
        picks = next;
    }
    Form out = Form::zero(p + q);
    int count = 0;
    for (const auto& d : dirs)
        for (const auto& t : picks) {
            Word w;
            for (auto s : t) w.push_back(thetas[s]);
            for (int j : d) w.push_back(BasisOneForm::dx(j));
            Atom f = chart.declare(tag + std::to_string(count++), order);
            out += Form(w, Expr(f));
        }
    return out;
}

}  // namespace testing_support
