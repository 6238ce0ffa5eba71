#pragma once

#include <random>

#include "lepage/bicomplex.hpp"

namespace testing_support {

using namespace lepage;

/// Small random polynomials and forms for property tests (deterministic seeds).
class RandomForms {
public:
    RandomForms(const Chart& chart, unsigned seed, int order)
        : chart_(chart), rng_(seed), order_(order) {}

    MultiIndex index(int max_len) {
        auto all = multi_indices_up_to(chart_.m(), max_len);
        return all[pick(all.size())];
    }

    Expr atom() {
        if (pick(4) == 0) return chart_.x(static_cast<int>(pick(chart_.m())));
        return chart_.u(static_cast<int>(pick(chart_.n())), index(order_));
    }

    Expr poly(int terms = 3, int degree = 2) {
        Expr out;
        for (int t = 0; t < terms; ++t) {
            Expr mono(static_cast<int>(pick(5)) - 2);
            int d = static_cast<int>(pick(degree + 1));
            for (int k = 0; k < d; ++k) mono = mono * atom();
            out += mono;
        }
        return out;
    }

    /// A random form of bidegree (p, q) with theta orders <= order.
    Form form(int p, int q, int terms = 3) {
        Form out = Form::zero(p + q);
        for (int t = 0; t < terms; ++t) {
            Word w;
            for (int k = 0; k < p; ++k)
                w.push_back(BasisOneForm::theta(static_cast<int>(pick(chart_.n())), index(order_)));
            std::vector<int> dirs(chart_.m());
            for (int i = 0; i < chart_.m(); ++i) dirs[i] = i;
            std::shuffle(dirs.begin(), dirs.end(), rng_);
            for (int k = 0; k < q; ++k) w.push_back(BasisOneForm::dx(dirs[k]));
            Expr c = poly();
            if (c.is_zero()) c = Expr(1);
            out += Form(w, c);
        }
        return out;
    }

private:
    std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

    Chart chart_;
    std::mt19937 rng_;
    int order_;
};

}  // namespace testing_support
