#include <map>

#include "lepage/connection.hpp"
#include "lepage/errors.hpp"

namespace lepage {

namespace {

using Key = std::pair<Word, Monomial>;

struct System {
    std::map<Key, std::size_t> rows;
    std::vector<std::vector<Rational>> a;  // last column is the right-hand side
    std::size_t cols = 0;

    std::vector<Rational>& row(const Key& k) {
        auto [it, inserted] = rows.try_emplace(k, a.size());
        if (inserted) a.emplace_back(cols + 1, Rational(0));
        return a[it->second];
    }

    void add_column(std::size_t col, const Form& f) {
        for (const auto& [w, c] : f.terms())
            for (const auto& [mono, v] : c.terms()) row({w, mono})[col] += v;
    }

    void add_rhs(const Form& f) {
        for (const auto& [w, c] : f.terms())
            for (const auto& [mono, v] : c.terms()) row({w, mono})[cols] += v;
    }
};

struct Solution {
    bool consistent = true;
    std::vector<int> pivot_of_col;  // row index of the pivot, -1 for free columns
    std::vector<std::vector<Rational>> reduced;
};

Solution reduce(std::vector<std::vector<Rational>> a, std::size_t cols) {
    Solution s;
    s.pivot_of_col.assign(cols, -1);
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
        std::size_t piv = r;
        while (piv < a.size() && a[piv][c] == 0) ++piv;
        if (piv == a.size()) continue;
        std::swap(a[piv], a[r]);
        Rational inv = 1 / a[r][c];
        for (auto& v : a[r]) v *= inv;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == r || a[i][c] == 0) continue;
            Rational f = a[i][c];
            for (std::size_t j = c; j <= cols; ++j) a[i][j] -= f * a[r][j];
        }
        s.pivot_of_col[c] = static_cast<int>(r);
        ++r;
    }
    for (std::size_t i = r; i < a.size(); ++i)
        if (a[i][cols] != 0) s.consistent = false;
    s.reduced = std::move(a);
    return s;
}

}  // namespace

std::string fit_status_name(FitStatus s) {
    switch (s) {
        case FitStatus::Unique: return "unique";
        case FitStatus::NonUnique: return "non-unique";
        case FitStatus::Inconsistent: return "inconsistent";
    }
    return "inconsistent";
}

FitResult fit_coefficients(const Chart& chart, const Connection& c, int p, int q, int max_r,
                           const std::vector<Form>& generators,
                           const std::vector<Form>& held_out) {
    int m = chart.m();
    if (p < 1 || q < 1 || q > m) throw DomainError("fit needs p >= 1 and 1 <= q <= m");
    if (max_r < 0) throw DomainError("fit needs max_r >= 0");
    if (generators.empty()) throw DomainError("fit needs at least one generator");
    for (const auto& g : generators)
        if (!has_bidegree(g, p, q)) throw DomainError("generator is not of the stated bidegree");

    FitResult out;
    out.p = p;
    out.q = q;
    out.m = m;
    out.max_r = max_r;
    std::size_t width = static_cast<std::size_t>(max_r) + 1;
    bool two_rows = q < m;

    System sys;
    sys.cols = two_rows ? 2 * width : width;
    std::vector<bool> exercised(sys.cols, false);
    for (const auto& g : generators) {
        auto ta = conjecture_terms(chart, c, g, max_r);
        for (std::size_t r = 0; r < ta.size(); ++r) {
            Form col = d_h(chart, ta[r]);
            if (!col.is_zero()) exercised[r] = true;
            sys.add_column(r, col);
        }
        if (two_rows) {
            auto tb = conjecture_terms(chart, c, d_h(chart, g), max_r);
            for (std::size_t r = 0; r < tb.size(); ++r) {
                if (!tb[r].is_zero()) exercised[width + r] = true;
                sys.add_column(width + r, tb[r]);
            }
        }
        sys.add_rhs(g);
    }
    out.equations = sys.a.size();

    Solution sol = reduce(sys.a, sys.cols);
    std::size_t rank = 0;
    std::size_t live = 0;
    for (std::size_t col = 0; col < sys.cols; ++col) {
        if (sol.pivot_of_col[col] >= 0) ++rank;
        if (exercised[col]) ++live;
        else out.unexercised.emplace_back(col < width ? 0 : 1, static_cast<int>(col % width));
    }

    std::vector<std::optional<Rational>> values(sys.cols);
    if (!sol.consistent) {
        out.status = FitStatus::Inconsistent;
    } else {
        out.status = rank == live ? FitStatus::Unique : FitStatus::NonUnique;
        // a pivot column is determined when no free live column enters its row
        for (std::size_t col = 0; col < sys.cols; ++col) {
            int r = sol.pivot_of_col[col];
            if (r < 0) continue;
            bool determined = true;
            for (std::size_t other = 0; other < sys.cols; ++other)
                if (sol.pivot_of_col[other] < 0 && sol.reduced[static_cast<std::size_t>(r)][other] != 0)
                    determined = false;
            if (determined) values[col] = sol.reduced[static_cast<std::size_t>(r)][sys.cols];
        }
    }
    out.row_q.assign(values.begin(), values.begin() + static_cast<long>(width));
    if (two_rows) out.row_q1.assign(values.begin() + static_cast<long>(width), values.end());

    if (out.status == FitStatus::Unique && !held_out.empty()) {
        auto value = [&](std::size_t col) {
            return values[col] ? *values[col] : Rational(0);
        };
        CoefficientRule rule = [&, width](int, int row, int, int r) -> Rational {
            if (r < 0 || static_cast<std::size_t>(r) >= width) return Rational(0);
            std::size_t base = row == q ? 0 : width;
            return value(base + static_cast<std::size_t>(r));
        };
        bool ok = true;
        for (const auto& h : held_out) {
            if (!has_bidegree(h, p, q)) throw DomainError("held-out form is not of the stated bidegree");
            if (!homotopy_defect(chart, c, h, rule, std::make_pair(p, q)).is_zero()) ok = false;
        }
        out.cross_validated = ok;
    }
    return out;
}

}  // namespace lepage
