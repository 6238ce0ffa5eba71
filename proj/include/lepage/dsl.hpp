#pragma once

#include <map>
#include <optional>
#include <string>

#include "lepage/connection.hpp"
#include "lepage/lepage.hpp"

namespace lepage {

/// Everything a DSL file declares. All values live on `chart`.
struct ProblemSpec {
    Chart chart{1, 1};
    std::map<std::string, LagrangianSpec> lagrangians;
    std::map<std::string, Form> forms;
    std::optional<Connection> connection;

    const LagrangianSpec& lagrangian(const std::string& name) const;
    const Form& form(const std::string& name) const;
    /// The declared connection; DomainError when the file has none.
    const Connection& gamma() const;
};

/// Parses a whole problem file. `order_cap` overrides the chart's jet-order cap.
ProblemSpec parse_problem(const std::string& text, std::optional<int> order_cap = std::nullopt);

/// Parses one value (expression or form) against an existing chart; names of
/// forms in `spec` may be referenced.
Form parse_value(const ProblemSpec& spec, const std::string& text);
Form parse_form(const Chart& chart, const std::string& text);
/// As parse_form, but the value must be a function.
Expr parse_expr(const Chart& chart, const std::string& text);

}  // namespace lepage
