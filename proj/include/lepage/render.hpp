#pragma once

#include <string>

#include "json.hpp"
#include "lepage/form.hpp"

namespace lepage {

enum class Format { Text, Latex, Structured };

Format format_from_name(const std::string& name);

/// Version tag carried by every structured document.
inline constexpr const char* kSchema = "lepage-kit/1";

std::string render_rational(const Rational& r, Format f = Format::Text);
std::string render_expr(const Chart& chart, const Expr& e, Format f = Format::Text);
std::string render_form(const Chart& chart, const Form& w, Format f = Format::Text);

nlohmann::json expr_to_json(const Chart& chart, const Expr& e);
nlohmann::json form_to_json(const Chart& chart, const Form& w);
nlohmann::json rational_to_json(const Rational& r);
Expr expr_from_json(const Chart& chart, const nlohmann::json& j);
Form form_from_json(const Chart& chart, const nlohmann::json& j);
Rational rational_from_json(const nlohmann::json& j);

/// Rewrites LaTeX produced by render_* into the text syntax.
std::string latex_to_text(const std::string& latex);

/// Parses any of the three renderings back (text, LaTeX or a structured document).
Form parse_rendered(const Chart& chart, const std::string& s, Format f);

}  // namespace lepage
