#pragma once

#include "skt/metric.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace skt {

struct ParseError : std::runtime_error {
    ParseError(int line, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg), line(line) {}
    int line;
};

struct ManifoldInput {
    std::string name;
    Coframe coframe;
    HermitianMetric metric;
    std::optional<Form> volume;
};

/// Form expression, e.g. "1*(13|2) + -1i*(|12)" or "(23|2)+i(13|1)".
/// Terms after the first start with a separating '+' or '-'; the remainder
/// of the coefficient (which may itself carry a sign or an 'i' suffix)
/// binds to the following monomial.
Form parse_form_expr(const std::string& text, int n);
std::string print_form_expr(const Form& f);

/// Vector form expression, e.g. "1*(|1)Z1 + -1i*(|23)Z2".
VectorForm parse_vector_expr(const std::string& text, int n);
std::string print_vector_expr(const VectorForm& f);

/// Parses the line-oriented manifold format (see README for the grammar).
/// Structure equations come either as a `complex { d f<i> = ... }` block or
/// as a `real { basis ... [a,b] = ... J a = b }` block that is converted to
/// complex structure equations through the declared J.
ManifoldInput parse_manifold(const std::string& text, const std::string& name = "input");

/// Canonical reprint; parse(print(parse(x))) equals parse(x) exactly.
std::string print_manifold(const ManifoldInput& input);

/// Embedded example registry: torus3, iwasawa, s3xs3-calabi-eckmann.
const std::map<std::string, std::string>& builtin_sources();

/// Loads a builtin by name, "-" from stdin text, or a file path.
ManifoldInput load_manifold(const std::string& spec, const std::string& stdin_text = "");

}  // namespace skt
