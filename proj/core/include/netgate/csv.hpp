#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace netgate {

/// Shortest round-trip representation ("%.17g").
std::string format_full(double v);
/// Six significant digits, used for aligned text tables.
std::string format_sig6(double v);

/// Reads per-unit values from CSV. Accepted layouts, with an optional
/// non-numeric header line:
///   - one value per line, in dense node order;
///   - "label,value" pairs, matched against `labels` (every label required).
/// Throws ParseError with a line number on malformed input.
Eigen::VectorXd read_unit_values(std::istream& in, std::span<const std::string> labels);
Eigen::VectorXd read_unit_values_file(const std::string& path, std::span<const std::string> labels);

/// Splits on a delimiter and trims ASCII whitespace from each field.
std::vector<std::string> split_fields(const std::string& line, char delim);
std::string trim(std::string_view s);

}  // namespace netgate
