#pragma once

// Table emission. CSV is the primary interchange; JSON mirrors the same
// fields. Doubles are rounded through "%.{precision}g" before they enter
// either format, so CSV and JSON carry the same values and re-parsing the
// JSON reproduces the CSV numbers exactly.

#include <string>
#include <utility>
#include <vector>

namespace emit {

struct Options {
  std::string format = "csv";  // csv | json
  std::string path;            // empty: stdout; relative paths honor QHE_OUTPUT_DIR
  int precision = 12;          // significant digits
};

struct Value {
  enum class Kind { Real, Integer, Boolean, Text } kind;
  double real = 0.0;
  long long integer = 0;
  bool boolean = false;
  std::string text;

  static Value of(double v) { return {Kind::Real, v, 0, false, {}}; }
  static Value of(int v) { return {Kind::Integer, 0.0, v, false, {}}; }
  static Value of(bool v) { return {Kind::Boolean, 0.0, 0, v, {}}; }
  static Value of(std::string v) { return {Kind::Text, 0.0, 0, false, std::move(v)}; }
};

using Row = std::vector<std::pair<std::string, Value>>;

std::string format_double(double v, int precision);

// A table: all rows share the first row's column order. single_record emits
// one row without the enclosing JSON array (CSV output is identical).
void write_table(const Options& options, const std::vector<Row>& rows,
                 bool single_record = false);

// Plain-text report (the validate command).
void write_text(const Options& options, const std::string& text);

}  // namespace emit
