#include "emit.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace emit {

std::string format_double(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

namespace {

std::string resolve_path(const std::string& path) {
  if (path.empty() || path.front() == '/') return path;
  const char* dir = std::getenv("QHE_OUTPUT_DIR");
  if (dir == nullptr || *dir == '\0') return path;
  std::string out = dir;
  if (out.back() != '/') out += '/';
  return out + path;
}

void deliver(const Options& options, const std::string& text) {
  if (options.path.empty()) {
    std::cout << text;
    return;
  }
  const std::string path = resolve_path(options.path);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output path: " + path);
  out << text;
  if (!out.flush()) throw std::runtime_error("write failed: " + path);
}

std::string csv_cell(const Value& v, int precision) {
  switch (v.kind) {
    case Value::Kind::Real: return format_double(v.real, precision);
    case Value::Kind::Integer: return std::to_string(v.integer);
    case Value::Kind::Boolean: return v.boolean ? "1" : "0";
    case Value::Kind::Text: return v.text;
  }
  return {};
}

nlohmann::ordered_json json_cell(const Value& v, int precision) {
  switch (v.kind) {
    case Value::Kind::Real:
      if (!std::isfinite(v.real)) return nullptr;
      return std::strtod(format_double(v.real, precision).c_str(), nullptr);
    case Value::Kind::Integer: return v.integer;
    case Value::Kind::Boolean: return v.boolean;
    case Value::Kind::Text: return v.text;
  }
  return nullptr;
}

}  // namespace

void write_table(const Options& options, const std::vector<Row>& rows,
                 bool single_record) {
  std::ostringstream out;
  if (options.format == "json") {
    nlohmann::ordered_json doc;
    for (const Row& row : rows) {
      nlohmann::ordered_json obj;
      for (const auto& [name, value] : row) obj[name] = json_cell(value, options.precision);
      if (single_record && rows.size() == 1) {
        doc = std::move(obj);
      } else {
        doc.push_back(std::move(obj));
      }
    }
    out << doc.dump(2) << '\n';
  } else {
    if (!rows.empty()) {
      const Row& head = rows.front();
      for (std::size_t i = 0; i < head.size(); ++i)
        out << (i ? "," : "") << head[i].first;
      out << '\n';
      for (const Row& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
          out << (i ? "," : "") << csv_cell(row[i].second, options.precision);
        out << '\n';
      }
    }
  }
  deliver(options, out.str());
}

void write_text(const Options& options, const std::string& text) {
  deliver(options, text);
}

}  // namespace emit
