/* Copyright 2026 The cbnorm Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#include "cbnorm/serialization.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cbnorm/error.hpp"

namespace cbnorm {

namespace {

void escape_string(const std::string& s, std::string& out) {
  out.push_back('"');
  for (const char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out.push_back(c);
        }
    }
  }
  out.push_back('"');
}

void newline(std::string& out, int indent, int depth) {
  if (indent < 0) return;
  out.push_back('\n');
  out.append(static_cast<std::size_t>(indent * depth), ' ');
}

void dump_into(const Json& v, int indent, int depth, std::string& out) {
  switch (v.type()) {
    case Json::value_t::null: out += "null"; break;
    case Json::value_t::boolean: out += v.get<bool>() ? "true" : "false"; break;
    case Json::value_t::number_integer:
      out += std::to_string(v.get<std::int64_t>());
      break;
    case Json::value_t::number_unsigned:
      out += std::to_string(v.get<std::uint64_t>());
      break;
    case Json::value_t::number_float:
      out += format_double(v.get<double>());
      break;
    case Json::value_t::string: escape_string(v.get<std::string>(), out); break;
    case Json::value_t::array: {
      out.push_back('[');
      bool first = true;
      // Arrays of scalars stay on one line even in pretty mode.
      const bool flat = std::all_of(v.begin(), v.end(), [](const Json& e) {
        return !e.is_structured();
      });
      for (const Json& e : v) {
        if (!first) out.push_back(',');
        if (!flat) newline(out, indent, depth + 1);
        else if (!first && indent >= 0) out.push_back(' ');
        dump_into(e, indent, depth + 1, out);
        first = false;
      }
      if (!flat && !v.empty()) newline(out, indent, depth);
      out.push_back(']');
      break;
    }
    case Json::value_t::object: {
      out.push_back('{');
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out.push_back(',');
        newline(out, indent, depth + 1);
        escape_string(it.key(), out);
        out += indent >= 0 ? ": " : ":";
        dump_into(it.value(), indent, depth + 1, out);
        first = false;
      }
      if (!v.empty()) newline(out, indent, depth);
      out.push_back('}');
      break;
    }
    default:
      throw Error("dump_json: unsupported JSON value type");
  }
}

std::string location(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return std::to_string(line) + ":" + std::to_string(col);
}

const Json& require_field(const Json& j, const char* key,
                          const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) {
    throw ParseError(where + ": missing field '" + key + "'");
  }
  return *it;
}

int require_positive_int(const Json& j, const std::string& field) {
  if (!j.is_number_integer()) {
    throw ParseError("field '" + field + "': expected an integer");
  }
  const auto v = j.get<std::int64_t>();
  if (v < 1 || v > (1 << 20)) {
    throw SchemaError("field '" + field + "': value " + std::to_string(v) +
                      " out of range");
  }
  return static_cast<int>(v);
}

double require_number(const Json& j, const std::string& field) {
  if (!j.is_number()) {
    throw ParseError("field '" + field + "': expected a number");
  }
  const double v = j.get<double>();
  if (!std::isfinite(v)) {
    throw SchemaError("field '" + field + "': non-finite number");
  }
  return v;
}

}  // namespace

std::string format_double(double v) {
  if (!std::isfinite(v)) {
    // JSON has no NaN/Inf; these never appear in valid matrices.
    return "null";
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

std::string dump_json(const Json& value, int indent) {
  std::string out;
  dump_into(value, indent, 0, out);
  return out;
}

Json parse_json(std::string_view text, std::string_view source) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string(source) + ":" + location(text, e.byte) +
                     ": " + e.what());
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str(), path.string());
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(path.string() + ": cannot open file for writing");
  out << text;
  if (!out) throw Error(path.string() + ": write failed");
}

Json matrix_to_json(const CMatrix& x) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      row.push_back(Json::array({x(i, j).real(), x(i, j).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const Json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) {
    throw ParseError("field '" + field + "': expected a non-empty array of rows");
  }
  const auto rows = static_cast<Eigen::Index>(j.size());
  Eigen::Index cols = -1;
  CMatrix out;
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    const std::string rf = field + "[" + std::to_string(i) + "]";
    if (!row.is_array() || row.empty()) {
      throw ParseError("field '" + rf + "': expected a non-empty row array");
    }
    if (cols < 0) {
      cols = static_cast<Eigen::Index>(row.size());
      out.resize(rows, cols);
    } else if (static_cast<Eigen::Index>(row.size()) != cols) {
      throw SchemaError("field '" + rf + "': row length " +
                        std::to_string(row.size()) + " differs from " +
                        std::to_string(cols));
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const Json& e = row[static_cast<std::size_t>(c)];
      const std::string ef = rf + "[" + std::to_string(c) + "]";
      if (!e.is_array() || e.size() != 2) {
        throw ParseError("field '" + ef + "': expected a [re, im] pair");
      }
      out(i, c) = Complex(require_number(e[0], ef + "[0]"),
                          require_number(e[1], ef + "[1]"));
    }
  }
  return out;
}

Json vector_to_json(const CVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out.push_back(Json::array({v(i).real(), v(i).imag()}));
  }
  return out;
}

CVector vector_from_json(const Json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) {
    throw ParseError("field '" + field + "': expected a non-empty array");
  }
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string ef = field + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].size() != 2) {
      throw ParseError("field '" + ef + "': expected a [re, im] pair");
    }
    v(static_cast<Eigen::Index>(i)) =
        Complex(require_number(j[i][0], ef + "[0]"),
                require_number(j[i][1], ef + "[1]"));
  }
  return v;
}

Json map_to_json(const RightModuleMap& t) {
  Json cols = Json::array();
  for (const CMatrix& a : t.columns()) cols.push_back(matrix_to_json(a));
  return Json{{"m", t.rows()}, {"n", t.cols()}, {"columns", std::move(cols)}};
}

RightModuleMap map_from_json(const Json& j) {
  const int m = require_positive_int(require_field(j, "m", "map"), "m");
  const int n = require_positive_int(require_field(j, "n", "map"), "n");
  const Json& cols = require_field(j, "columns", "map");
  if (!cols.is_array()) {
    throw ParseError("field 'columns': expected an array");
  }
  if (cols.size() != static_cast<std::size_t>(n)) {
    throw SchemaError("field 'columns': found " + std::to_string(cols.size()) +
                      " column operators but n = " + std::to_string(n));
  }
  std::vector<CMatrix> ops;
  ops.reserve(cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const std::string f = "columns[" + std::to_string(c) + "]";
    CMatrix a = matrix_from_json(cols[c], f);
    if (a.rows() != m || a.cols() != m) {
      throw SchemaError("field '" + f + "': expected " + std::to_string(m) +
                        "x" + std::to_string(m) + ", got " +
                        std::to_string(a.rows()) + "x" +
                        std::to_string(a.cols()));
    }
    ops.push_back(std::move(a));
  }
  return RightModuleMap(m, n, std::move(ops));
}

Json witness_to_json(const Witness& w) {
  return Json{{"k", w.k}, {"x", matrix_to_json(w.x)}, {"value", w.value}};
}

Witness witness_from_json(const Json& j) {
  Witness w;
  w.k = require_positive_int(require_field(j, "k", "witness"), "k");
  w.x = matrix_from_json(require_field(j, "x", "witness"), "x");
  if (w.x.rows() % w.k != 0) {
    throw SchemaError("field 'x': row count " + std::to_string(w.x.rows()) +
                      " is not a multiple of k = " + std::to_string(w.k));
  }
  if (auto it = j.find("value"); it != j.end()) {
    w.value = require_number(*it, "value");
  }
  return w;
}

RightModuleMap load_map(const std::filesystem::path& path) {
  const Json j = read_json_file(path);
  try {
    return map_from_json(j);
  } catch (const SchemaError& e) {
    throw SchemaError(path.string() + ": " + e.what());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  } catch (const DomainError& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
}

void save_map(const RightModuleMap& t, const std::filesystem::path& path) {
  write_text_file(path, dump_json(map_to_json(t), 1) + "\n");
}

Witness load_witness(const std::filesystem::path& path) {
  const Json j = read_json_file(path);
  try {
    return witness_from_json(j);
  } catch (const SchemaError& e) {
    throw SchemaError(path.string() + ": " + e.what());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void save_witness(const Witness& w, const std::filesystem::path& path) {
  write_text_file(path, dump_json(witness_to_json(w), 1) + "\n");
}

}  // namespace cbnorm
