// Copyright 2026 The tmps Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/// @file report.hpp
/// Report serialization: JSON with stable key order and 17 significant
/// digits for floats, and RFC 4180 CSV.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "json.hpp"

namespace tmps {

using ordered_json = nlohmann::ordered_json;

inline std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

namespace detail {

inline void write_json(const ordered_json& j, std::string& out, int indent, int depth) {
  const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
  const std::string close_pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case ordered_json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      out += nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) {
          out += ",";
          out += nl;
        }
        first = false;
        out += pad;
        out += ordered_json(it.key()).dump();
        out += indent > 0 ? ": " : ":";
        write_json(it.value(), out, indent, depth + 1);
      }
      out += nl;
      out += close_pad;
      out += "}";
      return;
    }
    case ordered_json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[";
      out += nl;
      bool first = true;
      for (const auto& v : j) {
        if (!first) {
          out += ",";
          out += nl;
        }
        first = false;
        out += pad;
        write_json(v, out, indent, depth + 1);
      }
      out += nl;
      out += close_pad;
      out += "]";
      return;
    }
    case ordered_json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

}  // namespace detail

inline std::string emit_json(const ordered_json& j, int indent = 2) {
  std::string out;
  detail::write_json(j, out, indent, 0);
  out += "\n";
  return out;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

inline std::string csv_cell(const ordered_json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_null()) return "";
  return v.dump();
}

/// A table of objects as CSV; columns in order of first appearance. Lines
/// end in CRLF.
inline std::string emit_csv(const ordered_json& rows) {
  std::vector<std::string> header;
  if (rows.is_array())
    for (const auto& row : rows)
      for (auto it = row.begin(); it != row.end(); ++it)
        if (std::find(header.begin(), header.end(), it.key()) == header.end()) header.push_back(it.key());
  std::string out;
  for (std::size_t k = 0; k < header.size(); ++k) out += (k ? "," : "") + csv_field(header[k]);
  out += "\r\n";
  if (!rows.is_array()) return out;
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < header.size(); ++k) {
      if (k) out += ",";
      if (row.contains(header[k])) out += csv_field(csv_cell(row[header[k]]));
    }
    out += "\r\n";
  }
  return out;
}

}  // namespace tmps
