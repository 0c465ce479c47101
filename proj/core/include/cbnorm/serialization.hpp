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
// JSON file formats for maps and witnesses.
//
// Matrix:  [[ [re, im], ... ] per row ]
// Map:     {"m": int, "n": int, "columns": [matrix per column operator]}
// Witness: {"k": int, "x": matrix, "value": float}
//
// Floats are written with 17 significant digits, which round-trips every
// double exactly.
#ifndef CBNORM_SERIALIZATION_HPP_
#define CBNORM_SERIALIZATION_HPP_

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "cbnorm/linalg.hpp"
#include "cbnorm/modmap.hpp"

namespace cbnorm {

using Json = nlohmann::ordered_json;

// Compact (indent < 0) or pretty JSON text with 17-digit floats.
std::string dump_json(const Json& value, int indent = -1);

// Formats a double with 17 significant digits, always as a JSON float.
std::string format_double(double v);

// Throws ParseError with "source:line:column" context.
Json parse_json(std::string_view text, std::string_view source = "<input>");

Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

Json matrix_to_json(const CMatrix& x);
// `field` names the location used in error messages.
CMatrix matrix_from_json(const Json& j, const std::string& field);
CVector vector_from_json(const Json& j, const std::string& field);
Json vector_to_json(const CVector& v);

Json map_to_json(const RightModuleMap& t);
RightModuleMap map_from_json(const Json& j);

Json witness_to_json(const Witness& w);
Witness witness_from_json(const Json& j);

RightModuleMap load_map(const std::filesystem::path& path);
void save_map(const RightModuleMap& t, const std::filesystem::path& path);

Witness load_witness(const std::filesystem::path& path);
void save_witness(const Witness& w, const std::filesystem::path& path);

}  // namespace cbnorm

#endif  // CBNORM_SERIALIZATION_HPP_
