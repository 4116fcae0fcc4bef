// Copyright 2026 The Treesec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TREESEC_JSON_UTIL_HPP
#define TREESEC_JSON_UTIL_HPP

#include <json.hpp>

#include "treesec/value.hpp"

namespace treesec {

inline DataValue value_from_json(const nlohmann::ordered_json& j,
                                 DataDomain domain = DataDomain::rationals) {
  if (j.is_number_integer()) return DataValue(j.get<long long>());
  if (j.is_object() && j.contains("num") && j.contains("den")) {
    DataValue v = DataValue::ratio(j.at("num").get<long long>(), j.at("den").get<long long>());
    if (!v.in_domain(domain))
      throw input_error("rational value " + v.str() + " under integer domain");
    return v;
  }
  throw input_error("value must be an integer or {\"num\":int,\"den\":int}");
}

inline nlohmann::ordered_json value_to_json(const DataValue& v) {
  if (v.is_integer()) return nlohmann::ordered_json(v.num());
  nlohmann::ordered_json j;
  j["num"] = v.num();
  j["den"] = v.den();
  return j;
}

inline nlohmann::ordered_json parse_json(const std::string& text, const char* what) {
  try {
    return nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw input_error(std::string(what) + " syntax error at byte " + std::to_string(e.byte) +
                      ": " + e.what());
  }
}

}  // namespace treesec

#endif  // TREESEC_JSON_UTIL_HPP
