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

#include "treesec/tree.hpp"

#include <json.hpp>

namespace treesec {

using json = nlohmann::ordered_json;

bool is_valid_label(const std::string& name) {
  if (name.empty()) return false;
  for (unsigned char c : name) {
    if (c <= ' ' || c == '"' || c == 0x7f) return false;
  }
  return true;
}

void check_label(const std::string& name) {
  if (!is_valid_label(name)) throw input_error("invalid label '" + name + "'");
}

size_t DataTree::node_count() const {
  size_t n = 1;
  for (const auto& c : children) n += c.node_count();
  return n;
}

void DataTree::visit(
    const std::function<void(const std::vector<size_t>&, const DataTree&)>& fn) const {
  std::vector<size_t> addr;
  std::function<void(const DataTree&)> rec = [&](const DataTree& t) {
    fn(addr, t);
    for (size_t i = 0; i < t.children.size(); ++i) {
      addr.push_back(i);
      rec(t.children[i]);
      addr.pop_back();
    }
  };
  rec(*this);
}

namespace {

DataValue value_from_json(const json& j, DataDomain domain) {
  if (j.is_number_integer()) return DataValue(j.get<long long>());
  if (j.is_object() && j.contains("num") && j.contains("den")) {
    DataValue v = DataValue::ratio(j.at("num").get<long long>(), j.at("den").get<long long>());
    if (!v.in_domain(domain))
      throw input_error("rational value " + v.str() + " under integer domain");
    return v;
  }
  throw input_error("value must be an integer or {\"num\":int,\"den\":int}");
}

json value_to_json(const DataValue& v) {
  if (v.is_integer()) return json(v.num());
  json j;
  j["num"] = v.num();
  j["den"] = v.den();
  return j;
}

DataTree tree_from_json(const json& j, DataDomain domain) {
  if (!j.is_object()) throw input_error("tree node must be a JSON object");
  DataTree t;
  t.label = j.at("label").get<std::string>();
  check_label(t.label);
  t.value = value_from_json(j.at("value"), domain);
  for (const auto& c : j.at("children")) t.children.push_back(tree_from_json(c, domain));
  return t;
}

json tree_to_json(const DataTree& t) {
  json j;
  j["label"] = t.label;
  j["value"] = value_to_json(t.value);
  j["children"] = json::array();
  for (const auto& c : t.children) j["children"].push_back(tree_to_json(c));
  return j;
}

}  // namespace

DataTree parse_tree(const std::string& text, DataDomain domain) {
  json j;
  try {
    j = json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw input_error("tree syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  if (j.is_object() && j.contains("tree")) {
    if (j.contains("domain")) domain = domain_from_string(j.at("domain").get<std::string>());
    return tree_from_json(j.at("tree"), domain);
  }
  return tree_from_json(j, domain);
}

std::string serialize_tree(const DataTree& t) { return tree_to_json(t).dump(); }

bool tree_less(const DataTree& a, const DataTree& b) {
  size_t na = a.node_count(), nb = b.node_count();
  if (na != nb) return na < nb;
  if (a.label != b.label) return a.label < b.label;
  if (a.value != b.value) return a.value < b.value;
  if (a.children.size() != b.children.size()) return a.children.size() < b.children.size();
  for (size_t i = 0; i < a.children.size(); ++i) {
    if (a.children[i] == b.children[i]) continue;
    return tree_less(a.children[i], b.children[i]);
  }
  return false;
}

std::string tree_brief(const DataTree& t) {
  std::string s = t.label + "(" + t.value.str() + ")";
  if (!t.children.empty()) {
    s += "[";
    for (size_t i = 0; i < t.children.size(); ++i) {
      if (i) s += ",";
      s += tree_brief(t.children[i]);
    }
    s += "]";
  }
  return s;
}

}  // namespace treesec
