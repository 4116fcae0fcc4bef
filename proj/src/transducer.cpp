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

#include "treesec/transducer.hpp"

#include <algorithm>

#include "treesec/json_util.hpp"

namespace treesec {

using json = nlohmann::ordered_json;

int NameDfa::state_id(const std::string& name) const {
  for (size_t i = 0; i < states.size(); ++i)
    if (states[i] == name) return static_cast<int>(i);
  return -1;
}

int NameDfa::step(int state, const std::string& sym) const {
  auto it = delta.find({state, sym});
  return it == delta.end() ? -1 : it->second;
}

int TopDownRelabeler::state_id(const std::string& name) const {
  for (size_t i = 0; i < states.size(); ++i)
    if (states[i] == name) return static_cast<int>(i);
  return -1;
}

int BottomUpRelabeler::state_id(const std::string& name) const {
  for (size_t i = 0; i < states.size(); ++i)
    if (states[i] == name) return static_cast<int>(i);
  return -1;
}

namespace {

[[noreturn]] void incomplete(const std::string& what, const std::string& state,
                             const std::string& label) {
  throw input_error("incomplete transducer: no " + what + " for (" + state + ", " + label + ")");
}

DataTree apply_topdown_rec(const TopDownRelabeler& t, int state, const DataTree& n) {
  auto it = t.rules.find({state, n.label});
  if (it == t.rules.end()) incomplete("rule", t.states[state], n.label);
  const auto& rule = it->second;
  DataTree out;
  out.label = rule.out_label;
  out.value = n.value;
  int d = rule.driver.initial;
  for (const auto& c : n.children) {
    auto ait = rule.assign.find({d, c.label});
    if (ait == rule.assign.end())
      incomplete("driver assignment", rule.driver.states.empty() ? "?" : rule.driver.states[d],
                 c.label);
    int child_state = ait->second;
    int next = rule.driver.step(d, c.label);
    if (next < 0) incomplete("driver transition", rule.driver.states[d], c.label);
    d = next;
    out.children.push_back(apply_topdown_rec(t, child_state, c));
  }
  return out;
}

struct BottomUpResult {
  DataTree tree;
  int state;
};

BottomUpResult apply_bottomup_rec(const BottomUpRelabeler& t, const DataTree& n) {
  std::vector<BottomUpResult> kids;
  for (const auto& c : n.children) kids.push_back(apply_bottomup_rec(t, c));
  int cls = t.classifier.initial;
  for (const auto& k : kids) {
    int next = t.classifier.step(cls, t.states[k.state]);
    if (next < 0) incomplete("classifier transition", t.classifier.states[cls], t.states[k.state]);
    cls = next;
  }
  auto it = t.rules.find({n.label, cls});
  if (it == t.rules.end()) incomplete("rule", n.label, t.classifier.states[cls]);
  DataTree out;
  out.label = it->second.out_label;
  out.value = n.value;
  for (auto& k : kids) out.children.push_back(std::move(k.tree));
  return {std::move(out), it->second.state};
}

std::vector<DataTree> delete_rec(const DataTree& n) {
  if (n.label == kDollarLabel) return {};
  std::vector<DataTree> kids;
  for (const auto& c : n.children) {
    auto sub = delete_rec(c);
    for (auto& s : sub) kids.push_back(std::move(s));
  }
  if (n.label == kHashLabel) return kids;
  DataTree out;
  out.label = n.label;
  out.value = n.value;
  out.children = std::move(kids);
  return {std::move(out)};
}

}  // namespace

DataTree apply_topdown(const TopDownRelabeler& t, const DataTree& tree) {
  return apply_topdown_rec(t, t.initial, tree);
}

DataTree apply_bottomup(const BottomUpRelabeler& t, const DataTree& tree) {
  return apply_bottomup_rec(t, tree).tree;
}

DataTree apply_deleting(const Deleter&, const DataTree& tree) {
  if (tree.label == kHashLabel || tree.label == kDollarLabel)
    throw input_error("undeletable root: root is labeled '" + tree.label + "'");
  auto out = delete_rec(tree);
  return out.front();
}

DataTree apply_data_rewriting(const DataRewriter& t, const DataTree& tree) {
  DataTree out;
  out.label = tree.label;
  out.value = tree.label == t.label ? t.value : tree.value;
  for (const auto& c : tree.children) out.children.push_back(apply_data_rewriting(t, c));
  return out;
}

DataTree apply_data_relabeling(const DataRelabeler& t, const DataTree& tree) {
  DataTree out;
  out.label = (tree.label == t.from && tree.value == t.value) ? t.to : tree.label;
  out.value = tree.value;
  for (const auto& c : tree.children) out.children.push_back(apply_data_relabeling(t, c));
  return out;
}

namespace {

void collect_values(const DataTree& n, const std::string& label, std::vector<DataValue>& out) {
  if (n.label == label) out.push_back(n.value);
  for (const auto& c : n.children) collect_values(c, label, out);
}

DataTree relabel_matching(const DataTree& n, const std::string& from, const DataValue& v,
                          const std::string& to) {
  DataTree out;
  out.label = (n.label == from && n.value == v) ? to : n.label;
  out.value = n.value;
  for (const auto& c : n.children) out.children.push_back(relabel_matching(c, from, v, to));
  return out;
}

}  // namespace

DataTree apply_minmax(const MinMaxRelabeler& t, const DataTree& tree) {
  std::vector<DataValue> vals;
  collect_values(tree, t.from, vals);
  if (vals.empty()) return tree;  // min over the empty set matches nothing
  DataValue pick = vals.front();
  for (const auto& v : vals) {
    if (t.mode == MinMaxRelabeler::Mode::min ? v < pick : v > pick) pick = v;
  }
  return relabel_matching(tree, t.from, pick, t.to);
}

DataTree apply_transducer(const Transducer& t, const DataTree& tree) {
  return std::visit(
      [&](const auto& v) -> DataTree {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, TopDownRelabeler>) return apply_topdown(v, tree);
        if constexpr (std::is_same_v<T, BottomUpRelabeler>) return apply_bottomup(v, tree);
        if constexpr (std::is_same_v<T, Deleter>) return apply_deleting(v, tree);
        if constexpr (std::is_same_v<T, DataRewriter>) return apply_data_rewriting(v, tree);
        if constexpr (std::is_same_v<T, DataRelabeler>) return apply_data_relabeling(v, tree);
        if constexpr (std::is_same_v<T, MinMaxRelabeler>) return apply_minmax(v, tree);
      },
      t);
}

namespace {

bool step_outputs_hash(const Transducer& t) {
  return std::visit(
      [](const auto& v) -> bool {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, TopDownRelabeler>) {
          for (const auto& [key, rule] : v.rules)
            if (rule.out_label == kHashLabel && key.second != kHashLabel) return true;
          return false;
        } else if constexpr (std::is_same_v<T, BottomUpRelabeler>) {
          for (const auto& [key, rhs] : v.rules)
            if (rhs.out_label == kHashLabel && key.first != kHashLabel) return true;
          return false;
        } else if constexpr (std::is_same_v<T, DataRelabeler>) {
          return v.to == kHashLabel && v.from != kHashLabel;
        } else if constexpr (std::is_same_v<T, MinMaxRelabeler>) {
          return v.to == kHashLabel && v.from != kHashLabel;
        } else {
          return false;
        }
      },
      t);
}

}  // namespace

QueryValidation validate_query(const Query& q) {
  QueryValidation v;
  for (size_t i = 0; i < q.steps.size(); ++i) {
    if (std::holds_alternative<Deleter>(q.steps[i]) && i + 1 != q.steps.size()) {
      v.ok = false;
      v.diagnostics.push_back("deletion not final (step " + std::to_string(i + 1) + ")");
    }
  }
  if (q.sensitive) {
    for (size_t i = 0; i < q.steps.size(); ++i) {
      if (step_outputs_hash(q.steps[i])) {
        v.ok = false;
        v.diagnostics.push_back("sensitive query relabels to # (step " + std::to_string(i + 1) +
                                ")");
      }
    }
  }
  return v;
}

DataTree apply_query(const Query& q, const DataTree& tree) {
  auto v = validate_query(q);
  if (!v.ok) {
    std::string msg = "invalid query:";
    for (const auto& d : v.diagnostics) msg += " " + d + ";";
    throw input_error(msg);
  }
  DataTree cur = tree;
  for (const auto& s : q.steps) cur = apply_transducer(s, cur);
  return cur;
}

namespace {

NameDfa dfa_from_json(const json& j, const char* sym_key) {
  NameDfa d;
  for (const auto& s : j.at("states")) d.states.push_back(s.get<std::string>());
  d.initial = d.state_id(j.at("initial").get<std::string>());
  if (d.initial < 0) throw input_error("driver/classifier initial state not declared");
  for (const auto& tr : j.at("delta")) {
    int from = d.state_id(tr.at("from").get<std::string>());
    int to = d.state_id(tr.at("to").get<std::string>());
    if (from < 0 || to < 0) throw input_error("driver/classifier transition uses unknown state");
    d.delta[{from, tr.at(sym_key).get<std::string>()}] = to;
  }
  return d;
}

json dfa_to_json(const NameDfa& d, const char* sym_key) {
  json j;
  j["states"] = d.states;
  j["initial"] = d.states[d.initial];
  j["delta"] = json::array();
  for (const auto& [key, to] : d.delta) {
    json tr;
    tr["from"] = d.states[key.first];
    tr[sym_key] = key.second;
    tr["to"] = d.states[to];
    j["delta"].push_back(tr);
  }
  return j;
}

Transducer step_from_json(const json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "delete") return Deleter{};
  if (kind == "data_rewrite")
    return DataRewriter{j.at("label").get<std::string>(), value_from_json(j.at("value"))};
  if (kind == "data_relabel")
    return DataRelabeler{j.at("from").get<std::string>(), j.at("to").get<std::string>(),
                         value_from_json(j.at("value"))};
  if (kind == "min_relabel" || kind == "max_relabel")
    return MinMaxRelabeler{kind == "min_relabel" ? MinMaxRelabeler::Mode::min
                                                 : MinMaxRelabeler::Mode::max,
                           j.at("from").get<std::string>(), j.at("to").get<std::string>()};
  if (kind == "topdown") {
    TopDownRelabeler t;
    for (const auto& s : j.at("states")) t.states.push_back(s.get<std::string>());
    t.initial = t.state_id(j.at("initial").get<std::string>());
    if (t.initial < 0) throw input_error("topdown initial state not declared");
    for (const auto& rj : j.at("rules")) {
      int q = t.state_id(rj.at("state").get<std::string>());
      if (q < 0) throw input_error("topdown rule uses unknown state");
      TopDownRelabeler::Rule rule;
      rule.out_label = rj.at("out").get<std::string>();
      rule.driver = dfa_from_json(rj.at("driver"), "label");
      for (const auto& aj : rj.at("driver").at("assign")) {
        int d = rule.driver.state_id(aj.at("state").get<std::string>());
        int cs = t.state_id(aj.at("child_state").get<std::string>());
        if (d < 0 || cs < 0) throw input_error("topdown assign uses unknown state");
        rule.assign[{d, aj.at("label").get<std::string>()}] = cs;
      }
      t.rules[{q, rj.at("label").get<std::string>()}] = std::move(rule);
    }
    return t;
  }
  if (kind == "bottomup") {
    BottomUpRelabeler t;
    for (const auto& s : j.at("states")) t.states.push_back(s.get<std::string>());
    t.classifier = dfa_from_json(j.at("classifier"), "result_state");
    for (const auto& rj : j.at("rules")) {
      int f = t.classifier.state_id(rj.at("final").get<std::string>());
      int rs = t.state_id(rj.at("state").get<std::string>());
      if (f < 0 || rs < 0) throw input_error("bottomup rule uses unknown state");
      t.rules[{rj.at("label").get<std::string>(), f}] =
          BottomUpRelabeler::Rhs{rj.at("out").get<std::string>(), rs};
    }
    return t;
  }
  throw input_error("unknown transducer kind '" + kind + "'");
}

json step_to_json(const Transducer& t) {
  json j;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Deleter>) {
          j["kind"] = "delete";
        } else if constexpr (std::is_same_v<T, DataRewriter>) {
          j["kind"] = "data_rewrite";
          j["label"] = v.label;
          j["value"] = value_to_json(v.value);
        } else if constexpr (std::is_same_v<T, DataRelabeler>) {
          j["kind"] = "data_relabel";
          j["from"] = v.from;
          j["to"] = v.to;
          j["value"] = value_to_json(v.value);
        } else if constexpr (std::is_same_v<T, MinMaxRelabeler>) {
          j["kind"] = v.mode == MinMaxRelabeler::Mode::min ? "min_relabel" : "max_relabel";
          j["from"] = v.from;
          j["to"] = v.to;
        } else if constexpr (std::is_same_v<T, TopDownRelabeler>) {
          j["kind"] = "topdown";
          j["states"] = v.states;
          j["initial"] = v.states[v.initial];
          j["rules"] = json::array();
          for (const auto& [key, rule] : v.rules) {
            json rj;
            rj["state"] = v.states[key.first];
            rj["label"] = key.second;
            rj["out"] = rule.out_label;
            rj["driver"] = dfa_to_json(rule.driver, "label");
            rj["driver"]["assign"] = json::array();
            for (const auto& [akey, cs] : rule.assign) {
              json aj;
              aj["state"] = rule.driver.states[akey.first];
              aj["label"] = akey.second;
              aj["child_state"] = v.states[cs];
              rj["driver"]["assign"].push_back(aj);
            }
            j["rules"].push_back(rj);
          }
        } else if constexpr (std::is_same_v<T, BottomUpRelabeler>) {
          j["kind"] = "bottomup";
          j["states"] = v.states;
          j["classifier"] = dfa_to_json(v.classifier, "result_state");
          j["rules"] = json::array();
          for (const auto& [key, rhs] : v.rules) {
            json rj;
            rj["label"] = key.first;
            rj["final"] = v.classifier.states[key.second];
            rj["out"] = rhs.out_label;
            rj["state"] = v.states[rhs.state];
            j["rules"].push_back(rj);
          }
        }
      },
      t);
  return j;
}

}  // namespace

Query query_from_json_text(const std::string& text) {
  json j = parse_json(text, "query");
  Query q;
  q.sensitive = j.at("sensitive").get<bool>();
  for (const auto& sj : j.at("steps")) q.steps.push_back(step_from_json(sj));
  return q;
}

std::string query_to_json_text(const Query& q) {
  json j;
  j["sensitive"] = q.sensitive;
  j["steps"] = json::array();
  for (const auto& s : q.steps) j["steps"].push_back(step_to_json(s));
  return j.dump();
}

}  // namespace treesec
