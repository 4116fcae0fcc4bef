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

#include "treesec/nfta.hpp"

#include <algorithm>
#include <functional>
#include <json.hpp>

namespace treesec {

using json = nlohmann::ordered_json;

int Nfta::state_id(const std::string& name) const {
  for (size_t i = 0; i < states.size(); ++i)
    if (states[i] == name) return static_cast<int>(i);
  return -1;
}

int Nfta::add_state(const std::string& name) {
  int id = state_id(name);
  if (id >= 0) return id;
  states.push_back(name);
  return static_cast<int>(states.size()) - 1;
}

void Nfta::add_rule(const std::string& state, const std::string& label, const std::string& regex) {
  int q = state_id(state);
  if (q < 0) throw input_error("rule references undeclared state '" + state + "'");
  auto intern = [this](const std::string& name) {
    int id = state_id(name);
    if (id < 0) throw input_error("horizontal regex references undeclared state '" + name + "'");
    return static_cast<uint32_t>(id);
  };
  Rule r;
  r.state = q;
  r.label = label;
  r.horizontal_src = regex;
  r.horizontal = parse_horizontal_regex(regex, intern);
  rules.push_back(std::move(r));
}

void Nfta::add_rule_nfa(int state, const std::string& label, StrNfa nfa) {
  rules.push_back({state, label, "", std::move(nfa)});
}

void Nfta::validate() const {
  if (states.empty()) throw input_error("automaton has no states");
  std::set<std::string> seen(states.begin(), states.end());
  if (seen.size() != states.size()) throw input_error("duplicate state names");
  if (initial < 0 || initial >= static_cast<int>(states.size()))
    throw input_error("initial state out of range");
  for (const auto& r : rules) {
    if (r.state < 0 || r.state >= static_cast<int>(states.size()))
      throw input_error("rule state out of range");
    if (!alphabet.count(r.label))
      throw input_error("rule label '" + r.label + "' not in alphabet");
    for (const auto& e : r.horizontal.edges())
      if (e.sym != StrNfa::kEpsilon && e.sym >= states.size())
        throw input_error("horizontal symbol out of range");
  }
  for (const auto& a : alphabet) check_label(a);
}

namespace {

struct SetsTree {
  std::vector<int> set;
  std::vector<SetsTree> children;
};

SetsTree compute_sets(const Nfta& a, const DataTree& t) {
  SetsTree st;
  for (const auto& c : t.children) st.children.push_back(compute_sets(a, c));
  std::vector<std::vector<uint32_t>> child_sets;
  for (const auto& c : st.children) child_sets.emplace_back(c.set.begin(), c.set.end());
  for (int q = 0; q < static_cast<int>(a.states.size()); ++q) {
    for (const auto& r : a.rules) {
      if (r.state != q || r.label != t.label) continue;
      if (r.horizontal.accepts_setword(child_sets)) {
        st.set.push_back(q);
        break;
      }
    }
  }
  return st;
}

}  // namespace

std::vector<int> root_state_set(const Nfta& a, const DataTree& t) {
  return compute_sets(a, t).set;
}

bool accepts(const Nfta& a, const DataTree& t) {
  auto root = root_state_set(a, t);
  return std::find(root.begin(), root.end(), a.initial) != root.end();
}

std::optional<Run> find_run(const Nfta& a, const DataTree& t) {
  SetsTree sets = compute_sets(a, t);
  if (std::find(sets.set.begin(), sets.set.end(), a.initial) == sets.set.end())
    return std::nullopt;

  Run run;
  auto name_less = [&a](uint32_t x, uint32_t y) { return a.states[x] < a.states[y]; };

  std::function<void(const DataTree&, const SetsTree&, int, std::vector<size_t>&)> assign =
      [&](const DataTree& n, const SetsTree& st, int q, std::vector<size_t>& addr) {
        run.states[addr] = q;
        std::vector<std::vector<uint32_t>> child_sets;
        for (const auto& c : st.children) child_sets.emplace_back(c.set.begin(), c.set.end());
        std::optional<std::vector<uint32_t>> best;
        for (const auto& r : a.rules) {
          if (r.state != q || r.label != n.label) continue;
          auto word = r.horizontal.least_setword(child_sets, name_less);
          if (!word) continue;
          if (!best || std::lexicographical_compare(word->begin(), word->end(), best->begin(),
                                                    best->end(), name_less))
            best = word;
        }
        if (!best) return;  // cannot happen: q was in the node's set
        for (size_t i = 0; i < n.children.size(); ++i) {
          addr.push_back(i);
          assign(n.children[i], st.children[i], static_cast<int>((*best)[i]), addr);
          addr.pop_back();
        }
      };
  std::vector<size_t> addr;
  assign(t, sets, a.initial, addr);
  return run;
}

bool check_run(const Nfta& a, const DataTree& t, const Run& run) {
  bool ok = true;
  t.visit([&](const std::vector<size_t>& addr, const DataTree& n) {
    if (!ok) return;
    auto it = run.states.find(addr);
    if (it == run.states.end()) {
      ok = false;
      return;
    }
    int q = it->second;
    if (addr.empty() && q != a.initial) {
      ok = false;
      return;
    }
    std::vector<uint32_t> word;
    for (size_t i = 0; i < n.children.size(); ++i) {
      auto caddr = addr;
      caddr.push_back(i);
      auto cit = run.states.find(caddr);
      if (cit == run.states.end()) {
        ok = false;
        return;
      }
      word.push_back(static_cast<uint32_t>(cit->second));
    }
    bool rule_ok = false;
    for (const auto& r : a.rules) {
      if (r.state != q || r.label != n.label) continue;
      if (r.horizontal.accepts(word)) {
        rule_ok = true;
        break;
      }
    }
    if (!rule_ok) ok = false;
  });
  return ok;
}

namespace {

std::vector<char> productive_states(const Nfta& a) {
  std::vector<char> prod(a.states.size(), 0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& r : a.rules) {
      if (prod[r.state]) continue;
      StrNfa e = r.horizontal.restricted([&](uint32_t s) { return prod[s] != 0; });
      if (!e.is_empty_lang()) {
        prod[r.state] = 1;
        changed = true;
      }
    }
  }
  return prod;
}

}  // namespace

Nfta trim(const Nfta& a) {
  auto prod = productive_states(a);
  if (!prod[a.initial]) {
    Nfta out;
    out.states.push_back(a.states[a.initial]);
    out.alphabet = a.alphabet;
    out.initial = 0;
    return out;
  }
  // Reachability inside the productive fragment.
  std::vector<char> reach(a.states.size(), 0);
  reach[a.initial] = 1;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& r : a.rules) {
      if (!reach[r.state]) continue;
      StrNfa e = r.horizontal.restricted([&](uint32_t s) { return prod[s] != 0; });
      for (uint32_t s : e.useful_symbols()) {
        if (!reach[s]) {
          reach[s] = 1;
          changed = true;
        }
      }
    }
  }
  std::vector<int> remap(a.states.size(), -1);
  Nfta out;
  out.alphabet = a.alphabet;
  for (size_t i = 0; i < a.states.size(); ++i) {
    if (reach[i] && prod[i]) {
      remap[i] = static_cast<int>(out.states.size());
      out.states.push_back(a.states[i]);
    }
  }
  out.initial = remap[a.initial];
  for (const auto& r : a.rules) {
    if (remap[r.state] < 0) continue;
    StrNfa e = r.horizontal.restricted(
        [&](uint32_t s) { return reach[s] && prod[s]; });
    if (e.is_empty_lang()) continue;
    e = e.remap_syms([&](uint32_t s) { return static_cast<uint32_t>(remap[s]); });
    out.rules.push_back({remap[r.state], r.label, r.horizontal_src, std::move(e)});
  }
  return out;
}

bool is_empty(const Nfta& a) { return !productive_states(a)[a.initial]; }

bool is_infinite_lang(const Nfta& a) {
  Nfta t = trim(a);
  if (t.rules.empty()) return false;
  // Unbounded width: an infinite horizontal language on a kept rule.
  for (const auto& r : t.rules)
    if (r.horizontal.infinite_lang()) return true;
  // Unbounded height: cycle in the vertical dependency graph. Every kept
  // state is reachable and productive, so any cycle counts.
  size_t n = t.states.size();
  std::vector<std::vector<char>> edge(n, std::vector<char>(n, 0));
  for (const auto& r : t.rules)
    for (uint32_t s : r.horizontal.useful_symbols()) edge[r.state][s] = 1;
  // Transitive closure, then look for q -> ... -> q.
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < n; ++i)
      if (edge[i][k])
        for (size_t j = 0; j < n; ++j)
          if (edge[k][j]) edge[i][j] = 1;
  for (size_t i = 0; i < n; ++i)
    if (edge[i][i]) return true;
  return false;
}

Nfta product(const Nfta& a, const Nfta& b) {
  Nfta out;
  std::set_intersection(a.alphabet.begin(), a.alphabet.end(), b.alphabet.begin(),
                        b.alphabet.end(), std::inserter(out.alphabet, out.alphabet.begin()));
  const int nb = static_cast<int>(b.states.size());
  auto pair_id = [nb](uint32_t x, uint32_t y) { return x * nb + y; };
  for (const auto& sa : a.states)
    for (const auto& sb : b.states) out.states.push_back(sa + "," + sb);
  ensure_unique_names(out.states);
  out.initial = pair_id(a.initial, b.initial);
  for (const auto& ra : a.rules) {
    if (!out.alphabet.count(ra.label)) continue;
    for (const auto& rb : b.rules) {
      if (rb.label != ra.label) continue;
      StrNfa e = StrNfa::product(ra.horizontal, rb.horizontal,
                                 [&](uint32_t x, uint32_t y) -> std::optional<uint32_t> {
                                   return pair_id(x, y);
                                 });
      out.rules.push_back({static_cast<int>(pair_id(ra.state, rb.state)), ra.label, "",
                           std::move(e)});
    }
  }
  return out;
}

std::set<std::pair<std::string, std::string>> reachable_pairs(const Nfta& a) {
  Nfta t = trim(a);
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& r : t.rules) out.insert({t.states[r.state], r.label});
  return out;
}

Nfta nfta_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw input_error("automaton syntax error at byte " + std::to_string(e.byte) + ": " +
                      e.what());
  }
  Nfta a;
  for (const auto& s : j.at("states")) a.states.push_back(s.get<std::string>());
  for (const auto& s : j.at("alphabet")) a.alphabet.insert(s.get<std::string>());
  a.initial = a.state_id(j.at("initial").get<std::string>());
  if (a.initial < 0) throw input_error("initial state not declared");
  for (const auto& r : j.at("rules"))
    a.add_rule(r.at("state").get<std::string>(), r.at("label").get<std::string>(),
               r.at("horizontal").get<std::string>());
  a.validate();
  return a;
}

std::string nfta_to_json_text(const Nfta& a) {
  json j;
  j["states"] = a.states;
  j["alphabet"] = std::vector<std::string>(a.alphabet.begin(), a.alphabet.end());
  j["initial"] = a.states[a.initial];
  j["rules"] = json::array();
  for (const auto& r : a.rules) {
    std::string rx;
    if (!r.horizontal_src.empty()) {
      rx = r.horizontal_src;
    } else {
      auto synth = r.horizontal.to_regex(
          [&](uint32_t s) { return a.states[s]; });
      if (!synth) continue;  // empty horizontal language: the rule is inert
      rx = *synth;
    }
    json rj;
    rj["state"] = a.states[r.state];
    rj["label"] = r.label;
    rj["horizontal"] = rx;
    j["rules"].push_back(rj);
  }
  return j.dump();
}

void ensure_unique_names(std::vector<std::string>& names) {
  std::map<std::string, int> seen;
  for (auto& n : names) {
    auto [it, fresh] = seen.try_emplace(n, 1);
    if (!fresh) {
      int k = ++it->second;
      std::string cand = n + "~" + std::to_string(k);
      while (seen.count(cand)) cand = n + "~" + std::to_string(++k);
      seen[cand] = 1;
      n = cand;
    }
  }
}

}  // namespace treesec
