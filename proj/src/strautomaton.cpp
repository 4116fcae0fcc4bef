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

#include "treesec/strautomaton.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "treesec/value.hpp"

namespace treesec {

void StrNfa::set_accepting(int s, bool on) {
  if (static_cast<int>(accepting_.size()) <= s) accepting_.resize(s + 1, 0);
  accepting_[s] = on ? 1 : 0;
}

StrNfa StrNfa::epsilon() {
  StrNfa a;
  int s = a.add_state();
  a.set_initial(s);
  a.set_accepting(s);
  return a;
}

StrNfa StrNfa::empty() {
  StrNfa a;
  int s = a.add_state();
  a.set_initial(s);
  return a;
}

namespace {

struct Adj {
  std::vector<std::vector<std::pair<uint32_t, int>>> out;
  std::vector<std::vector<int>> eps_out;
  std::vector<std::vector<int>> eps_in;

  explicit Adj(const StrNfa& a) {
    out.resize(a.num_states());
    eps_out.resize(a.num_states());
    eps_in.resize(a.num_states());
    for (const auto& e : a.edges()) {
      if (e.sym == StrNfa::kEpsilon) {
        eps_out[e.from].push_back(e.to);
        eps_in[e.to].push_back(e.from);
      } else {
        out[e.from].push_back({e.sym, e.to});
      }
    }
  }
};

void close_over(std::vector<char>& in, const std::vector<std::vector<int>>& next) {
  std::vector<int> work;
  for (size_t i = 0; i < in.size(); ++i)
    if (in[i]) work.push_back(static_cast<int>(i));
  while (!work.empty()) {
    int s = work.back();
    work.pop_back();
    for (int t : next[s]) {
      if (!in[t]) {
        in[t] = 1;
        work.push_back(t);
      }
    }
  }
}

std::vector<int> to_sorted_list(const std::vector<char>& mask) {
  std::vector<int> v;
  for (size_t i = 0; i < mask.size(); ++i)
    if (mask[i]) v.push_back(static_cast<int>(i));
  return v;
}

}  // namespace

std::vector<int> StrNfa::eps_closure(std::vector<int> states) const {
  Adj adj(*this);
  std::vector<char> mask(num_states_, 0);
  for (int s : states) mask[s] = 1;
  close_over(mask, adj.eps_out);
  return to_sorted_list(mask);
}

std::vector<int> StrNfa::step(const std::vector<int>& states, uint32_t sym) const {
  return step_any(states, {sym});
}

std::vector<int> StrNfa::step_any(const std::vector<int>& states,
                                  const std::vector<uint32_t>& syms) const {
  Adj adj(*this);
  std::vector<char> mask(num_states_, 0);
  for (int s : states)
    for (const auto& [sym, to] : adj.out[s])
      if (std::find(syms.begin(), syms.end(), sym) != syms.end()) mask[to] = 1;
  close_over(mask, adj.eps_out);
  return to_sorted_list(mask);
}

bool StrNfa::accepts(const std::vector<uint32_t>& word) const {
  std::vector<int> cur = eps_closure({initial_});
  for (uint32_t sym : word) {
    cur = step(cur, sym);
    if (cur.empty()) return false;
  }
  return std::any_of(cur.begin(), cur.end(), [&](int s) { return accepting(s); });
}

bool StrNfa::accepts_setword(const std::vector<std::vector<uint32_t>>& sets) const {
  std::vector<int> cur = eps_closure({initial_});
  for (const auto& set : sets) {
    cur = step_any(cur, set);
    if (cur.empty()) return false;
  }
  return std::any_of(cur.begin(), cur.end(), [&](int s) { return accepting(s); });
}

std::optional<std::vector<uint32_t>> StrNfa::least_setword(
    const std::vector<std::vector<uint32_t>>& sets,
    const std::function<bool(uint32_t, uint32_t)>& sym_less) const {
  const size_t n = sets.size();
  Adj adj(*this);

  // feasible[i]: states that can consume sets[i..) and accept.
  std::vector<std::vector<char>> feasible(n + 1, std::vector<char>(num_states_, 0));
  for (int s = 0; s < num_states_; ++s)
    if (accepting(s)) feasible[n][s] = 1;
  close_over(feasible[n], adj.eps_in);
  for (size_t i = n; i-- > 0;) {
    for (const auto& e : edges_) {
      if (e.sym == kEpsilon) continue;
      if (feasible[i + 1][e.to] &&
          std::find(sets[i].begin(), sets[i].end(), e.sym) != sets[i].end())
        feasible[i][e.from] = 1;
    }
    close_over(feasible[i], adj.eps_in);
  }

  std::vector<int> cur = eps_closure({initial_});
  if (std::none_of(cur.begin(), cur.end(), [&](int s) { return feasible[0][s]; }))
    return std::nullopt;

  std::vector<uint32_t> word;
  for (size_t i = 0; i < n; ++i) {
    std::vector<uint32_t> cand = sets[i];
    std::sort(cand.begin(), cand.end(), sym_less);
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    bool advanced = false;
    for (uint32_t sym : cand) {
      std::vector<int> next = step(cur, sym);
      if (std::any_of(next.begin(), next.end(), [&](int s) { return feasible[i + 1][s]; })) {
        word.push_back(sym);
        cur = std::move(next);
        advanced = true;
        break;
      }
    }
    if (!advanced) return std::nullopt;  // unreachable when feasibility held
  }
  return word;
}

StrNfa StrNfa::restricted(const std::function<bool(uint32_t)>& keep) const {
  StrNfa out;
  out.num_states_ = num_states_;
  out.initial_ = initial_;
  out.accepting_ = accepting_;
  for (const auto& e : edges_)
    if (e.sym == kEpsilon || keep(e.sym)) out.edges_.push_back(e);
  return out;
}

StrNfa StrNfa::remap_syms(const std::function<uint32_t(uint32_t)>& fn) const {
  StrNfa out;
  out.num_states_ = num_states_;
  out.initial_ = initial_;
  out.accepting_ = accepting_;
  for (const auto& e : edges_)
    out.edges_.push_back({e.from, e.sym == kEpsilon ? kEpsilon : fn(e.sym), e.to});
  return out;
}

std::vector<char> StrNfa::reachable_forward() const {
  std::vector<std::vector<int>> next(num_states_);
  for (const auto& e : edges_) next[e.from].push_back(e.to);
  std::vector<char> mask(num_states_, 0);
  if (initial_ < num_states_) mask[initial_] = 1;
  close_over(mask, next);
  return mask;
}

std::vector<char> StrNfa::reachable_backward() const {
  std::vector<std::vector<int>> prev(num_states_);
  for (const auto& e : edges_) prev[e.to].push_back(e.from);
  std::vector<char> mask(num_states_, 0);
  for (int s = 0; s < num_states_; ++s)
    if (accepting(s)) mask[s] = 1;
  close_over(mask, prev);
  return mask;
}

bool StrNfa::is_empty_lang() const {
  auto fwd = reachable_forward();
  for (int s = 0; s < num_states_; ++s)
    if (fwd[s] && accepting(s)) return false;
  return true;
}

std::vector<uint32_t> StrNfa::useful_symbols() const {
  auto fwd = reachable_forward();
  auto bwd = reachable_backward();
  std::set<uint32_t> syms;
  for (const auto& e : edges_)
    if (e.sym != kEpsilon && fwd[e.from] && bwd[e.to]) syms.insert(e.sym);
  return {syms.begin(), syms.end()};
}

bool StrNfa::infinite_lang() const {
  auto fwd = reachable_forward();
  auto bwd = reachable_backward();
  std::vector<char> useful(num_states_, 0);
  for (int s = 0; s < num_states_; ++s) useful[s] = fwd[s] && bwd[s];
  std::vector<std::vector<int>> next(num_states_);
  for (const auto& e : edges_)
    if (useful[e.from] && useful[e.to]) next[e.from].push_back(e.to);
  // A symbol edge inside the useful subgraph that closes a cycle pumps the
  // word length.
  for (const auto& e : edges_) {
    if (e.sym == kEpsilon || !useful[e.from] || !useful[e.to]) continue;
    std::vector<char> mask(num_states_, 0);
    mask[e.to] = 1;
    close_over(mask, next);
    if (mask[e.from]) return true;
  }
  return false;
}

StrNfa StrNfa::product(const StrNfa& a, const StrNfa& b,
                       const std::function<std::optional<uint32_t>(uint32_t, uint32_t)>& pair_sym) {
  StrNfa out;
  std::map<std::pair<int, int>, int> index;
  std::vector<std::pair<int, int>> order;
  auto state_of = [&](int sa, int sb) {
    auto it = index.find({sa, sb});
    if (it != index.end()) return it->second;
    int s = out.add_state();
    index[{sa, sb}] = s;
    order.push_back({sa, sb});
    out.set_accepting(s, a.accepting(sa) && b.accepting(sb));
    return s;
  };
  Adj adj_a(a), adj_b(b);
  int init = state_of(a.initial(), b.initial());
  out.set_initial(init);
  for (size_t i = 0; i < order.size(); ++i) {
    auto [sa, sb] = order[i];
    int from = index[{sa, sb}];
    for (int ta : adj_a.eps_out[sa]) out.add_edge(from, kEpsilon, state_of(ta, sb));
    for (int tb : adj_b.eps_out[sb]) out.add_edge(from, kEpsilon, state_of(sa, tb));
    for (const auto& [xa, ta] : adj_a.out[sa])
      for (const auto& [xb, tb] : adj_b.out[sb])
        if (auto sym = pair_sym(xa, xb)) out.add_edge(from, *sym, state_of(ta, tb));
  }
  return out;
}

namespace {

// Regex assembly for state elimination. prec: 0 union, 1 concat, 2 atom.
struct Rx {
  std::string text;
  int prec;
};
using OptRx = std::optional<Rx>;

std::string wrap(const Rx& r, int min_prec) {
  return r.prec >= min_prec ? r.text : "(" + r.text + ")";
}

OptRx rx_union(const OptRx& a, const OptRx& b) {
  if (!a) return b;
  if (!b) return a;
  if (a->text == b->text) return a;
  return Rx{a->text + " | " + b->text, 0};
}

OptRx rx_concat(const OptRx& a, const OptRx& b) {
  if (!a || !b) return std::nullopt;
  if (a->text == "eps") return b;
  if (b->text == "eps") return a;
  return Rx{wrap(*a, 1) + " " + wrap(*b, 1), 1};
}

OptRx rx_star(const OptRx& a) {
  if (!a || a->text == "eps") return Rx{"eps", 2};
  return Rx{wrap(*a, 2) + "*", 2};
}

}  // namespace

std::optional<std::string> StrNfa::to_regex(
    const std::function<std::string(uint32_t)>& sym_name) const {
  const int n = num_states_;
  const int start = n, end = n + 1;
  std::map<std::pair<int, int>, OptRx> m;
  auto put = [&](int i, int j, const OptRx& r) {
    auto& cell = m[{i, j}];
    cell = rx_union(cell, r);
  };
  put(start, initial_, Rx{"eps", 2});
  for (int s = 0; s < n; ++s)
    if (accepting(s)) put(s, end, Rx{"eps", 2});
  for (const auto& e : edges_) {
    if (e.sym == kEpsilon)
      put(e.from, e.to, Rx{"eps", 2});
    else
      put(e.from, e.to, Rx{sym_name(e.sym), 2});
  }
  for (int k = 0; k < n; ++k) {
    OptRx loop = m.count({k, k}) ? m[{k, k}] : std::nullopt;
    OptRx loop_star = loop ? rx_star(loop) : OptRx{Rx{"eps", 2}};
    std::vector<std::pair<int, OptRx>> in, out;
    for (auto& [key, r] : m) {
      if (!r) continue;
      if (key.second == k && key.first != k) in.push_back({key.first, r});
      if (key.first == k && key.second != k) out.push_back({key.second, r});
    }
    for (auto& [i, ri] : in)
      for (auto& [j, rj] : out) put(i, j, rx_concat(rx_concat(ri, loop_star), rj));
    std::erase_if(m, [&](const auto& kv) { return kv.first.first == k || kv.first.second == k; });
  }
  auto it = m.find({start, end});
  if (it == m.end() || !it->second) return std::nullopt;
  return it->second->text;
}

namespace {

struct RegexParser {
  const std::string& text;
  size_t pos = 0;
  const std::function<uint32_t(const std::string&)>& intern;
  StrNfa& nfa;

  void skip_ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }
  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  // Fragments are (start, end) state pairs inside `nfa`.
  using Frag = std::pair<int, int>;

  Frag make_eps() {
    int s = nfa.add_state(), e = nfa.add_state();
    nfa.add_edge(s, StrNfa::kEpsilon, e);
    return {s, e};
  }

  Frag parse_alt() {
    Frag f = parse_cat();
    while (peek() == '|') {
      ++pos;
      Frag g = parse_cat();
      int s = nfa.add_state(), e = nfa.add_state();
      nfa.add_edge(s, StrNfa::kEpsilon, f.first);
      nfa.add_edge(s, StrNfa::kEpsilon, g.first);
      nfa.add_edge(f.second, StrNfa::kEpsilon, e);
      nfa.add_edge(g.second, StrNfa::kEpsilon, e);
      f = {s, e};
    }
    return f;
  }

  Frag parse_cat() {
    std::optional<Frag> acc;
    while (true) {
      char c = peek();
      if (c == '\0' || c == ')' || c == '|') break;
      Frag g = parse_rep();
      if (!acc) {
        acc = g;
      } else {
        nfa.add_edge(acc->second, StrNfa::kEpsilon, g.first);
        acc = Frag{acc->first, g.second};
      }
    }
    return acc ? *acc : make_eps();
  }

  Frag parse_rep() {
    Frag f = parse_atom();
    while (true) {
      char c = peek();
      if (c == '*' || c == '+' || c == '?') {
        ++pos;
        int s = nfa.add_state(), e = nfa.add_state();
        nfa.add_edge(s, StrNfa::kEpsilon, f.first);
        nfa.add_edge(f.second, StrNfa::kEpsilon, e);
        if (c == '*' || c == '?') nfa.add_edge(s, StrNfa::kEpsilon, e);
        if (c == '*' || c == '+') nfa.add_edge(f.second, StrNfa::kEpsilon, f.first);
        f = {s, e};
      } else {
        break;
      }
    }
    return f;
  }

  Frag parse_atom() {
    char c = peek();
    if (c == '(') {
      ++pos;
      Frag f = parse_alt();
      if (peek() != ')') throw input_error("horizontal regex: missing ')' at offset " +
                                           std::to_string(pos) + " in \"" + text + "\"");
      ++pos;
      return f;
    }
    if (c == '\0' || c == ')' || c == '|' || c == '*' || c == '+' || c == '?')
      throw input_error("horizontal regex: unexpected '" + std::string(1, c) + "' at offset " +
                        std::to_string(pos) + " in \"" + text + "\"");
    size_t begin = pos;
    while (pos < text.size() && std::string("()*+?| \t").find(text[pos]) == std::string::npos)
      ++pos;
    std::string name = text.substr(begin, pos - begin);
    if (name == "eps") return make_eps();
    int s = nfa.add_state(), e = nfa.add_state();
    nfa.add_edge(s, intern(name), e);
    return {s, e};
  }
};

}  // namespace

StrNfa parse_horizontal_regex(const std::string& text,
                              const std::function<uint32_t(const std::string&)>& intern) {
  StrNfa nfa;
  RegexParser p{text, 0, intern, nfa};
  if (p.at_end()) {
    // Empty text denotes the empty word, same as "eps".
    return StrNfa::epsilon();
  }
  auto [s, e] = p.parse_alt();
  if (!p.at_end())
    throw input_error("horizontal regex: trailing input at offset " + std::to_string(p.pos) +
                      " in \"" + text + "\"");
  nfa.set_initial(s);
  nfa.set_accepting(e);
  return nfa;
}

}  // namespace treesec
