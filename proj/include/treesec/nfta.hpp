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

#ifndef TREESEC_NFTA_HPP
#define TREESEC_NFTA_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "treesec/strautomaton.hpp"
#include "treesec/tree.hpp"

namespace treesec {

/// Tree automaton over unranked trees. Each rule (q, a, e) carries a regular
/// horizontal language e over the state set; the horizontal NFA's symbols
/// are the state indices of this automaton. Several rules may share (q, a).
struct Nfta {
  struct Rule {
    int state;
    std::string label;
    std::string horizontal_src;  // regex text; empty when machine-built
    StrNfa horizontal;
  };

  std::vector<std::string> states;
  std::set<std::string> alphabet;
  int initial = 0;
  std::vector<Rule> rules;

  int state_id(const std::string& name) const;
  const std::string& state_name(int id) const { return states[id]; }
  int add_state(const std::string& name);
  void add_rule(const std::string& state, const std::string& label, const std::string& regex);
  void add_rule_nfa(int state, const std::string& label, StrNfa nfa);

  void validate() const;
};

/// Witnessing run: tree address -> state id of the automaton it was found in.
struct Run {
  std::map<std::vector<size_t>, int> states;
};

/// States q such that the whole tree is accepted when read from q, computed
/// by the bottom-up candidate-set pass.
std::vector<int> root_state_set(const Nfta& a, const DataTree& t);

bool accepts(const Nfta& a, const DataTree& t);

/// Witness run, or nullopt. Tie-break: lexicographically least child-state
/// word under the state-name order, rule order as declared.
std::optional<Run> find_run(const Nfta& a, const DataTree& t);

/// Independent check of the two run conditions, node by node.
bool check_run(const Nfta& a, const DataTree& t, const Run& run);

/// Restriction to reachable and productive states; preserves the language.
Nfta trim(const Nfta& a);

bool is_empty(const Nfta& a);

/// True iff TL(a) is infinite: a vertical cycle among trimmed states, or a
/// trimmed rule whose horizontal language is infinite (unbounded width).
bool is_infinite_lang(const Nfta& a);

/// Language intersection via the pair construction; alphabet intersection.
Nfta product(const Nfta& a, const Nfta& b);

/// Pairs (state, label) realized at some node of some accepted tree.
std::set<std::pair<std::string, std::string>> reachable_pairs(const Nfta& a);

Nfta nfta_from_json_text(const std::string& text);
std::string nfta_to_json_text(const Nfta& a);

/// Makes duplicate names unique by appending ~2, ~3, ...; used by
/// constructions that synthesize state names.
void ensure_unique_names(std::vector<std::string>& names);

}  // namespace treesec

#endif  // TREESEC_NFTA_HPP
