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

#ifndef TREESEC_STRAUTOMATON_HPP
#define TREESEC_STRAUTOMATON_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace treesec {

/// Finite automaton over an externally-interned symbol alphabet. Symbols are
/// plain ids; whoever builds the automaton owns their meaning (NFTA states,
/// annotated product states, ...). Epsilon moves are allowed.
class StrNfa {
 public:
  static constexpr uint32_t kEpsilon = UINT32_MAX;

  struct Edge {
    int from;
    uint32_t sym;
    int to;
  };

  int add_state() { return num_states_++; }
  void set_initial(int s) { initial_ = s; }
  void set_accepting(int s, bool on = true);
  void add_edge(int from, uint32_t sym, int to) { edges_.push_back({from, sym, to}); }

  int num_states() const { return num_states_; }
  int initial() const { return initial_; }
  bool accepting(int s) const { return s < static_cast<int>(accepting_.size()) && accepting_[s]; }
  const std::vector<Edge>& edges() const { return edges_; }

  /// Single NFA accepting exactly {eps}.
  static StrNfa epsilon();
  /// NFA with empty language.
  static StrNfa empty();

  bool accepts(const std::vector<uint32_t>& word) const;

  /// True iff some word w with w[i] drawn from sets[i] is accepted.
  bool accepts_setword(const std::vector<std::vector<uint32_t>>& sets) const;

  /// Least such word under sym_less, or nullopt. Deterministic.
  std::optional<std::vector<uint32_t>> least_setword(
      const std::vector<std::vector<uint32_t>>& sets,
      const std::function<bool(uint32_t, uint32_t)>& sym_less) const;

  /// Copy with only the edges whose symbol passes `keep`.
  StrNfa restricted(const std::function<bool(uint32_t)>& keep) const;

  /// Copy with every symbol edge relabeled through `fn`.
  StrNfa remap_syms(const std::function<uint32_t(uint32_t)>& fn) const;

  bool is_empty_lang() const;

  /// Symbols occurring on some accepting path (useful edges only).
  std::vector<uint32_t> useful_symbols() const;

  /// True iff the language is infinite: a cycle with at least one symbol
  /// edge lies on some accepting path.
  bool infinite_lang() const;

  /// Pairwise product. `pair_sym(x,y)` returns the product symbol for a
  /// joint step, or nullopt when the two symbols cannot be paired.
  static StrNfa product(const StrNfa& a, const StrNfa& b,
                        const std::function<std::optional<uint32_t>(uint32_t, uint32_t)>& pair_sym);

  /// Regular expression denoting the same language, in the horizontal
  /// grammar (juxtaposition, "|", "*", "+", "?", parens, "eps"). Returns
  /// nullopt for the empty language.
  std::optional<std::string> to_regex(
      const std::function<std::string(uint32_t)>& sym_name) const;

  std::vector<int> eps_closure(std::vector<int> states) const;
  std::vector<int> step(const std::vector<int>& states, uint32_t sym) const;
  std::vector<int> step_any(const std::vector<int>& states,
                            const std::vector<uint32_t>& syms) const;

 private:
  std::vector<char> reachable_forward() const;
  std::vector<char> reachable_backward() const;

  int num_states_ = 0;
  int initial_ = 0;
  std::vector<char> accepting_;
  std::vector<Edge> edges_;
};

/// Parses the horizontal regular-expression grammar. Atoms are symbol names
/// resolved through `intern` (which may throw for undeclared names).
StrNfa parse_horizontal_regex(const std::string& text,
                              const std::function<uint32_t(const std::string&)>& intern);

}  // namespace treesec

#endif  // TREESEC_STRAUTOMATON_HPP
