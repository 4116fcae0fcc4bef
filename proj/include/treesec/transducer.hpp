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

#ifndef TREESEC_TRANSDUCER_HPP
#define TREESEC_TRANSDUCER_HPP

#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "treesec/tree.hpp"

namespace treesec {

/// Deterministic finite automaton over name strings; the horizontal control
/// of the unranked relabelers. Missing transitions surface as "incomplete
/// transducer" errors at application time.
struct NameDfa {
  std::vector<std::string> states;
  int initial = 0;
  std::map<std::pair<int, std::string>, int> delta;

  int state_id(const std::string& name) const;
  int step(int state, const std::string& sym) const;  // -1 when undefined
};

/// Relabels top-down: the node's output label is a function of (transducer
/// state, input label); the per-rule driver scans the child labels left to
/// right and hands each child its state.
struct TopDownRelabeler {
  struct Rule {
    std::string out_label;
    NameDfa driver;                                     // over child labels
    std::map<std::pair<int, std::string>, int> assign;  // (driver state, child label) -> t-state
  };

  std::vector<std::string> states;
  int initial = 0;
  std::map<std::pair<int, std::string>, Rule> rules;  // keyed by (t-state, input label)

  int state_id(const std::string& name) const;
};

/// Relabels bottom-up: children are processed first; the classifier scans
/// their result states, and (input label, classifier verdict) picks the
/// output label and the node's result state.
struct BottomUpRelabeler {
  struct Rhs {
    std::string out_label;
    int state;
  };

  std::vector<std::string> states;  // result states
  NameDfa classifier;               // over result-state names
  std::map<std::pair<std::string, int>, Rhs> rules;  // (input label, classifier final)

  int state_id(const std::string& name) const;
};

/// Deletes every "$"-rooted subtree and splices every "#" node.
struct Deleter {};

/// Rewrites the value of every `label` node to `value`.
struct DataRewriter {
  std::string label;
  DataValue value;
};

/// Relabels `from`-nodes holding exactly `value` to `to`.
struct DataRelabeler {
  std::string from;
  std::string to;
  DataValue value;
};

/// Relabels the `from`-nodes attaining the global min (or max) over all
/// `from`-nodes to `to`; ties all relabel, no `from`-node is identity.
struct MinMaxRelabeler {
  enum class Mode { min, max };
  Mode mode;
  std::string from;
  std::string to;
};

using Transducer = std::variant<TopDownRelabeler, BottomUpRelabeler, Deleter, DataRewriter,
                                DataRelabeler, MinMaxRelabeler>;

DataTree apply_topdown(const TopDownRelabeler& t, const DataTree& tree);
DataTree apply_bottomup(const BottomUpRelabeler& t, const DataTree& tree);
DataTree apply_deleting(const Deleter& t, const DataTree& tree);
DataTree apply_data_rewriting(const DataRewriter& t, const DataTree& tree);
DataTree apply_data_relabeling(const DataRelabeler& t, const DataTree& tree);
DataTree apply_minmax(const MinMaxRelabeler& t, const DataTree& tree);
DataTree apply_transducer(const Transducer& t, const DataTree& tree);

/// A query: transducer steps applied left to right. Any deletion must be the
/// final step; a sensitive query never relabels to "#".
struct Query {
  bool sensitive = false;
  std::vector<Transducer> steps;
};

struct QueryValidation {
  bool ok = true;
  std::vector<std::string> diagnostics;
};

QueryValidation validate_query(const Query& q);
DataTree apply_query(const Query& q, const DataTree& tree);

Query query_from_json_text(const std::string& text);
std::string query_to_json_text(const Query& q);

}  // namespace treesec

#endif  // TREESEC_TRANSDUCER_HPP
