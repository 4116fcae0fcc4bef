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

#ifndef TREESEC_TREE_HPP
#define TREESEC_TREE_HPP

#include <functional>
#include <string>
#include <vector>

#include "treesec/value.hpp"

namespace treesec {

// Labels are plain strings; "#" and "$" are the splice/prune markers used by
// the deleting transducer. Automata and transducers each carry their own
// finite alphabet, so trees may freely mix labels.
inline constexpr const char* kHashLabel = "#";
inline constexpr const char* kDollarLabel = "$";

bool is_valid_label(const std::string& name);
void check_label(const std::string& name);

/// Ordered unranked tree; every node holds one label and one value.
struct DataTree {
  std::string label;
  DataValue value;
  std::vector<DataTree> children;

  bool operator==(const DataTree&) const = default;

  size_t node_count() const;
  /// Visits nodes in document order; the address is the child-index path
  /// from the root (0-based internally).
  void visit(const std::function<void(const std::vector<size_t>&, const DataTree&)>& fn) const;
};

inline DataTree node(std::string label, DataValue value, std::vector<DataTree> children = {}) {
  return DataTree{std::move(label), value, std::move(children)};
}

/// Parses the JSON tree format; accepts the optional {"domain","tree"}
/// wrapper, which overrides `domain`.
DataTree parse_tree(const std::string& text, DataDomain domain = DataDomain::integers);
std::string serialize_tree(const DataTree& t);

/// Total order used for canonical enumeration: node count, then label,
/// value, children lexicographically.
bool tree_less(const DataTree& a, const DataTree& b);

std::string tree_brief(const DataTree& t);  // compact one-line form for messages

}  // namespace treesec

#endif  // TREESEC_TREE_HPP
