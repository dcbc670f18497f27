// Copyright 2026 The metric-audit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef METRIC_AUDIT_PARSE_TREE_H_
#define METRIC_AUDIT_PARSE_TREE_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace metric_audit {

// Constituency tree node. A node either has children or carries a leaf
// token, never both.
struct ParseTree {
  std::string label;
  std::vector<ParseTree> children;
  std::optional<std::string> leaf;

  bool IsPreterminal() const { return leaf.has_value(); }
  std::vector<std::string> Leaves() const;
  size_t LeafCount() const;

  // Same shape with every node's children in reverse order.
  ParseTree Mirrored() const;

  std::string ToString() const;
};

// Reads a Penn-Treebank bracketed string such as
//   (S (NP (DT a) (NN dog)) (VP (VBZ runs)))
// An unlabeled outer wrapper "( (S ...) )" is accepted. Throws
// AuditError(kData) on unbalanced or otherwise malformed input.
ParseTree ParseBracketed(std::string_view text);

}  // namespace metric_audit

#endif  // METRIC_AUDIT_PARSE_TREE_H_
