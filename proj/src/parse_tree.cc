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

#include "metric_audit/parse_tree.h"

#include <algorithm>
#include <cctype>

#include "metric_audit/error.h"

namespace metric_audit {
namespace {

class BracketParser {
 public:
  explicit BracketParser(std::string_view text) : text_(text) {}

  ParseTree ParseAll() {
    SkipSpace();
    ParseTree tree = ParseNode();
    SkipSpace();
    if (pos_ != text_.size()) Fail("trailing input after tree");
    if (tree.LeafCount() == 0) Fail("tree has no leaves");
    return tree;
  }

 private:
  ParseTree ParseNode() {
    if (Peek() != '(') Fail("expected '('");
    ++pos_;
    ParseTree node;
    SkipSpace();
    node.label = ReadAtom();
    SkipSpace();
    if (Peek() == ')') Fail("empty constituent '" + node.label + "'");
    if (Peek() == '(') {
      while (Peek() == '(') {
        node.children.push_back(ParseNode());
        SkipSpace();
      }
    } else {
      node.leaf = ReadAtom();
      SkipSpace();
    }
    if (Peek() != ')') {
      if (pos_ >= text_.size()) Fail("unbalanced brackets");
      Fail("expected ')' after constituent '" + node.label + "'");
    }
    ++pos_;
    return node;
  }

  std::string ReadAtom() {
    const size_t start = pos_;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '(' || c == ')' || std::isspace(static_cast<unsigned char>(c))) {
        break;
      }
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  void SkipSpace() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  char Peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  [[noreturn]] void Fail(const std::string &message) const {
    ThrowData("bracketed parse, offset " + std::to_string(pos_) + ": " +
              message);
  }

  std::string_view text_;
  size_t pos_ = 0;
};

void CollectLeaves(const ParseTree &node, std::vector<std::string> &out) {
  if (node.leaf) {
    out.push_back(*node.leaf);
    return;
  }
  for (const ParseTree &child : node.children) CollectLeaves(child, out);
}

void Render(const ParseTree &node, std::string &out) {
  out.push_back('(');
  out += node.label;
  if (node.leaf) {
    out.push_back(' ');
    out += *node.leaf;
  }
  for (const ParseTree &child : node.children) {
    out.push_back(' ');
    Render(child, out);
  }
  out.push_back(')');
}

}  // namespace

std::vector<std::string> ParseTree::Leaves() const {
  std::vector<std::string> out;
  CollectLeaves(*this, out);
  return out;
}

size_t ParseTree::LeafCount() const {
  if (leaf) return 1;
  size_t n = 0;
  for (const ParseTree &child : children) n += child.LeafCount();
  return n;
}

ParseTree ParseTree::Mirrored() const {
  ParseTree out;
  out.label = label;
  out.leaf = leaf;
  out.children.reserve(children.size());
  for (auto it = children.rbegin(); it != children.rend(); ++it) {
    out.children.push_back(it->Mirrored());
  }
  return out;
}

std::string ParseTree::ToString() const {
  std::string out;
  Render(*this, out);
  return out;
}

ParseTree ParseBracketed(std::string_view text) {
  return BracketParser(text).ParseAll();
}

}  // namespace metric_audit
