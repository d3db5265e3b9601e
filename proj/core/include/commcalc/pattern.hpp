#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "commcalc/words.hpp"

namespace commcalc {

/// Expression tree over the word grammar in which identifiers are named
/// variables rather than generators.
class WordPattern {
 public:
  struct Node;
  using Bindings = std::map<std::string, Word>;

  static WordPattern parse(std::string_view text);

  /// Evaluates the tree; every variable must be bound.
  Word substitute(const Bindings& bindings) const;
  /// Variable names in order of first appearance.
  std::vector<std::string> variables() const;
  const std::string& text() const noexcept { return text_; }

 private:
  std::shared_ptr<const Node> root_;
  std::string text_;
};

}  // namespace commcalc
