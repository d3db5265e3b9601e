#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "commcalc/words.hpp"

namespace commcalc::detail {

struct Expr {
  enum class Kind { Identifier, Identity, Product, Power, Conjugate, Bracket };
  Kind kind = Kind::Identity;
  std::string name;
  std::size_t position = 0;
  long exponent = 0;
  std::vector<std::shared_ptr<const Expr>> children;
};

using ExprPtr = std::shared_ptr<const Expr>;

ExprPtr parseExpression(std::string_view text);

/// Evaluates with group semantics; `resolve` maps identifiers to words.
Word evaluate(const Expr& e, int rank,
              const std::function<Word(const std::string&, std::size_t)>& resolve);

}  // namespace commcalc::detail
