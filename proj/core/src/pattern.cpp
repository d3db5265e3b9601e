#include "commcalc/pattern.hpp"

#include <algorithm>

#include "commcalc/errors.hpp"
#include "expression.hpp"

namespace commcalc {

struct WordPattern::Node {
  detail::ExprPtr expr;
};

namespace {

void collectVariables(const detail::Expr& e, std::vector<std::string>& out) {
  if (e.kind == detail::Expr::Kind::Identifier &&
      std::find(out.begin(), out.end(), e.name) == out.end())
    out.push_back(e.name);
  for (const auto& child : e.children) collectVariables(*child, out);
}

}  // namespace

WordPattern WordPattern::parse(std::string_view text) {
  WordPattern p;
  auto node = std::make_shared<Node>();
  node->expr = detail::parseExpression(text);
  p.root_ = node;
  p.text_ = std::string(text);
  return p;
}

std::vector<std::string> WordPattern::variables() const {
  std::vector<std::string> out;
  collectVariables(*root_->expr, out);
  return out;
}

Word WordPattern::substitute(const Bindings& bindings) const {
  int rank = 0;
  for (const auto& [name, w] : bindings) {
    if (rank == 0) rank = w.rank();
    else if (w.rank() != rank) throw RankError("bindings of different rank");
  }
  auto resolve = [&bindings](const std::string& name, std::size_t position) -> Word {
    auto it = bindings.find(name);
    if (it == bindings.end()) throw DomainError("unbound variable '" + name + "' at position " + std::to_string(position));
    return it->second;
  };
  return detail::evaluate(*root_->expr, rank, resolve);
}

}  // namespace commcalc
