#include "expression.hpp"

#include <cctype>
#include <limits>

#include "commcalc/errors.hpp"

namespace commcalc::detail {
namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ExprPtr parseAll() {
    auto e = parseWordExpr();
    skipSpace();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skipSpace() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skipSpace();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  ExprPtr parseWordExpr() {
    auto first = parseFactor();
    std::vector<ExprPtr> factors{first};
    while (accept('*')) factors.push_back(parseFactor());
    if (factors.size() == 1) return first;
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Product;
    e->position = first->position;
    e->children = std::move(factors);
    return e;
  }

  ExprPtr parseFactor() {
    auto base = parseAtom();
    if (!accept('^')) return base;
    skipSpace();
    auto e = std::make_shared<Expr>();
    e->position = pos_;
    if (accept('(')) {
      e->kind = Expr::Kind::Conjugate;
      auto conj = parseWordExpr();
      expect(')');
      e->children = {base, conj};
      return e;
    }
    if (pos_ < text_.size() &&
        (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' || text_[pos_] == '[')) {
      e->kind = Expr::Kind::Conjugate;
      e->children = {base, parseAtom()};
      return e;
    }
    e->kind = Expr::Kind::Power;
    e->exponent = parseInteger();
    e->children = {base};
    return e;
  }

  long parseInteger() {
    skipSpace();
    bool negative = false;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      negative = text_[pos_] == '-';
      ++pos_;
    }
    skipSpace();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail("expected integer");
    long value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      int digit = text_[pos_] - '0';
      if (value > (std::numeric_limits<long>::max() - digit) / 10) fail("integer too large");
      value = value * 10 + digit;
      ++pos_;
    }
    return negative ? -value : value;
  }

  ExprPtr parseAtom() {
    skipSpace();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    auto e = std::make_shared<Expr>();
    e->position = pos_;
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      auto inner = parseWordExpr();
      expect(')');
      return inner;
    }
    if (c == '[') {
      ++pos_;
      e->kind = Expr::Kind::Bracket;
      e->children.push_back(parseWordExpr());
      while (accept(',')) e->children.push_back(parseWordExpr());
      expect(']');
      return e;
    }
    if (c == '1') {
      ++pos_;
      e->kind = Expr::Kind::Identity;
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      e->kind = Expr::Kind::Identifier;
      e->name = std::string(text_.substr(start, pos_ - start));
      return e;
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

ExprPtr parseExpression(std::string_view text) { return Parser(text).parseAll(); }

Word evaluate(const Expr& e, int rank,
              const std::function<Word(const std::string&, std::size_t)>& resolve) {
  switch (e.kind) {
    case Expr::Kind::Identifier:
      return resolve(e.name, e.position);
    case Expr::Kind::Identity:
      return Word::identity(rank);
    case Expr::Kind::Product: {
      Word result = Word::identity(rank);
      for (const auto& child : e.children) result = multiply(result, evaluate(*child, rank, resolve));
      return result;
    }
    case Expr::Kind::Power:
      return power(evaluate(*e.children[0], rank, resolve), e.exponent);
    case Expr::Kind::Conjugate:
      return conjugate(evaluate(*e.children[0], rank, resolve),
                       evaluate(*e.children[1], rank, resolve));
    case Expr::Kind::Bracket: {
      std::vector<Word> entries;
      entries.reserve(e.children.size());
      for (const auto& child : e.children) entries.push_back(evaluate(*child, rank, resolve));
      return leftNormed(entries);
    }
  }
  throw InternalError("unknown expression kind");
}

}  // namespace commcalc::detail
