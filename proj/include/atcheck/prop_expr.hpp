#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "atcheck/error.hpp"

namespace atc {

/// Boolean combination of `variable == value` equalities.
class PropExpr {
 public:
  enum class Kind { VarEq, Not, And, Or, True, False };

  static PropExpr var_eq(std::string var, std::string value) {
    PropExpr e(Kind::VarEq);
    e.var_ = std::move(var);
    e.value_ = std::move(value);
    return e;
  }
  static PropExpr negation(PropExpr inner) {
    PropExpr e(Kind::Not);
    e.kids_.push_back(std::make_shared<const PropExpr>(std::move(inner)));
    return e;
  }
  static PropExpr conj(PropExpr l, PropExpr r) { return binary(Kind::And, std::move(l), std::move(r)); }
  static PropExpr disj(PropExpr l, PropExpr r) { return binary(Kind::Or, std::move(l), std::move(r)); }
  static PropExpr constant(bool b) { return PropExpr(b ? Kind::True : Kind::False); }

  Kind kind() const { return kind_; }
  const std::string& var() const { return var_; }
  const std::string& value() const { return value_; }
  const PropExpr& inner() const { return *kids_.at(0); }
  const PropExpr& left() const { return *kids_.at(0); }
  const PropExpr& right() const { return *kids_.at(1); }

  /// Unassigned variables compare unequal to every value.
  bool eval(const std::map<std::string, std::string>& assignment) const {
    switch (kind_) {
      case Kind::VarEq: {
        auto it = assignment.find(var_);
        return it != assignment.end() && it->second == value_;
      }
      case Kind::Not: return !inner().eval(assignment);
      case Kind::And: return left().eval(assignment) && right().eval(assignment);
      case Kind::Or: return left().eval(assignment) || right().eval(assignment);
      case Kind::True: return true;
      case Kind::False: return false;
    }
    return false;
  }

  /// Variables and values that the declarations do not know about.
  std::vector<std::string> unresolved(const std::map<std::string, std::vector<std::string>>& domains) const {
    std::vector<std::string> out;
    collect_unresolved(domains, out);
    return out;
  }

  /// Canonical text; parses back to an equal expression.
  std::string to_string() const {
    switch (kind_) {
      case Kind::VarEq: return var_ + " == " + value_;
      case Kind::Not: {
        auto k = inner().kind();
        bool wrap = k == Kind::And || k == Kind::Or;
        return "!" + (wrap ? "(" + inner().to_string() + ")" : inner().to_string());
      }
      case Kind::And: return wrap_if(left(), {Kind::Or}) + " && " + wrap_if(right(), {Kind::Or, Kind::And});
      case Kind::Or: return left().to_string() + " || " + wrap_if(right(), {Kind::Or});
      case Kind::True: return "true";
      case Kind::False: return "false";
    }
    return {};
  }

  friend bool operator==(const PropExpr& a, const PropExpr& b) {
    if (a.kind_ != b.kind_ || a.var_ != b.var_ || a.value_ != b.value_ || a.kids_.size() != b.kids_.size()) return false;
    for (std::size_t i = 0; i < a.kids_.size(); ++i)
      if (!(*a.kids_[i] == *b.kids_[i])) return false;
    return true;
  }

 private:
  explicit PropExpr(Kind k) : kind_(k) {}
  static std::string wrap_if(const PropExpr& e, std::initializer_list<Kind> kinds) {
    for (auto k : kinds)
      if (e.kind() == k) return "(" + e.to_string() + ")";
    return e.to_string();
  }
  static PropExpr binary(Kind k, PropExpr l, PropExpr r) {
    PropExpr e(k);
    e.kids_.push_back(std::make_shared<const PropExpr>(std::move(l)));
    e.kids_.push_back(std::make_shared<const PropExpr>(std::move(r)));
    return e;
  }
  void collect_unresolved(const std::map<std::string, std::vector<std::string>>& domains,
                          std::vector<std::string>& out) const {
    if (kind_ == Kind::VarEq) {
      auto it = domains.find(var_);
      if (it == domains.end())
        out.push_back("undeclared variable '" + var_ + "'");
      else if (std::find(it->second.begin(), it->second.end(), value_) == it->second.end())
        out.push_back("value '" + value_ + "' is not in the domain of '" + var_ + "'");
    }
    for (const auto& k : kids_) k->collect_unresolved(domains, out);
  }

  Kind kind_;
  std::string var_;
  std::string value_;
  std::vector<std::shared_ptr<const PropExpr>> kids_;
};

namespace detail {

struct PropToken {
  enum class Type { Ident, Eq, AndAnd, OrOr, Bang, LParen, RParen, End } type;
  std::string text;
  std::size_t line;
  std::size_t col;
};

inline bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
inline bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

inline std::vector<PropToken> lex_prop(const std::string& text) {
  std::vector<PropToken> out;
  std::size_t line = 1;
  std::size_t col = 1;
  std::size_t i = 0;
  auto where = [&] { return std::to_string(line) + ":" + std::to_string(col); };
  auto advance = [&](std::size_t n) {
    i += n;
    col += n;
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++i;
      ++line;
      col = 1;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    PropToken tok{PropToken::Type::End, {}, line, col};
    auto two = text.substr(i, 2);
    if (two == "==") {
      tok.type = PropToken::Type::Eq;
    } else if (two == "&&") {
      tok.type = PropToken::Type::AndAnd;
    } else if (two == "||") {
      tok.type = PropToken::Type::OrOr;
    } else if (c == '!' || c == '(' || c == ')') {
      tok.type = c == '!' ? PropToken::Type::Bang : c == '(' ? PropToken::Type::LParen : PropToken::Type::RParen;
      tok.text = std::string(1, c);
      out.push_back(tok);
      advance(1);
      continue;
    } else if (ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      tok.type = PropToken::Type::Ident;
      tok.text = text.substr(i, j - i);
      out.push_back(tok);
      advance(j - i);
      continue;
    } else {
      throw ParseError(where(), std::string("unexpected character '") + c + "'");
    }
    tok.text = two;
    out.push_back(tok);
    advance(2);
  }
  out.push_back({PropToken::Type::End, {}, line, col});
  return out;
}

class PropParser {
 public:
  explicit PropParser(const std::string& text) : toks_(lex_prop(text)) {}

  PropExpr parse() {
    auto e = disjunction();
    if (peek().type != PropToken::Type::End) fail("unexpected '" + peek().text + "'");
    return e;
  }

 private:
  const PropToken& peek() const { return toks_[pos_]; }
  const PropToken& take() { return toks_[pos_++]; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(std::to_string(peek().line) + ":" + std::to_string(peek().col), msg);
  }

  PropExpr disjunction() {
    auto e = conjunction();
    while (peek().type == PropToken::Type::OrOr) {
      take();
      e = PropExpr::disj(std::move(e), conjunction());
    }
    return e;
  }
  PropExpr conjunction() {
    auto e = term();
    while (peek().type == PropToken::Type::AndAnd) {
      take();
      e = PropExpr::conj(std::move(e), term());
    }
    return e;
  }
  PropExpr term() {
    switch (peek().type) {
      case PropToken::Type::Bang: take(); return PropExpr::negation(term());
      case PropToken::Type::LParen: {
        take();
        auto e = disjunction();
        if (peek().type != PropToken::Type::RParen) fail("expected ')'");
        take();
        return e;
      }
      case PropToken::Type::Ident: {
        auto name = take().text;
        if (peek().type != PropToken::Type::Eq) {
          if (name == "true") return PropExpr::constant(true);
          if (name == "false") return PropExpr::constant(false);
          fail("expected '==' after '" + name + "'");
        }
        take();
        if (peek().type != PropToken::Type::Ident) fail("expected a value after '=='");
        return PropExpr::var_eq(std::move(name), take().text);
      }
      case PropToken::Type::End: fail("unexpected end of expression");
      default: fail("unexpected '" + peek().text + "'");
    }
  }

  std::vector<PropToken> toks_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// expr := conj ('||' conj)*, conj := term ('&&' term)*,
/// term := '!' term | '(' expr ')' | ident '==' ident | 'true' | 'false'.
inline PropExpr parse_prop_expr(const std::string& text) { return detail::PropParser(text).parse(); }

/// True when `text` is a bare identifier other than the constants.
inline bool is_plain_name(const std::string& text) {
  if (text.empty() || !detail::ident_start(text.front())) return false;
  for (char c : text)
    if (!detail::ident_char(c)) return false;
  return text != "true" && text != "false";
}

}  // namespace atc
