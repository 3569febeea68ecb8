#include "fstl/parser.hpp"

#include <cctype>
#include <cstdlib>
#include <utility>
#include <vector>

namespace fstl {

namespace {

enum class Tok { Ident, True, F, G, U, Not, AndOp, OrOp, LParen, RParen, LBrack, RBrack, Comma, Number, End };

struct Token {
  Tok kind;
  std::string text;
  double number = 0.0;
  int line = 1, col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  Token next() {
    skip_ws();
    Token t;
    t.line = line_;
    t.col = col_;
    if (pos_ >= text_.size()) {
      t.kind = Tok::End;
      return t;
    }
    const char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        advance();
      t.text = text_.substr(start, pos_ - start);
      if (t.text == "true") t.kind = Tok::True;
      else if (t.text == "F") t.kind = Tok::F;
      else if (t.text == "G") t.kind = Tok::G;
      else if (t.text == "U") t.kind = Tok::U;
      else t.kind = Tok::Ident;
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      size_t start = pos_;
      while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
                                     text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E' ||
                                     ((text_[pos_] == '+' || text_[pos_] == '-') && pos_ > start &&
                                      (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E'))))
        advance();
      t.text = text_.substr(start, pos_ - start);
      char* end = nullptr;
      t.number = std::strtod(t.text.c_str(), &end);
      if (end != t.text.c_str() + t.text.size())
        throw ParseError(t.line, t.col, "malformed number '" + t.text + "'");
      t.kind = Tok::Number;
      return t;
    }
    advance();
    switch (c) {
      case '!': t.kind = Tok::Not; return t;
      case '&': t.kind = Tok::AndOp; return t;
      case '|': t.kind = Tok::OrOp; return t;
      case '(': t.kind = Tok::LParen; return t;
      case ')': t.kind = Tok::RParen; return t;
      case '[': t.kind = Tok::LBrack; return t;
      case ']': t.kind = Tok::RBrack; return t;
      case ',': t.kind = Tok::Comma; return t;
      default:
        throw ParseError(t.line, t.col, std::string("unexpected character '") + c + "'");
    }
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string& text_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

class Parser {
 public:
  Parser(const std::string& text, const PredicateTable& table) : lex_(text), table_(table) {
    cur_ = lex_.next();
  }

  FormulaPtr parse() {
    FormulaPtr f = formula();
    expect(Tok::End, "end of input");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(cur_.line, cur_.col, msg); }

  void bump() { cur_ = lex_.next(); }

  void expect(Tok k, const std::string& what) {
    if (cur_.kind != k) fail("expected " + what);
    bump();
  }

  FormulaPtr formula() {
    FormulaPtr acc = term();
    // One connective kind per parenthesis level; mixing needs explicit parens.
    if (cur_.kind != Tok::AndOp && cur_.kind != Tok::OrOp) return acc;
    const Tok op = cur_.kind;
    while (cur_.kind == Tok::AndOp || cur_.kind == Tok::OrOp) {
      if (cur_.kind != op) fail("mixing '&' and '|' requires parentheses");
      bump();
      FormulaPtr r = term();
      acc = op == Tok::AndOp ? Formula::conjunction(acc, r) : Formula::disjunction(acc, r);
    }
    return acc;
  }

  std::pair<double, double> bounds() {
    const Token open = cur_;
    expect(Tok::LBrack, "'['");
    if (cur_.kind != Tok::Number) fail("expected number");
    const double a = cur_.number;
    bump();
    expect(Tok::Comma, "','");
    if (cur_.kind != Tok::Number) fail("expected number");
    const double b = cur_.number;
    bump();
    expect(Tok::RBrack, "']'");
    if (a > b)
      throw ParseError(open.line, open.col, "reversed time bounds: a > b");
    return {a, b};
  }

  FormulaPtr atom(const Token& tok) {
    const int idx = table_.index_of(tok.text);
    if (idx < 0)
      throw ParseError(tok.line, tok.col, "unknown predicate '" + tok.text + "'");
    return Formula::atom(idx);
  }

  FormulaPtr term() {
    switch (cur_.kind) {
      case Tok::Not: {
        bump();
        return Formula::negation(term());
      }
      case Tok::F: {
        bump();
        auto [a, b] = bounds();
        return Formula::eventually(a, b, formula());
      }
      case Tok::G: {
        bump();
        auto [a, b] = bounds();
        return Formula::always(a, b, formula());
      }
      case Tok::LParen: {
        bump();
        FormulaPtr f = formula();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::True: {
        const Token tok = cur_;
        bump();
        return maybe_until(Formula::truth(), tok);
      }
      case Tok::Ident: {
        const Token tok = cur_;
        bump();
        return maybe_until(atom(tok), tok);
      }
      case Tok::U:
        fail("'U' needs an atom on its left");
      default:
        fail("expected a formula");
    }
  }

  FormulaPtr maybe_until(FormulaPtr left, const Token&) {
    if (cur_.kind != Tok::U) return left;
    bump();
    auto [a, b] = bounds();
    FormulaPtr right;
    if (cur_.kind == Tok::LParen) {
      bump();
      right = formula();
      expect(Tok::RParen, "')'");
    } else if (cur_.kind == Tok::Ident) {
      right = atom(cur_);
      bump();
    } else if (cur_.kind == Tok::True) {
      right = Formula::truth();
      bump();
    } else {
      fail("expected atom or '(' after 'U' bounds");
    }
    return Formula::until(a, b, std::move(left), std::move(right));
  }

  Lexer lex_;
  const PredicateTable& table_;
  Token cur_;
};

}  // namespace

FormulaPtr parse_formula(const std::string& text, const PredicateTable& table) {
  return Parser(text, table).parse();
}

}  // namespace fstl
