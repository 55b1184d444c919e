#pragma once

#include <cctype>
#include <memory>
#include <string>
#include <utility>

#include "qalg/error.hpp"
#include "qalg/scalar.hpp"

namespace qalg {

// ---------------------------------------------------------------------------
// Tokenizer shared by the expression grammar and the presentation file
// grammar. `#` starts a comment running to end of line.
// ---------------------------------------------------------------------------

struct Token {
  enum class Kind { Ident, Int, Sym, End };
  Kind kind = Kind::End;
  std::string text;
  int line = 0, col = 0;

  bool isSym(char c) const { return kind == Kind::Sym && text.size() == 1 && text[0] == c; }
  bool isIdent(const std::string& s) const { return kind == Kind::Ident && text == s; }
};

class Lexer {
 public:
  explicit Lexer(std::string src) : src_(std::move(src)) { advance(); }

  const Token& peek() const { return tok_; }

  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

  [[noreturn]] void error(const std::string& msg) const {
    fail(ErrorCode::SyntaxError,
         "line " + std::to_string(tok_.line) + " col " + std::to_string(tok_.col) + ": " + msg);
  }

  Token expectSym(char c) {
    if (!tok_.isSym(c)) error(std::string("expected '") + c + "'");
    return next();
  }

  Token expectIdent() {
    if (tok_.kind != Token::Kind::Ident) error("expected identifier");
    return next();
  }

  Token expectInt() {
    if (tok_.kind != Token::Kind::Int) error("expected integer");
    return next();
  }

 private:
  void advance() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '\n') {
        ++line_;
        col_ = 1;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++col_;
        ++pos_;
      } else if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
    tok_ = Token{};
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= src_.size()) {
      tok_.kind = Token::Kind::End;
      return;
    }
    char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_' ||
              src_[pos_] == '.')) {
        ++pos_;
      }
      tok_.kind = Token::Kind::Ident;
      tok_.text = src_.substr(start, pos_ - start);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      tok_.kind = Token::Kind::Int;
      tok_.text = src_.substr(start, pos_ - start);
    } else if (std::string("+-*/^()=;{}[],").find(c) != std::string::npos) {
      tok_.kind = Token::Kind::Sym;
      tok_.text = std::string(1, c);
      ++pos_;
    } else {
      fail(ErrorCode::SyntaxError, "line " + std::to_string(line_) + " col " +
                                       std::to_string(col_) + ": unexpected character '" +
                                       std::string(1, c) + "'");
    }
    col_ += static_cast<int>(pos_ - posOfTokenStart());
  }

  size_t posOfTokenStart() const {
    // Column tracking only needs the token length; recompute from text.
    return pos_ - tok_.text.size();
  }

  std::string src_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_;
};

// ---------------------------------------------------------------------------
// Expression trees. Generator references stay symbolic (by name) and are
// resolved against a rewrite system at evaluation time; `q` is reserved for
// the scalar parameter.
// ---------------------------------------------------------------------------

struct Expr {
  using Ptr = std::shared_ptr<const Expr>;
  enum class Kind { Const, Gen, Add, Sub, Neg, Mul, Div, Pow };

  Kind kind = Kind::Const;
  RationalFunction value;  // Const
  std::string name;        // Gen
  Ptr lhs, rhs;            // binary ops; Neg and Pow use lhs only
  int exponent = 0;        // Pow

  static Ptr constant(RationalFunction v) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Const;
    e->value = std::move(v);
    return e;
  }
  static Ptr gen(std::string n) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Gen;
    e->name = std::move(n);
    return e;
  }
  static Ptr binary(Kind k, Ptr a, Ptr b) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->lhs = std::move(a);
    e->rhs = std::move(b);
    return e;
  }
  static Ptr add(Ptr a, Ptr b) { return binary(Kind::Add, std::move(a), std::move(b)); }
  static Ptr sub(Ptr a, Ptr b) { return binary(Kind::Sub, std::move(a), std::move(b)); }
  static Ptr mul(Ptr a, Ptr b) { return binary(Kind::Mul, std::move(a), std::move(b)); }
  static Ptr div(Ptr a, Ptr b) { return binary(Kind::Div, std::move(a), std::move(b)); }
  static Ptr neg(Ptr a) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Neg;
    e->lhs = std::move(a);
    return e;
  }
  static Ptr pow(Ptr a, int k) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Pow;
    e->lhs = std::move(a);
    e->exponent = k;
    return e;
  }
};

namespace detail {

inline Expr::Ptr parseSum(Lexer& lx);

inline int parseExponent(Lexer& lx) {
  bool negate = false;
  if (lx.peek().isSym('-')) {
    lx.next();
    negate = true;
  }
  Token t = lx.expectInt();
  long v = std::stol(t.text);
  return static_cast<int>(negate ? -v : v);
}

inline Expr::Ptr parseAtom(Lexer& lx) {
  const Token& t = lx.peek();
  if (t.kind == Token::Kind::Int) {
    Token n = lx.next();
    return Expr::constant(RationalFunction(mpz_class(n.text)));
  }
  if (t.kind == Token::Kind::Ident) {
    Token n = lx.next();
    return Expr::gen(n.text);
  }
  if (t.isSym('(')) {
    lx.next();
    Expr::Ptr inner = parseSum(lx);
    lx.expectSym(')');
    return inner;
  }
  lx.error("expected a number, generator, or parenthesized expression");
}

inline Expr::Ptr parseFactor(Lexer& lx) {
  if (lx.peek().isSym('-')) {
    lx.next();
    return Expr::neg(parseFactor(lx));
  }
  Expr::Ptr base = parseAtom(lx);
  while (lx.peek().isSym('^')) {
    lx.next();
    base = Expr::pow(base, parseExponent(lx));
  }
  return base;
}

inline Expr::Ptr parseProduct(Lexer& lx) {
  Expr::Ptr out = parseFactor(lx);
  while (lx.peek().isSym('*') || lx.peek().isSym('/')) {
    bool isDiv = lx.next().text[0] == '/';
    Expr::Ptr rhs = parseFactor(lx);
    out = isDiv ? Expr::div(out, rhs) : Expr::mul(out, rhs);
  }
  return out;
}

inline Expr::Ptr parseSum(Lexer& lx) {
  Expr::Ptr out = parseProduct(lx);
  while (lx.peek().isSym('+') || lx.peek().isSym('-')) {
    bool isSub = lx.next().text[0] == '-';
    Expr::Ptr rhs = parseProduct(lx);
    out = isSub ? Expr::sub(out, rhs) : Expr::add(out, rhs);
  }
  return out;
}

}  // namespace detail

// Parse an expression from a token stream, consuming exactly the tokens the
// grammar covers (callers handle terminators like ';' or '=').
inline Expr::Ptr parseExprTokens(Lexer& lx) { return detail::parseSum(lx); }

inline Expr::Ptr parseExpr(const std::string& src) {
  Lexer lx(src);
  Expr::Ptr e = parseExprTokens(lx);
  if (lx.peek().kind != Token::Kind::End) lx.error("trailing input after expression");
  return e;
}

}  // namespace qalg
