#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include "rvkit/errors.hpp"
#include "rvkit/formula.hpp"

namespace rvkit {
namespace {

struct Token {
  enum class Kind { Ident, Number, Sym, End };
  Kind kind;
  std::string text;
  size_t pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : s_(text) { advance(); }
  const Token& peek() const { return tok_; }
  Token next() {
    Token t = tok_;
    advance();
    return t;
  }
  [[noreturn]] void error(const std::string& msg) const {
    fail(ErrorKind::SyntaxError, msg + " at position " + std::to_string(tok_.pos));
  }

 private:
  void advance() {
    while (i_ < s_.size() && isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    tok_.pos = i_;
    if (i_ >= s_.size()) {
      tok_ = {Token::Kind::End, "", i_};
      return;
    }
    char c = s_[i_];
    if (isalpha(static_cast<unsigned char>(c))) {
      size_t j = i_;
      while (j < s_.size() && (isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_')) ++j;
      tok_ = {Token::Kind::Ident, std::string(s_.substr(i_, j - i_)), i_};
      i_ = j;
      return;
    }
    if (isdigit(static_cast<unsigned char>(c))) {
      size_t j = i_;
      while (j < s_.size() && isdigit(static_cast<unsigned char>(s_[j]))) ++j;
      tok_ = {Token::Kind::Number, std::string(s_.substr(i_, j - i_)), i_};
      i_ = j;
      return;
    }
    // two-character symbols
    if (i_ + 1 < s_.size()) {
      std::string two = std::string(s_.substr(i_, 2));
      if (two == "!=" || two == "<=") {
        tok_ = {Token::Kind::Sym, two, i_};
        i_ += 2;
        return;
      }
      // the unicode middle dot as a product sign
      if (static_cast<unsigned char>(s_[i_]) == 0xC2 &&
          static_cast<unsigned char>(s_[i_ + 1]) == 0xB7) {
        tok_ = {Token::Kind::Sym, "*", i_};
        i_ += 2;
        return;
      }
    }
    tok_ = {Token::Kind::Sym, std::string(1, c), i_};
    ++i_;
  }

  std::string_view s_;
  size_t i_ = 0;
  Token tok_;
};

bool is_vf_var(const std::string& id) {
  if (id.empty() || id[0] != 'X') return false;
  for (size_t i = 1; i < id.size(); ++i)
    if (!isdigit(static_cast<unsigned char>(id[i]))) return false;
  return true;
}

bool is_rv_var(const std::string& id) {
  if (id.empty() || (id[0] != 'Y' && id[0] != 'Z')) return false;
  for (size_t i = 1; i < id.size(); ++i)
    if (!isdigit(static_cast<unsigned char>(id[i]))) return false;
  return true;
}

class Parser {
 public:
  Parser(FieldPtr f, std::string_view text) : field_(std::move(f)), lex_(text) {}

  FPtr formula() {
    FPtr f = parse_or();
    expect_end();
    return f;
  }

  VfPtr vf_term_all() {
    VfPtr t = vfterm();
    expect_end();
    return t;
  }

  Puiseux puiseux_all() {
    VfPtr t = vfterm();
    expect_end();
    return fold_const(t);
  }

 private:
  // ---- formulas ----
  FPtr parse_or() {
    std::vector<FPtr> kids{parse_and()};
    while (sym("|")) kids.push_back(parse_and());
    return QfFormula::disj(std::move(kids));
  }

  FPtr parse_and() {
    std::vector<FPtr> kids{parse_unit()};
    while (sym("&")) kids.push_back(parse_unit());
    return QfFormula::conj(std::move(kids));
  }

  FPtr parse_unit() {
    if (peek_sym("!")) {
      lex_.next();
      if (!sym("(")) lex_.error("expected '(' after '!'");
      FPtr f = parse_or();
      if (!sym(")")) lex_.error("expected ')'");
      return QfFormula::negate(f);
    }
    if (peek_sym("(")) {
      // grouping is ambiguous with parenthesized terms; try the formula
      // reading first
      Lexer save = lex_;
      try {
        lex_.next();
        FPtr f = parse_or();
        if (!sym(")")) lex_.error("expected ')'");
        return f;
      } catch (const Error&) {
        lex_ = save;
      }
    }
    return parse_literal();
  }

  FPtr parse_literal() {
    // try an RV relation first, fall back to a VF literal
    Lexer save = lex_;
    std::optional<Literal> rv_lit;
    try {
      RvPtr lhs = rvterm();
      std::string op;
      if (sym("=")) op = "=";
      else if (sym("!=")) op = "!=";
      else if (sym("<=")) op = "<=";
      else if (sym(">")) op = ">";
      else lex_.error("expected a relation");
      RvPtr rhs = rvterm();
      Literal l;
      l.rel = op == "=" ? Literal::Rel::RvEq
              : op == "!=" ? Literal::Rel::RvNe
              : op == "<=" ? Literal::Rel::RvLe
                           : Literal::Rel::RvGt;
      l.lhs = std::move(lhs);
      l.rhs = std::move(rhs);
      rv_lit = std::move(l);
    } catch (const Error&) {
      lex_ = save;
    }
    if (rv_lit) {
      if (rv_lit->rel == Literal::Rel::RvLe || rv_lit->rel == Literal::Rel::RvGt) {
        if (has_ksum(rv_lit->lhs) || has_ksum(rv_lit->rhs))
          fail(ErrorKind::TypeError, "K-terms cannot occur in RV-sort inequalities");
      }
      return QfFormula::literal(std::move(*rv_lit));
    }
    VfPtr t = vfterm();
    std::string op;
    if (sym("=")) op = "=";
    else if (sym("!=")) op = "!=";
    else lex_.error("expected '=' or '!=' after VF term");
    Token z = lex_.next();
    if (z.kind != Token::Kind::Number || z.text != "0")
      fail(ErrorKind::SyntaxError,
           "VF literals compare against 0 (position " + std::to_string(z.pos) + ")");
    Literal l;
    l.rel = op == "=" ? Literal::Rel::VfEq : Literal::Rel::VfNe;
    l.vf = std::move(t);
    return QfFormula::literal(std::move(l));
  }

  static bool has_ksum(const RvPtr& t) {
    switch (t->kind) {
      case RvTerm::Kind::KSum: return true;
      case RvTerm::Kind::Mul: return has_ksum(t->a) || has_ksum(t->b);
      case RvTerm::Kind::Pow: return has_ksum(t->a);
      default: return false;
    }
  }

  // ---- RV terms ----
  RvPtr rvterm() {
    std::vector<RvPtr> summands{rvprod()};
    while (peek_sym("+")) {
      lex_.next();
      summands.push_back(rvprod());
    }
    if (summands.size() == 1) return summands[0];
    return RvTerm::ksum(std::move(summands));
  }

  RvPtr rvprod() {
    RvPtr t = rvatom();
    while (peek_sym("*")) {
      lex_.next();
      t = RvTerm::mul(t, rvatom());
    }
    return t;
  }

  RvPtr rvatom() {
    const Token& t = lex_.peek();
    if (t.kind == Token::Kind::Ident) {
      if (t.text == "rv") {
        lex_.next();
        if (!sym("(")) lex_.error("expected '(' after rv");
        VfPtr arg = vfterm();
        if (!sym(")")) lex_.error("expected ')'");
        RvPtr r = RvTerm::rv(arg);
        return maybe_pow(r);
      }
      if (t.text == "INF") {
        lex_.next();
        return RvTerm::constant(Rv0::of(RvElem::infinity(field_)));
      }
      if (is_rv_var(t.text)) {
        std::string name = lex_.next().text;
        return maybe_pow(RvTerm::variable(name));
      }
      lex_.error("'" + t.text + "' is not an RV-sort term");
    }
    if (t.kind == Token::Kind::Number && t.text == "0") {
      lex_.next();
      return RvTerm::constant(Rv0::k_zero(field_));
    }
    if (peek_sym("[")) {
      lex_.next();
      Rational g = rational();
      if (!sym(";")) lex_.error("expected ';' in RV literal");
      KElem res = kelem();
      if (!sym("]")) lex_.error("expected ']'");
      if (res.is_zero()) fail(ErrorKind::TypeError, "RV literal with zero residue");
      return maybe_pow(RvTerm::constant(Rv0::of(RvElem::unit(g, res))));
    }
    if (peek_sym("(")) {
      lex_.next();
      RvPtr r = rvterm();
      if (!sym(")")) lex_.error("expected ')'");
      return maybe_pow(r);
    }
    lex_.error("expected an RV-sort term");
  }

  RvPtr maybe_pow(RvPtr base) {
    if (!peek_sym("^")) return base;
    lex_.next();
    int e = integer_exponent();
    return RvTerm::pow(std::move(base), e);
  }

  // ---- VF terms ----
  VfPtr vfterm() {
    VfPtr t = vfprod();
    while (peek_sym("+") || peek_sym("-")) {
      bool plus = lex_.next().text == "+";
      VfPtr rhs = vfprod();
      t = plus ? VfTerm::add(t, rhs) : VfTerm::sub(t, rhs);
    }
    return t;
  }

  VfPtr vfprod() {
    VfPtr t = vfatom();
    while (peek_sym("*")) {
      lex_.next();
      t = VfTerm::mul(t, vfatom());
    }
    return t;
  }

  VfPtr vfatom() {
    const Token& t = lex_.peek();
    if (peek_sym("-")) {
      lex_.next();
      return VfTerm::neg(vfatom());
    }
    if (t.kind == Token::Kind::Number) {
      Rational q = rational();
      return VfTerm::constant(Puiseux::rational(field_, q));
    }
    if (t.kind == Token::Kind::Ident) {
      if (t.text == "t") {
        lex_.next();
        if (peek_sym("^")) {
          lex_.next();
          Rational e = rational_exponent();
          return VfTerm::constant(Puiseux::monomial(KElem::one(field_), e));
        }
        return VfTerm::constant(Puiseux::t(field_));
      }
      if (t.text == "y") {
        lex_.next();
        KElem g = KElem::generator(field_);
        if (peek_sym("^")) {
          lex_.next();
          int e = integer_exponent();
          if (e < 0) fail(ErrorKind::TypeError, "negative power of the field generator");
          g = g.pow(e);
        }
        return VfTerm::constant(Puiseux::constant(g));
      }
      if (t.text == "sn") {
        lex_.next();
        if (!sym("(")) lex_.error("expected '(' after sn");
        RvPtr arg = rvterm();
        if (!sym(")")) lex_.error("expected ')'");
        return VfTerm::sn(arg);
      }
      if (is_vf_var(t.text)) {
        std::string name = lex_.next().text;
        VfPtr v = VfTerm::variable(name);
        if (peek_sym("^")) {
          lex_.next();
          int e = integer_exponent();
          if (e < 0) fail(ErrorKind::TypeError, "negative power in a VF polynomial");
          return VfTerm::pow(v, e);
        }
        return v;
      }
      if (is_rv_var(t.text) || t.text == "rv" || t.text == "INF")
        fail(ErrorKind::TypeError, "RV-sort term '" + t.text + "' used in a VF position");
      lex_.error("unknown identifier '" + t.text + "'");
    }
    if (peek_sym("(")) {
      lex_.next();
      VfPtr inner = vfterm();
      if (!sym(")")) lex_.error("expected ')'");
      if (peek_sym("^")) {
        lex_.next();
        int e = integer_exponent();
        if (e < 0) fail(ErrorKind::TypeError, "negative power in a VF polynomial");
        return VfTerm::pow(inner, e);
      }
      return inner;
    }
    lex_.error("expected a VF-sort term");
  }

  // ---- scalars ----
  Rational rational() {
    bool negative = false;
    while (peek_sym("-") || peek_sym("+")) negative ^= (lex_.next().text == "-");
    Token n = lex_.next();
    if (n.kind != Token::Kind::Number) lex_.error("expected a number");
    mpq_class q(n.text);
    if (peek_sym("/")) {
      lex_.next();
      Token d = lex_.next();
      if (d.kind != Token::Kind::Number) lex_.error("expected a denominator");
      if (d.text == "0") fail(ErrorKind::SyntaxError, "zero denominator");
      q = mpq_class(n.text + "/" + d.text);
    }
    Rational r{q};
    return negative ? -r : r;
  }

  Rational rational_exponent() {
    if (peek_sym("(")) {
      lex_.next();
      Rational r = rational();
      if (!sym(")")) lex_.error("expected ')'");
      return r;
    }
    return rational();
  }

  int integer_exponent() {
    bool paren = false;
    if (peek_sym("(")) { lex_.next(); paren = true; }
    bool negative = false;
    while (peek_sym("-") || peek_sym("+")) negative ^= (lex_.next().text == "-");
    Token n = lex_.next();
    if (n.kind != Token::Kind::Number) lex_.error("expected an integer exponent");
    int e = std::stoi(n.text);
    if (paren && !sym(")")) lex_.error("expected ')'");
    return negative ? -e : e;
  }

  KElem kelem() {
    // sum of monomials c, c*y^k, y^k with signs
    KElem acc = KElem::zero(field_);
    bool first = true;
    while (true) {
      bool negative = false;
      if (peek_sym("-")) { lex_.next(); negative = true; }
      else if (peek_sym("+")) { lex_.next(); }
      else if (!first) break;
      KElem term = kelem_factor();
      while (peek_sym("*")) {
        lex_.next();
        term = term * kelem_factor();
      }
      acc = negative ? acc - term : acc + term;
      first = false;
      if (!peek_sym("+") && !peek_sym("-")) break;
    }
    return acc;
  }

  KElem kelem_factor() {
    const Token& t = lex_.peek();
    if (t.kind == Token::Kind::Number) return KElem::of(field_, rational());
    if (t.kind == Token::Kind::Ident && t.text == "y") {
      lex_.next();
      KElem g = KElem::generator(field_);
      if (peek_sym("^")) {
        lex_.next();
        int e = integer_exponent();
        if (e < 0) fail(ErrorKind::TypeError, "negative power of the field generator");
        return g.pow(e);
      }
      return g;
    }
    if (peek_sym("(")) {
      lex_.next();
      KElem inner = kelem();
      if (!sym(")")) lex_.error("expected ')'");
      return inner;
    }
    lex_.error("expected a K element");
  }

  // ---- helpers ----
  bool peek_sym(const std::string& s) const {
    return lex_.peek().kind == Token::Kind::Sym && lex_.peek().text == s;
  }
  bool sym(const std::string& s) {
    if (!peek_sym(s)) return false;
    lex_.next();
    return true;
  }
  void expect_end() {
    if (lex_.peek().kind != Token::Kind::End) lex_.error("trailing input");
  }

  Puiseux fold_const(const VfPtr& t) {
    switch (t->kind) {
      case VfTerm::Kind::Const: return t->cval;
      case VfTerm::Kind::Add: return fold_const(t->a) + fold_const(t->b);
      case VfTerm::Kind::Sub: return fold_const(t->a) - fold_const(t->b);
      case VfTerm::Kind::Mul: return fold_const(t->a) * fold_const(t->b);
      case VfTerm::Kind::Neg: return -fold_const(t->a);
      case VfTerm::Kind::Pow: {
        if (t->exponent < 0) fail(ErrorKind::TypeError, "negative power");
        return fold_const(t->a).pow(t->exponent);
      }
      default:
        fail(ErrorKind::TypeError, "expected a constant VF term");
    }
  }

  FieldPtr field_;
  Lexer lex_;
};

}  // namespace

FPtr parse_formula(const FieldPtr& f, std::string_view text) {
  return Parser(f, text).formula();
}

VfPtr parse_vf_term(const FieldPtr& f, std::string_view text) {
  return Parser(f, text).vf_term_all();
}

Puiseux parse_puiseux(const FieldPtr& f, std::string_view text) {
  return Parser(f, text).puiseux_all();
}

}  // namespace rvkit
