#include <cctype>

#include "fpsdp/expr.hpp"

namespace fpsdp {

namespace {

class Parser {
public:
  Parser(const std::string& text, std::size_t pos = 0) : s_(text), p_(pos) {}

  std::size_t pos() const { return p_; }

  void skip() {
    for (;;) {
      while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_]))) ++p_;
      if (p_ < s_.size() && s_[p_] == '#') {
        while (p_ < s_.size() && s_[p_] != '\n') ++p_;
        continue;
      }
      return;
    }
  }

  bool at_end() {
    skip();
    return p_ >= s_.size();
  }

  char peek() {
    skip();
    return p_ < s_.size() ? s_[p_] : '\0';
  }

  bool accept(char c) {
    if (peek() == c) {
      ++p_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, p_); }

  std::string word() {
    skip();
    std::size_t b = p_;
    while (p_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[p_])) || s_[p_] == '_')) ++p_;
    return s_.substr(b, p_ - b);
  }

  bool accept_word(const std::string& w) {
    skip();
    std::size_t save = p_;
    if (word() == w) return true;
    p_ = save;
    return false;
  }

  // Unsigned numeric literal; sets is_int when it has no '.' or exponent.
  Rational number(bool& is_int, bool& is_decimal) {
    skip();
    std::size_t b = p_;
    while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
    is_int = true;
    if (p_ < s_.size() && s_[p_] == '.') {
      is_int = false;
      ++p_;
      while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
    }
    if (p_ < s_.size() && (s_[p_] == 'e' || s_[p_] == 'E')) {
      std::size_t save = p_;
      ++p_;
      if (p_ < s_.size() && (s_[p_] == '+' || s_[p_] == '-')) ++p_;
      if (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) {
        while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
        is_int = false;
      } else {
        p_ = save;
      }
    }
    if (p_ == b) fail("expected number");
    is_decimal = !is_int;
    return parse_decimal(s_.substr(b, p_ - b));
  }

  bool number_ahead() {
    char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.';
  }

  // An integer literal followed by '/' and another integer literal is one
  // rational constant.
  Expr literal() {
    std::size_t start = p_;
    bool is_int, is_dec;
    Rational v = number(is_int, is_dec);
    if (is_int) {
      std::size_t save = p_;
      if (accept('/') && number_ahead()) {
        bool i2, d2;
        std::size_t dpos = p_;
        Rational d = number(i2, d2);
        if (i2) {
          if (sgn(d) == 0) throw ParseError("zero-denominator constant", dpos);
          return make_const(v / d, false);
        }
      }
      p_ = save;
    }
    (void)start;
    return make_const(v, is_dec);
  }

  Expr sum() {
    Expr e = term();
    for (;;) {
      if (accept('+'))
        e = make_binary(Op::Add, e, term());
      else if (accept('-'))
        e = make_binary(Op::Sub, e, term());
      else
        return e;
    }
  }

  Expr term() {
    Expr e = unary();
    for (;;) {
      if (accept('*')) {
        e = make_binary(Op::Mul, e, unary());
      } else if (peek() == '/') {
        std::size_t at = p_;
        ++p_;
        Expr d = unary();
        if (d->op != Op::Const) throw ParseError("division by a non-constant", at);
        if (sgn(d->value) == 0) throw ParseError("division by zero", at);
        e = make_binary(Op::Div, e, d);
      } else {
        return e;
      }
    }
  }

  Expr unary() {
    if (accept('-')) {
      bool lit = number_ahead();
      Expr a = unary();
      if (lit && a->op == Op::Const) return make_const(-a->value, a->decimal);
      return make_unary(Op::Neg, a);
    }
    if (accept('+')) return unary();
    return power();
  }

  Expr power() {
    Expr b = primary();
    if (accept('^')) {
      std::size_t at = p_;
      bool is_int, is_dec;
      Rational k = number(is_int, is_dec);
      if (!is_int || k < 1 || k > 1000) throw ParseError("exponent must be a positive integer", at);
      b = make_pow(b, static_cast<int>(k.get_num().get_si()));
    }
    return b;
  }

  Expr primary() {
    char c = peek();
    if (c == '(') {
      ++p_;
      Expr e = sum();
      expect(')');
      return e;
    }
    if (number_ahead()) return literal();
    if (c == 'x') {
      std::size_t at = p_;
      ++p_;
      std::size_t b = p_;
      while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
      if (p_ == b) throw ParseError("expected variable index after 'x'", at);
      int idx = std::stoi(s_.substr(b, p_ - b));
      if (idx < 1 || idx > nvars_) throw ParseError("variable index out of range: x" + std::to_string(idx), at);
      return make_var(idx);
    }
    fail("unexpected character");
  }

  // signed rational for box bounds
  Rational bound() {
    bool neg = false;
    if (accept('-'))
      neg = true;
    else
      accept('+');
    bool is_int, is_dec;
    Rational v = number(is_int, is_dec);
    if (is_int && accept('/')) {
      std::size_t at = p_;
      Rational d = number(is_int, is_dec);
      if (sgn(d) == 0) throw ParseError("zero-denominator constant", at);
      v /= d;
    }
    return neg ? Rational(-v) : v;
  }

  int nvars_ = 0;

private:
  const std::string& s_;
  std::size_t p_;
};

}  // namespace

Expr parse_expr(const std::string& text, int n_vars) {
  Parser p(text);
  p.nvars_ = n_vars;
  Expr e = p.sum();
  if (!p.at_end()) p.fail("trailing input");
  return e;
}

Program parse_program(const std::string& text) {
  Parser p(text);
  Program prog;
  if (!p.accept_word("vars")) p.fail("expected 'vars'");
  std::vector<Rational> lo, hi;
  for (;;) {
    if (p.accept_word("expr")) break;
    std::size_t at = p.pos();
    std::string name = p.word();
    if (name.size() < 2 || name[0] != 'x') throw ParseError("expected variable name x<i>", at);
    int idx = 0;
    try {
      idx = std::stoi(name.substr(1));
    } catch (...) {
      throw ParseError("bad variable name " + name, at);
    }
    if (idx != static_cast<int>(lo.size()) + 1) throw ParseError("variables must be declared as x1, x2, ... in order", at);
    if (!p.accept_word("in")) p.fail("expected 'in'");
    p.expect('[');
    Rational l = p.bound();
    p.expect(',');
    Rational h = p.bound();
    p.expect(']');
    if (l > h) throw ParseError("empty interval for " + name, at);
    lo.push_back(l);
    hi.push_back(h);
    if (!p.accept(';') && !p.accept(',')) p.fail("expected ';'");
  }
  if (lo.empty()) p.fail("no variables declared");
  prog.n = static_cast<int>(lo.size());
  prog.box = Box(lo, hi);
  p.nvars_ = prog.n;
  prog.tree = p.sum();
  p.expect(';');
  if (p.accept_word("prec")) {
    std::string w = p.word();
    if (w == "double")
      prog.precision = 53;
    else if (w == "single")
      prog.precision = 24;
    else
      p.fail("precision must be double or single");
    p.accept(';');
  }
  if (!p.at_end()) p.fail("trailing input");
  return prog;
}

}  // namespace fpsdp
