#include "bevholt/formula.hpp"

#include <cmath>
#include <utility>
#include <vector>

namespace bevholt {

namespace {

enum class Op { lit, var_n, pi, neg, add, sub, mul, div, sin, cos };

bool is_binary(Op op) { return op == Op::add || op == Op::sub || op == Op::mul || op == Op::div; }

}  // namespace

struct Formula::Node {
  Op op;
  Rational lit;  // Op::lit only
  std::shared_ptr<const Node> a, b;
};

namespace {

using NodePtr = std::shared_ptr<const Formula::Node>;

NodePtr make(Op op, NodePtr a = nullptr, NodePtr b = nullptr) {
  auto n = std::make_shared<Formula::Node>();
  n->op = op;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

NodePtr make_lit(Rational v) {
  auto n = std::make_shared<Formula::Node>();
  n->op = Op::lit;
  n->lit = std::move(v);
  return n;
}

struct Token {
  enum Kind { number, ident, plus, minus, star, slash, lparen, rparen, end } kind;
  Rational value;     // number
  std::string text;   // ident
  std::size_t pos;    // byte offset, for error messages
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    while (i_ < src_.size() && (src_[i_] == ' ' || src_[i_] == '\t')) ++i_;
    std::size_t at = i_;
    if (i_ >= src_.size()) return {Token::end, {}, {}, at};
    char c = src_[i_];
    if (c >= '0' && c <= '9') return number(at);
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) return ident(at);
    // UTF-8 spellings: pi, times, divide
    if (src_.substr(i_).rfind("\xcf\x80", 0) == 0) {
      i_ += 2;
      return {Token::ident, {}, "pi", at};
    }
    if (src_.substr(i_).rfind("\xc3\x97", 0) == 0) {
      i_ += 2;
      return {Token::star, {}, {}, at};
    }
    if (src_.substr(i_).rfind("\xc3\xb7", 0) == 0) {
      i_ += 2;
      return {Token::slash, {}, {}, at};
    }
    ++i_;
    switch (c) {
      case '+': return {Token::plus, {}, {}, at};
      case '-': return {Token::minus, {}, {}, at};
      case '*': return {Token::star, {}, {}, at};
      case '/': return {Token::slash, {}, {}, at};
      case '(': return {Token::lparen, {}, {}, at};
      case ')': return {Token::rparen, {}, {}, at};
      default: throw ConfigError("formula: unexpected character '" + std::string(1, c) + "' at column " + std::to_string(at + 1));
    }
  }

 private:
  Token number(std::size_t at) {
    std::size_t start = i_;
    while (i_ < src_.size() && src_[i_] >= '0' && src_[i_] <= '9') ++i_;
    if (i_ < src_.size() && src_[i_] == '.') {
      ++i_;
      if (i_ >= src_.size() || src_[i_] < '0' || src_[i_] > '9')
        throw ConfigError("formula: malformed number at column " + std::to_string(at + 1));
      while (i_ < src_.size() && src_[i_] >= '0' && src_[i_] <= '9') ++i_;
    }
    return {Token::number, Rational::parse(src_.substr(start, i_ - start)), {}, at};
  }

  Token ident(std::size_t at) {
    std::size_t start = i_;
    while (i_ < src_.size() && ((src_[i_] >= 'a' && src_[i_] <= 'z') || (src_[i_] >= 'A' && src_[i_] <= 'Z'))) ++i_;
    return {Token::ident, {}, std::string(src_.substr(start, i_ - start)), at};
  }

  std::string_view src_;
  std::size_t i_ = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src), cur_(lex_.next()) {}

  NodePtr parse() {
    NodePtr e = sum();
    expect(Token::end, "end of formula");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& wanted) {
    throw ConfigError("formula: expected " + wanted + " at column " + std::to_string(cur_.pos + 1));
  }

  void advance() { cur_ = lex_.next(); }

  void expect(Token::Kind k, const std::string& what) {
    if (cur_.kind != k) fail(what);
    advance();
  }

  NodePtr sum() {
    NodePtr e = term();
    while (cur_.kind == Token::plus || cur_.kind == Token::minus) {
      Op op = cur_.kind == Token::plus ? Op::add : Op::sub;
      advance();
      e = make(op, e, term());
    }
    return e;
  }

  NodePtr term() {
    NodePtr e = unary();
    while (cur_.kind == Token::star || cur_.kind == Token::slash) {
      Op op = cur_.kind == Token::star ? Op::mul : Op::div;
      advance();
      e = make(op, e, unary());
    }
    return e;
  }

  NodePtr unary() {
    if (cur_.kind == Token::minus) {
      advance();
      return make(Op::neg, unary());
    }
    if (cur_.kind == Token::plus) {
      advance();
      return unary();
    }
    return atom();
  }

  NodePtr atom() {
    switch (cur_.kind) {
      case Token::number: {
        NodePtr e = make_lit(cur_.value);
        advance();
        return e;
      }
      case Token::ident: {
        std::string name = cur_.text;
        advance();
        if (name == "n") return make(Op::var_n);
        if (name == "pi") return make(Op::pi);
        if (name == "sin" || name == "cos") {
          expect(Token::lparen, "'(' after " + name);
          NodePtr arg = sum();
          expect(Token::rparen, "')'");
          return make(name == "sin" ? Op::sin : Op::cos, arg);
        }
        throw ConfigError("formula: unknown name '" + name + "'");
      }
      case Token::lparen: {
        advance();
        NodePtr e = sum();
        expect(Token::rparen, "')'");
        return e;
      }
      default: fail("a value");
    }
  }

  Lexer lex_;
  Token cur_;
};

bool walk_any(const Formula::Node* n, bool (*pred)(Op)) {
  if (!n) return false;
  if (pred(n->op)) return true;
  return walk_any(n->a.get(), pred) || walk_any(n->b.get(), pred);
}

double eval_r(const Formula::Node* n, Index idx) {
  switch (n->op) {
    case Op::lit: return n->lit.to_double();
    case Op::var_n: return static_cast<double>(idx);
    case Op::pi: return M_PI;
    case Op::neg: return -eval_r(n->a.get(), idx);
    case Op::add: return eval_r(n->a.get(), idx) + eval_r(n->b.get(), idx);
    case Op::sub: return eval_r(n->a.get(), idx) - eval_r(n->b.get(), idx);
    case Op::mul: return eval_r(n->a.get(), idx) * eval_r(n->b.get(), idx);
    case Op::div: {
      double d = eval_r(n->b.get(), idx);
      if (d == 0.0) throw DomainError("formula: division by zero at n = " + std::to_string(idx));
      return eval_r(n->a.get(), idx) / d;
    }
    case Op::sin: return std::sin(eval_r(n->a.get(), idx));
    case Op::cos: return std::cos(eval_r(n->a.get(), idx));
  }
  throw DomainError("formula: corrupt node");
}

Rational eval_q(const Formula::Node* n, Index idx) {
  switch (n->op) {
    case Op::lit: return n->lit;
    case Op::var_n: return Rational(BigInt(idx), BigInt(1));
    case Op::neg: return -eval_q(n->a.get(), idx);
    case Op::add: return eval_q(n->a.get(), idx) + eval_q(n->b.get(), idx);
    case Op::sub: return eval_q(n->a.get(), idx) - eval_q(n->b.get(), idx);
    case Op::mul: return eval_q(n->a.get(), idx) * eval_q(n->b.get(), idx);
    case Op::div: {
      Rational d = eval_q(n->b.get(), idx);
      if (d.is_zero()) throw DomainError("formula: division by zero at n = " + std::to_string(idx));
      return eval_q(n->a.get(), idx) / d;
    }
    default: throw DomainError("formula: sin/cos/pi have no exact rational value");
  }
}

int precedence(Op op) {
  switch (op) {
    case Op::add:
    case Op::sub: return 1;
    case Op::mul:
    case Op::div: return 2;
    default: return 3;
  }
}

void print(const Formula::Node* n, std::string& out) {
  auto child = [&](const Formula::Node* c, bool needs_parens) {
    if (needs_parens) out += '(';
    print(c, out);
    if (needs_parens) out += ')';
  };
  switch (n->op) {
    case Op::lit: out += n->lit.str(); return;
    case Op::var_n: out += 'n'; return;
    case Op::pi: out += "pi"; return;
    case Op::neg:
      out += '-';
      child(n->a.get(), precedence(n->a->op) < 3);
      return;
    case Op::sin:
    case Op::cos:
      out += n->op == Op::sin ? "sin(" : "cos(";
      print(n->a.get(), out);
      out += ')';
      return;
    default: {
      int p = precedence(n->op);
      child(n->a.get(), precedence(n->a->op) < p);
      switch (n->op) {
        case Op::add: out += " + "; break;
        case Op::sub: out += " - "; break;
        case Op::mul: out += "*"; break;
        case Op::div: out += "/"; break;
        default: break;
      }
      // right operand of - and / needs parens at equal precedence
      child(n->b.get(), precedence(n->b->op) < p ||
                            (precedence(n->b->op) == p && (n->op == Op::sub || n->op == Op::div) &&
                             is_binary(n->b->op)));
      return;
    }
  }
}

}  // namespace

Formula Formula::parse(std::string_view source) {
  Formula f;
  f.root_ = Parser(source).parse();
  return f;
}

bool Formula::uses_n() const {
  return walk_any(root_.get(), [](Op op) { return op == Op::var_n; });
}

bool Formula::exact_capable() const {
  return !walk_any(root_.get(), [](Op op) { return op == Op::pi || op == Op::sin || op == Op::cos; });
}

double Formula::eval_real(Index n) const {
  if (!root_) throw DomainError("empty formula");
  return eval_r(root_.get(), n);
}

Rational Formula::eval_rational(Index n) const {
  if (!root_) throw DomainError("empty formula");
  return eval_q(root_.get(), n);
}

std::string Formula::str() const {
  if (!root_) return {};
  std::string out;
  print(root_.get(), out);
  return out;
}

}  // namespace bevholt
