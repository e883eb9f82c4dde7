#include "netmoments/schedule.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

#include "netmoments/error.hpp"

namespace netmoments {

struct RateExpression::Node {
  char op = 0;  // 0 number, 'n' variable, or one of + - * / ^ ~ (negation)
  double value = 0.0;
  std::shared_ptr<const Node> left, right;
};

namespace {

using NodePtr = std::shared_ptr<const RateExpression::Node>;

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    NodePtr root = expr();
    skip();
    if (pos_ != text_.size()) error("unexpected '" + std::string(1, text_[pos_]) + "'");
    return root;
  }

 private:
  static NodePtr make(char op, NodePtr l, NodePtr r = nullptr, double value = 0.0) {
    auto node = std::make_shared<RateExpression::Node>();
    node->op = op;
    node->value = value;
    node->left = std::move(l);
    node->right = std::move(r);
    return node;
  }

  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorCode::parse, "rate expression '" + std::string(text_) + "' at offset " + std::to_string(pos_) + ": " + what);
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr left = term();
    for (;;) {
      if (accept('+')) left = make('+', left, term());
      else if (accept('-')) left = make('-', left, term());
      else return left;
    }
  }

  NodePtr term() {
    NodePtr left = unary();
    for (;;) {
      if (accept('*')) left = make('*', left, unary());
      else if (accept('/')) left = make('/', left, unary());
      else return left;
    }
  }

  NodePtr unary() {
    if (accept('-')) return make('~', unary());
    if (accept('+')) return unary();
    return power();
  }

  // Right associative; the exponent may carry a sign, as in n^-0.1.
  NodePtr power() {
    NodePtr base = atom();
    if (accept('^')) return make('^', base, unary());
    return base;
  }

  NodePtr atom() {
    skip();
    if (pos_ >= text_.size()) error("unexpected end of input");
    if (accept('(')) {
      NodePtr inner = expr();
      if (!accept(')')) error("missing ')'");
      return inner;
    }
    if (text_[pos_] == 'n') {
      ++pos_;
      return make('n', nullptr);
    }
    const std::string rest(text_.substr(pos_));
    char* end = nullptr;
    const double value = std::strtod(rest.c_str(), &end);
    if (end == rest.c_str()) error("expected a number, 'n' or '('");
    pos_ += static_cast<std::size_t>(end - rest.c_str());
    return make(0, nullptr, nullptr, value);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

double evaluate(const RateExpression::Node& node, double n) {
  switch (node.op) {
    case 0: return node.value;
    case 'n': return n;
    case '~': return -evaluate(*node.left, n);
    case '+': return evaluate(*node.left, n) + evaluate(*node.right, n);
    case '-': return evaluate(*node.left, n) - evaluate(*node.right, n);
    case '*': return evaluate(*node.left, n) * evaluate(*node.right, n);
    case '/': return evaluate(*node.left, n) / evaluate(*node.right, n);
    case '^': return std::pow(evaluate(*node.left, n), evaluate(*node.right, n));
  }
  fail(ErrorCode::parse, "corrupt rate expression");
}

}  // namespace

RateExpression RateExpression::parse(std::string_view text) {
  RateExpression out;
  out.text_ = std::string(text);
  out.root_ = Parser(text).parse();
  return out;
}

double RateExpression::operator()(double n) const { return evaluate(*root_, n); }

}  // namespace netmoments
