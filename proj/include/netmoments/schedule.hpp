#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace netmoments {

/// Arithmetic expression in one variable `n`, used for sparsity schedules
/// such as "0.25*n^-0.1". Grammar:
///
///   expr   := term (('+' | '-') term)*
///   term   := unary (('*' | '/') unary)*
///   unary  := ('-' | '+') unary | power
///   power  := atom ('^' unary)?
///   atom   := number | 'n' | '(' expr ')'
class RateExpression {
 public:
  static RateExpression parse(std::string_view text);

  double operator()(double n) const;
  const std::string& text() const noexcept { return text_; }

  struct Node;

 private:
  std::string text_;
  std::shared_ptr<const Node> root_;
};

}  // namespace netmoments
