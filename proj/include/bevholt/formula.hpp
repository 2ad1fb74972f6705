#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "bevholt/rational.hpp"
#include "bevholt/scalar.hpp"

namespace bevholt {

/// A coefficient expression over {n, +, -, *, /, sin, cos, pi, integer and
/// rational literals}. Decimal literals are accepted and held exactly.
///
/// Expressions without sin/cos/pi evaluate exactly in the rational backend;
/// everything evaluates in double. The printed canonical form re-parses to
/// an equivalent expression.
class Formula {
 public:
  struct Node;

  Formula() = default;

  static Formula parse(std::string_view source);

  bool empty() const { return !root_; }
  bool uses_n() const;
  /// True when the expression contains no sin, cos or pi and can therefore
  /// be evaluated without rounding.
  bool exact_capable() const;

  double eval_real(Index n) const;
  Rational eval_rational(Index n) const;  // throws DomainError unless exact_capable()

  std::string str() const;

 private:
  std::shared_ptr<const Node> root_;
};

}  // namespace bevholt
