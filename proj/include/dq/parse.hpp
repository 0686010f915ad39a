#ifndef DQ_PARSE_HPP
#define DQ_PARSE_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dq/multidiff.hpp"
#include "dq/polynomial.hpp"
#include "dq/polyvector.hpp"
#include "dq/scalar.hpp"
#include "dq/series.hpp"

namespace dq {

/// What an expression is expected to denote.
///  - polynomial:  x1**2 - 1/2*i*x2        (no d tokens, no wedge)
///  - multivector: d1^d2 + x2*d2^d3        (no operator slots)
///  - operator:    x1 [ d1 | d2 d2 ] - [ | d1 ]
/// Variables and partials are 1-based in text.
enum class ExprKind { polynomial, multivector, operator_ };

/// Parse tree of the expression language.
struct Expression {
  enum class Node {
    rational,        // value
    imaginary_unit,  // i
    variable,        // x<index+1>
    partial,         // d<index+1>
    negate,          // -child
    sum,             // children[0] + children[1] + ...
    product,         // children[0] * children[1]
    quotient,        // children[0] / children[1]
    power,           // children[0] ** exponent
    wedge,           // children[0] ^ children[1]
    slots,           // optional coefficient children[0], derivative lists in `slots`
  };

  Node node = Node::rational;
  Rational value{0};
  int index = 0;
  unsigned exponent = 0;
  std::vector<Expression> children;
  std::vector<std::vector<int>> slots;
  std::size_t position = 0;
};

Expression parse(std::string_view text, ExprKind kind);

/// An h-series in text form: "0: x1*d1; 1: d2" (order: expression pairs).
/// A bare expression is the series concentrated in order 0.
struct SeriesExpression {
  std::vector<std::pair<int, Expression>> entries;

  int max_order() const;
};

SeriesExpression parse_series(std::string_view text, ExprKind kind);

/// Largest 1-based variable/partial index used, 0 if none.
int max_index(const Expression& e);
int max_index(const SeriesExpression& s);

Polynomial to_polynomial(const Expression& e, int dim);
PolyVector to_polyvector(const Expression& e, int dim);
MultiDiffOp to_operator(const Expression& e, int dim);

/// Series values with the given truncation order (must cover every entry).
HbarSeries<Polynomial> to_polynomial_series(const SeriesExpression& s, int dim, int order);
HbarSeries<PolyVector> to_polyvector_series(const SeriesExpression& s, int dim, int order,
                                            int degree);
HbarSeries<MultiDiffOp> to_operator_series(const SeriesExpression& s, int dim, int order,
                                           int arity);

/// Canonical text forms; parsing them back yields an equal value.
std::string print(const Gaussian& c);
std::string print(const Polynomial& f);
std::string print(const PolyVector& x);
std::string print(const MultiDiffOp& d);

/// "k: expr; ..." with zero coefficients omitted; "0" for the zero series.
template <class C>
std::string print_series(const HbarSeries<C>& s) {
  std::string out;
  for (int k = 0; k <= s.order(); ++k) {
    if (s[k].is_zero()) continue;
    if (!out.empty()) out += "; ";
    out += std::to_string(k) + ": " + print(s[k]);
  }
  return out.empty() ? "0" : out;
}

}  // namespace dq

#endif  // DQ_PARSE_HPP
