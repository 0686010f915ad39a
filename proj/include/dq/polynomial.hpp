#ifndef DQ_POLYNOMIAL_HPP
#define DQ_POLYNOMIAL_HPP

#include <map>
#include <span>
#include <vector>

#include "dq/scalar.hpp"

namespace dq {

/// Exponent vector (e_1, ..., e_n) of a monomial; also used as a
/// derivative multi-index, where entry i counts the factors of d_i.
using Exponent = std::vector<unsigned>;

Exponent zero_exponent(int dim);
Exponent unit_exponent(int dim, int var);
Exponent operator+(const Exponent& a, const Exponent& b);
unsigned total_degree(const Exponent& e);

/// Polynomial in x_1..x_n with Gaussian rational coefficients. Zero
/// coefficients are never stored, so equality is structural. Variables are
/// 0-based in the C++ interface (x_1 is variable 0).
class Polynomial {
 public:
  using Terms = std::map<Exponent, Gaussian>;

  /// The zero polynomial in `dim` variables.
  explicit Polynomial(int dim);
  Polynomial(int dim, Terms terms);

  static Polynomial constant(int dim, const Gaussian& c);
  static Polynomial variable(int dim, int var);
  static Polynomial monomial(int dim, Exponent e, const Gaussian& c = Gaussian(1));

  int dim() const { return dim_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Coefficient of the constant monomial.
  Gaussian constant_term() const;
  /// Largest total degree of a term; -1 for the zero polynomial.
  int degree() const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Gaussian& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Gaussian& c) { return a *= c; }
  friend Polynomial operator*(const Gaussian& c, Polynomial a) { return a *= c; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }

  /// Adds c * x^e in place.
  void add_term(const Exponent& e, const Gaussian& c);

 private:
  int dim_;
  Terms terms_;
};

Polynomial pow(const Polynomial& f, unsigned n);

/// Partial derivative with respect to variable `var` (0-based).
Polynomial derivative(const Polynomial& f, int var);

/// Mixed partial derivative d^alpha f for a derivative multi-index alpha.
Polynomial derivative(const Polynomial& f, const Exponent& alpha);

Gaussian evaluate(const Polynomial& f, std::span<const Gaussian> point);

}  // namespace dq

#endif  // DQ_POLYNOMIAL_HPP
