#ifndef DQ_SCALAR_HPP
#define DQ_SCALAR_HPP

#include <gmpxx.h>

#include <iosfwd>
#include <string>

namespace dq {

/// Arbitrary-precision rational, always kept in lowest terms.
using Rational = mpq_class;

Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);

/// Exact element re + i*im of the Gaussian rationals Q(i).
class Gaussian {
 public:
  Gaussian() = default;
  Gaussian(long value) : re_(value) {}  // NOLINT(google-explicit-constructor)
  Gaussian(Rational re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
  Gaussian(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static Gaussian i() { return {Rational(0), Rational(1)}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  Gaussian conj() const { return {re_, -im_}; }
  /// |z|^2, always rational.
  Rational norm() const { return re_ * re_ + im_ * im_; }

  Gaussian operator-() const { return {-re_, -im_}; }
  Gaussian& operator+=(const Gaussian& o);
  Gaussian& operator-=(const Gaussian& o);
  Gaussian& operator*=(const Gaussian& o);
  Gaussian& operator/=(const Gaussian& o);

  friend Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
  friend Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
  friend Gaussian operator*(Gaussian a, const Gaussian& b) { return a *= b; }
  friend Gaussian operator/(Gaussian a, const Gaussian& b) { return a /= b; }
  friend bool operator==(const Gaussian& a, const Gaussian& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

 private:
  Rational re_{0};
  Rational im_{0};
};

std::ostream& operator<<(std::ostream& os, const Gaussian& z);

/// n! as an exact rational.
Rational factorial(unsigned n);

}  // namespace dq

#endif  // DQ_SCALAR_HPP
