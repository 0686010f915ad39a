#include "dq/scalar.hpp"

#include <ostream>

#include "dq/errors.hpp"

namespace dq {

Rational parse_rational(const std::string& text) {
  Rational q;
  if (q.set_str(text, 10) != 0) {
    throw UsageError("not a rational number: '" + text + "'");
  }
  if (sgn(q.get_den()) == 0) throw DomainError("zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Gaussian& Gaussian::operator+=(const Gaussian& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

Gaussian& Gaussian::operator-=(const Gaussian& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

Gaussian& Gaussian::operator*=(const Gaussian& o) {
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

Gaussian& Gaussian::operator/=(const Gaussian& o) {
  if (o.is_zero()) throw DomainError("division by zero");
  const Rational n = o.norm();
  *this *= o.conj();
  re_ /= n;
  im_ /= n;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Gaussian& z) {
  if (z.is_real()) return os << z.re().get_str();
  return os << '(' << z.re().get_str() << (sgn(z.im()) < 0 ? " - " : " + ")
            << Rational(abs(z.im())).get_str() << "*i)";
}

Rational factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(f);
}

}  // namespace dq
