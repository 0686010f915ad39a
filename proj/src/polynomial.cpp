#include "dq/polynomial.hpp"

#include <string>

#include "dq/errors.hpp"

namespace dq {

namespace {

void require_same_dim(int a, int b) {
  if (a != b) {
    throw UsageError("polynomial dimensions differ (" + std::to_string(a) + " vs " +
                     std::to_string(b) + ")");
  }
}

void require_var(int dim, int var) {
  if (var < 0 || var >= dim) {
    throw UsageError("variable index " + std::to_string(var + 1) + " out of range 1.." +
                     std::to_string(dim));
  }
}

// falling factorial e (e-1) ... (e-k+1)
Rational falling(unsigned e, unsigned k) {
  mpz_class r = 1;
  for (unsigned j = 0; j < k; ++j) r *= e - j;
  return Rational(r);
}

}  // namespace

Exponent zero_exponent(int dim) { return Exponent(static_cast<std::size_t>(dim), 0u); }

Exponent unit_exponent(int dim, int var) {
  require_var(dim, var);
  Exponent e = zero_exponent(dim);
  e[static_cast<std::size_t>(var)] = 1;
  return e;
}

Exponent operator+(const Exponent& a, const Exponent& b) {
  if (a.size() != b.size()) throw UsageError("exponent lengths differ");
  Exponent c(a);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += b[i];
  return c;
}

unsigned total_degree(const Exponent& e) {
  unsigned d = 0;
  for (unsigned v : e) d += v;
  return d;
}

Polynomial::Polynomial(int dim) : dim_(dim) {
  if (dim < 0) throw UsageError("negative dimension");
}

Polynomial::Polynomial(int dim, Terms terms) : Polynomial(dim) {
  for (auto& [e, c] : terms) {
    if (static_cast<int>(e.size()) != dim) throw UsageError("exponent length != dim");
    if (!c.is_zero()) terms_.emplace(e, std::move(c));
  }
}

Polynomial Polynomial::constant(int dim, const Gaussian& c) {
  return monomial(dim, zero_exponent(dim), c);
}

Polynomial Polynomial::variable(int dim, int var) {
  return monomial(dim, unit_exponent(dim, var));
}

Polynomial Polynomial::monomial(int dim, Exponent e, const Gaussian& c) {
  Polynomial p(dim);
  if (static_cast<int>(e.size()) != dim) throw UsageError("exponent length != dim");
  if (!c.is_zero()) p.terms_.emplace(std::move(e), c);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
}

Gaussian Polynomial::constant_term() const {
  auto it = terms_.find(zero_exponent(dim_));
  return it == terms_.end() ? Gaussian() : it->second;
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(total_degree(e)));
  return d;
}

void Polynomial::add_term(const Exponent& e, const Gaussian& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial r(*this);
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  require_same_dim(dim_, o.dim_);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  require_same_dim(dim_, o.dim_);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Gaussian& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  require_same_dim(a.dim_, b.dim_);
  Polynomial r(a.dim_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
  }
  return r;
}

Polynomial pow(const Polynomial& f, unsigned n) {
  Polynomial r = Polynomial::constant(f.dim(), 1);
  for (unsigned k = 0; k < n; ++k) r = r * f;
  return r;
}

Polynomial derivative(const Polynomial& f, int var) {
  require_var(f.dim(), var);
  return derivative(f, unit_exponent(f.dim(), var));
}

Polynomial derivative(const Polynomial& f, const Exponent& alpha) {
  if (static_cast<int>(alpha.size()) != f.dim()) throw UsageError("multi-index length != dim");
  Polynomial r(f.dim());
  for (const auto& [e, c] : f.terms()) {
    Exponent out(e);
    Rational factor = 1;
    bool vanishes = false;
    for (std::size_t i = 0; i < e.size() && !vanishes; ++i) {
      if (alpha[i] > e[i]) {
        vanishes = true;
      } else if (alpha[i] > 0) {
        factor *= falling(e[i], alpha[i]);
        out[i] -= alpha[i];
      }
    }
    if (!vanishes) r.add_term(out, c * Gaussian(factor));
  }
  return r;
}

Gaussian evaluate(const Polynomial& f, std::span<const Gaussian> point) {
  if (static_cast<int>(point.size()) != f.dim()) {
    throw UsageError("point has " + std::to_string(point.size()) + " coordinates, polynomial has " +
                     std::to_string(f.dim()) + " variables");
  }
  Gaussian sum;
  for (const auto& [e, c] : f.terms()) {
    Gaussian term = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (unsigned k = 0; k < e[i]; ++k) term *= point[i];
    }
    sum += term;
  }
  return sum;
}

}  // namespace dq
