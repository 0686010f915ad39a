#ifndef DQ_POLYVECTOR_HPP
#define DQ_POLYVECTOR_HPP

#include <map>
#include <vector>

#include "dq/polynomial.hpp"

namespace dq {

/// Strictly increasing 0-based index tuple (i_1 < ... < i_k) naming the
/// basis element d_{i_1} ^ ... ^ d_{i_k}.
using IndexTuple = std::vector<int>;

/// Homogeneous multivector field of geometric degree k with polynomial
/// components. Degree 0 is a function, stored under the empty tuple.
/// The DGLA degree (shifted grading) is k - 1.
class PolyVector {
 public:
  using Components = std::map<IndexTuple, Polynomial>;

  PolyVector(int dim, int degree);
  PolyVector(int dim, int degree, Components components);

  static PolyVector function(const Polynomial& f);
  /// d_var, 0-based.
  static PolyVector partial(int dim, int var);
  /// coeff * d_{i_1} ^ ... ^ d_{i_k}; indices in any order, the sign of
  /// the sorting permutation is applied and repeated indices give zero.
  static PolyVector basis(int dim, std::vector<int> indices, const Polynomial& coeff);

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  int dgla_degree() const { return degree_ - 1; }
  const Components& components() const { return components_; }
  bool is_zero() const { return components_.empty(); }
  /// Component X^{i_1...i_k}, zero when absent.
  Polynomial component(const IndexTuple& indices) const;

  PolyVector operator-() const;
  PolyVector& operator+=(const PolyVector& o);
  PolyVector& operator-=(const PolyVector& o);
  PolyVector& operator*=(const Gaussian& c);

  friend PolyVector operator+(PolyVector a, const PolyVector& b) { return a += b; }
  friend PolyVector operator-(PolyVector a, const PolyVector& b) { return a -= b; }
  friend PolyVector operator*(PolyVector a, const Gaussian& c) { return a *= c; }
  friend PolyVector operator*(const Gaussian& c, PolyVector a) { return a *= c; }
  friend bool operator==(const PolyVector& a, const PolyVector& b) {
    return a.dim_ == b.dim_ && a.degree_ == b.degree_ && a.components_ == b.components_;
  }

  void add_component(const IndexTuple& indices, const Polynomial& coeff);

 private:
  int dim_;
  int degree_;
  Components components_;
};

/// 1-form sum_i alpha_i dx_i.
class CovectorField {
 public:
  explicit CovectorField(std::vector<Polynomial> components);
  static CovectorField zero(int dim);

  int dim() const { return static_cast<int>(components_.size()); }
  const Polynomial& operator[](int i) const { return components_.at(static_cast<std::size_t>(i)); }
  const std::vector<Polynomial>& components() const { return components_; }

 private:
  std::vector<Polynomial> components_;
};

/// df = sum_i d_i f dx_i.
CovectorField differential(const Polynomial& f);

PolyVector wedge(const PolyVector& x, const PolyVector& y);

/// Multiplies every component by f; same as wedge with a degree-0 field.
PolyVector operator*(const Polynomial& f, const PolyVector& x);

/// Applies each component's polynomial partial derivative d/dx_var.
PolyVector derivative(const PolyVector& x, int var);

/// Schouten-Nijenhuis bracket, degree k + l - 1. Agrees with the Lie bracket
/// on vector fields and with the sign convention
///   [X_1^...^X_k, Y_1^...^Y_l] = sum (-1)^{i+j} [X_i,Y_j] ^ X_1..^X_i^.. ^ Y_1..^Y_j^..
/// on decomposable fields. For a function f, [X, f] is the contraction of
/// df into the last slot of X, so [X, f] = X(f) for a vector field X.
PolyVector schouten_bracket(const PolyVector& x, const PolyVector& y);

/// Vector field sharp(pi, alpha) with pi(alpha, beta) = <sharp(pi, alpha), beta>.
PolyVector sharp(const PolyVector& pi, const CovectorField& alpha);

/// {f, g} = sum_{i<j} pi^{ij} (d_i f d_j g - d_j f d_i g).
Polynomial poisson_bracket(const PolyVector& pi, const Polynomial& f, const Polynomial& g);

/// X_f = sharp(pi, df); X_f(g) = {f, g}.
PolyVector hamiltonian_vf(const PolyVector& pi, const Polynomial& f);

/// Vector field acting as a derivation: X(f) = sum_i X^i d_i f.
Polynomial apply_vector_field(const PolyVector& x, const Polynomial& f);

/// Evaluation against 1-forms with the determinant pairing
/// <d_{i_1}^...^d_{i_k}, a_1 (x) ... (x) a_k> = det[a_b(i_a)] (no 1/k!).
Polynomial pair(const PolyVector& x, const std::vector<CovectorField>& forms);

/// {f,{g,h}} + {g,{h,f}} + {h,{f,g}}.
Polynomial jacobiator(const PolyVector& pi, const Polynomial& f, const Polynomial& g,
                      const Polynomial& h);

struct PoissonCheck {
  bool poisson;
  /// [pi, pi]_S, zero iff pi is Poisson.
  PolyVector witness;
};

PoissonCheck is_poisson(const PolyVector& pi);

}  // namespace dq

#endif  // DQ_POLYVECTOR_HPP
