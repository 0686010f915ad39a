#ifndef DQ_STAR_HPP
#define DQ_STAR_HPP

#include <vector>

#include "dq/multidiff.hpp"
#include "dq/polyvector.hpp"
#include "dq/series.hpp"

namespace dq {

using FormalFunction = HbarSeries<Polynomial>;
using OperatorSeries = HbarSeries<MultiDiffOp>;

/// f * g = fg + sum_{k=1}^N h^k P_k(f, g), stored with P_0 = m.
/// Construction checks P_0 = m and that every P_k (k >= 1) is a normalized
/// bidifferential operator, so 1 is a two-sided unit. Associativity is not
/// checked here; see associator_residual and mc_residual_star.
class StarProduct {
 public:
  explicit StarProduct(OperatorSeries terms);

  int dim() const { return terms_[0].dim(); }
  int order() const { return terms_.order(); }
  const OperatorSeries& terms() const { return terms_; }
  const MultiDiffOp& operator[](int k) const { return terms_[k]; }
  /// The deformation P = sum_{k>=1} h^k P_k (zero at h^0).
  OperatorSeries deformation() const;

  static StarProduct from_deformation(const OperatorSeries& p);

 private:
  OperatorSeries terms_;
};

/// T(a) = a + sum_{k>=1} h^k T_k(a); T_0 = id and every T_k is normalized
/// (so T(1) = 1).
class EquivalenceOp {
 public:
  explicit EquivalenceOp(OperatorSeries terms);

  int dim() const { return terms_[0].dim(); }
  int order() const { return terms_.order(); }
  const OperatorSeries& terms() const { return terms_; }

  /// Composition inverse, computed order by order.
  OperatorSeries inverse() const;

 private:
  OperatorSeries terms_;
};

/// Zero formal function of the given order.
FormalFunction formal_zero(int dim, int order);
/// f regarded as a formal function concentrated in h^0.
FormalFunction formal_constant(const Polynomial& f, int order);

/// Full antisymmetric coefficient matrix of a bivector, a[i][j] = pi^{ij}.
std::vector<std::vector<Polynomial>> bivector_matrix(const PolyVector& pi);

/// Bivector from an antisymmetric matrix; throws UsageError when the
/// matrix is not square or not antisymmetric.
PolyVector bivector_from_matrix(const std::vector<std::vector<Gaussian>>& alpha);

/// Moyal product with constant Poisson tensor alpha,
///   P_k = (1/k!) (i/2)^k alpha^{i_1 j_1} .. alpha^{i_k j_k} d_{i_1..i_k} (x) d_{j_1..j_k}.
/// Non-constant coefficients are rejected with DomainError.
StarProduct moyal_star(const PolyVector& alpha, int order);

/// Standard symplectic tensor sum_i d_{q_i} ^ d_{p_i} on R^{2n} with
/// q_i = x_i and p_i = x_{n+i}.
PolyVector darboux_bivector(int n);

/// sum_n h^n sum_{a+b+c=n} P_a(F_b, G_c).
FormalFunction star_apply(const StarProduct& s, const FormalFunction& f, const FormalFunction& g);

/// (f*g)*h - f*(g*h), truncated at the star's order.
FormalFunction associator_residual(const StarProduct& s, const Polynomial& f,
                                   const Polynomial& g, const Polynomial& h);

/// The bivector beta with beta(df, dg) = P_1(f, g) - P_1(g, f). Throws
/// DomainError naming the first term whose skew part is not first order in
/// both slots.
PolyVector first_order_skew(const StarProduct& s);

/// dP + 1/2 [P, P]_G order by order; requires P_0 = 0.
OperatorSeries mc_residual_star(const OperatorSeries& p);

/// The star product a *' b = T(T^{-1} a * T^{-1} b).
StarProduct equivalence_apply(const EquivalenceOp& t, const StarProduct& s);

/// Composition product of arity-1 operator series.
OperatorSeries compose(const OperatorSeries& a, const OperatorSeries& b);

}  // namespace dq

#endif  // DQ_STAR_HPP
