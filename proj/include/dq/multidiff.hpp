#ifndef DQ_MULTIDIFF_HPP
#define DQ_MULTIDIFF_HPP

#include <map>
#include <vector>

#include "dq/polynomial.hpp"

namespace dq {

/// One derivative multi-index per argument slot.
using SlotKey = std::vector<Exponent>;

/// Multidifferential operator A^{(x) n} -> A on polynomials,
///   D(a_1, ..., a_n) = sum_terms c(x) * prod_j d^{alpha_j} a_j.
/// Terms with equal slot keys are merged and zero coefficients dropped, so
/// equality is structural. Arity 0 operators are constant cochains (a
/// single polynomial under the empty key). DGLA degree is arity - 1.
class MultiDiffOp {
 public:
  using Terms = std::map<SlotKey, Polynomial>;

  MultiDiffOp(int dim, int arity);
  MultiDiffOp(int dim, int arity, Terms terms);

  /// Arity-1 identity.
  static MultiDiffOp identity(int dim);
  /// Arity-0 cochain with value f.
  static MultiDiffOp constant(const Polynomial& f);

  int dim() const { return dim_; }
  int arity() const { return arity_; }
  int dgla_degree() const { return arity_ - 1; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const SlotKey& key, const Polynomial& coeff);

  MultiDiffOp operator-() const;
  MultiDiffOp& operator+=(const MultiDiffOp& o);
  MultiDiffOp& operator-=(const MultiDiffOp& o);
  MultiDiffOp& operator*=(const Gaussian& c);

  friend MultiDiffOp operator+(MultiDiffOp a, const MultiDiffOp& b) { return a += b; }
  friend MultiDiffOp operator-(MultiDiffOp a, const MultiDiffOp& b) { return a -= b; }
  friend MultiDiffOp operator*(MultiDiffOp a, const Gaussian& c) { return a *= c; }
  friend MultiDiffOp operator*(const Gaussian& c, MultiDiffOp a) { return a *= c; }
  friend bool operator==(const MultiDiffOp& a, const MultiDiffOp& b) {
    return a.dim_ == b.dim_ && a.arity_ == b.arity_ && a.terms_ == b.terms_;
  }

 private:
  int dim_;
  int arity_;
  Terms terms_;
};

Polynomial apply(const MultiDiffOp& d, const std::vector<Polynomial>& args);

/// The pointwise product m(a, b) = ab.
MultiDiffOp mult_op(int dim);

/// D(a_1, .., a_j, E(a_{j+1}, .., a_{j+m}), ..) with the outer derivatives
/// distributed over E's terms by the Leibniz rule. `slot` is 0-based.
MultiDiffOp insert(const MultiDiffOp& d, int slot, const MultiDiffOp& e);

/// D o E = sum_j (-1)^{(m-1) j} insert(D, j, E); arity n + m - 1.
MultiDiffOp gerst_product(const MultiDiffOp& d, const MultiDiffOp& e);

/// [D, E]_G = D o E - (-1)^{(n-1)(m-1)} E o D.
MultiDiffOp gerst_bracket(const MultiDiffOp& d, const MultiDiffOp& e);

/// Hochschild differential d = [m, .]_G.
MultiDiffOp hochschild_d(const MultiDiffOp& d);

/// True when every term differentiates every argument, i.e. D vanishes as
/// soon as one argument is constant. Requires arity >= 1.
bool is_normalized(const MultiDiffOp& d);

/// Swaps the two slots of a bidifferential operator: D^t(f, g) = D(g, f).
MultiDiffOp transpose(const MultiDiffOp& d);

/// Largest number of derivatives in any single slot of any term.
unsigned max_slot_order(const MultiDiffOp& d);

}  // namespace dq

#endif  // DQ_MULTIDIFF_HPP
