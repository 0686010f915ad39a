#ifndef DQ_FORMALITY_HPP
#define DQ_FORMALITY_HPP

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "dq/multidiff.hpp"
#include "dq/polyvector.hpp"

namespace dq {

/// D_X(a_1..a_k) = <X, da_1 ... da_k> with the determinant pairing, as an
/// arity-k operator. A function maps to the arity-0 cochain it defines.
MultiDiffOp hkr_map(const PolyVector& x);

/// hochschild_d(hkr_map(x)); zero for every x.
MultiDiffOp hkr_chain_check(const PolyVector& x);

struct BracketDefect {
  /// hkr([X,Y]_S) - [hkr X, hkr Y]_G
  MultiDiffOp defect;
  /// hochschild_d(defect) == 0
  bool closed;
};

BracketDefect hkr_bracket_defect(const PolyVector& x, const PolyVector& y);

/// First two Taylor components of a would-be L-infinity morphism from
/// multivector fields to multidifferential operators.
struct LInftyMapFamily {
  std::function<MultiDiffOp(const PolyVector&)> f1;
  std::function<MultiDiffOp(const PolyVector&, const PolyVector&)> f2;
};

/// f1 = hkr_map, f2 = 0.
LInftyMapFamily hkr_family();
/// f1 = 0, f2 = 0.
LInftyMapFamily zero_family();

struct LInftySample {
  /// f2(x, y) = -(-1)^{|x||y|} f2(y, x), shifted degrees.
  bool antisymmetric;
  /// d f1(x) = 0 and d f1(y) = 0 (the source differential is zero).
  bool chain_map;
  /// f1([x,y]_S) - [f1 x, f1 y]_G = d f2(x, y).
  bool bracket_homotopy;

  bool passed() const { return antisymmetric && chain_map && bracket_homotopy; }
};

struct LInftyReport {
  std::vector<LInftySample> samples;

  bool passed() const;
};

/// Checks the low-arity L-infinity conditions on every sample pair; both
/// entries of a pair must have geometric degree >= 1.
LInftyReport linfty_check(const LInftyMapFamily& family,
                          std::span<const std::pair<PolyVector, PolyVector>> samples);

}  // namespace dq

#endif  // DQ_FORMALITY_HPP
