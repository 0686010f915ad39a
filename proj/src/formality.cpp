#include "dq/formality.hpp"

#include <algorithm>

#include "dq/errors.hpp"

namespace dq {

MultiDiffOp hkr_map(const PolyVector& x) {
  const int n = x.dim();
  const int k = x.degree();
  if (k < 0) throw DomainError("hkr_map needs a multivector of degree >= 0");
  MultiDiffOp d(n, k);
  for (const auto& [idx, c] : x.components()) {
    // det[d_{i_a} a_b] = sum_sigma sgn(sigma) prod_b d_{i_sigma(b)} a_b
    std::vector<int> perm(static_cast<std::size_t>(k));
    for (int a = 0; a < k; ++a) perm[static_cast<std::size_t>(a)] = a;
    do {
      int inversions = 0;
      for (int a = 0; a < k; ++a) {
        for (int b = a + 1; b < k; ++b) {
          if (perm[static_cast<std::size_t>(a)] > perm[static_cast<std::size_t>(b)]) ++inversions;
        }
      }
      SlotKey key;
      for (int b = 0; b < k; ++b) key.push_back(unit_exponent(n, idx[static_cast<std::size_t>(perm[static_cast<std::size_t>(b)])]));
      d.add_term(key, inversions % 2 == 0 ? c : -c);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return d;
}

MultiDiffOp hkr_chain_check(const PolyVector& x) { return hochschild_d(hkr_map(x)); }

BracketDefect hkr_bracket_defect(const PolyVector& x, const PolyVector& y) {
  MultiDiffOp defect = hkr_map(schouten_bracket(x, y)) - gerst_bracket(hkr_map(x), hkr_map(y));
  const bool closed = hochschild_d(defect).is_zero();
  return {std::move(defect), closed};
}

LInftyMapFamily hkr_family() {
  return {[](const PolyVector& x) { return hkr_map(x); },
          [](const PolyVector& x, const PolyVector& y) {
            return MultiDiffOp(x.dim(), x.degree() + y.degree() - 2);
          }};
}

LInftyMapFamily zero_family() {
  return {[](const PolyVector& x) { return MultiDiffOp(x.dim(), x.degree()); },
          [](const PolyVector& x, const PolyVector& y) {
            return MultiDiffOp(x.dim(), x.degree() + y.degree() - 2);
          }};
}

bool LInftyReport::passed() const {
  return std::all_of(samples.begin(), samples.end(), [](const auto& s) { return s.passed(); });
}

LInftyReport linfty_check(const LInftyMapFamily& family,
                          std::span<const std::pair<PolyVector, PolyVector>> samples) {
  LInftyReport report;
  for (const auto& [x, y] : samples) {
    if (x.degree() < 1 || y.degree() < 1) {
      throw DomainError("L-infinity samples need multivectors of degree >= 1");
    }
    LInftySample s{};
    const MultiDiffOp fxy = family.f2(x, y);
    const MultiDiffOp fyx = family.f2(y, x);
    const bool even = (x.dgla_degree() * y.dgla_degree()) % 2 == 0;
    s.antisymmetric = even ? fxy == -fyx : fxy == fyx;

    const MultiDiffOp fx = family.f1(x);
    const MultiDiffOp fy = family.f1(y);
    s.chain_map = hochschild_d(fx).is_zero() && hochschild_d(fy).is_zero();

    const MultiDiffOp defect = family.f1(schouten_bracket(x, y)) - gerst_bracket(fx, fy);
    s.bracket_homotopy = defect == hochschild_d(fxy);
    report.samples.push_back(s);
  }
  return report;
}

}  // namespace dq
