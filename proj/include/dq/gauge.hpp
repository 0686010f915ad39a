#ifndef DQ_GAUGE_HPP
#define DQ_GAUGE_HPP

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dq/multidiff.hpp"
#include "dq/polyvector.hpp"
#include "dq/series.hpp"
#include "dq/star.hpp"

namespace dq {

using FormalVectorField = HbarSeries<PolyVector>;
using FormalBivector = HbarSeries<PolyVector>;

/// Bracket and differential of a DGLA whose elements have type E. An empty
/// `differential` means d = 0.
template <class E>
struct Dgla {
  std::function<E(const E&, const E&)> bracket;
  std::function<E(const E&)> differential;
};

Dgla<PolyVector> schouten_dgla();
Dgla<MultiDiffOp> gerstenhaber_dgla();

/// Cauchy product of two series under a bilinear bracket.
template <class E>
HbarSeries<E> series_bracket(const HbarSeries<E>& a, const HbarSeries<E>& b, const Dgla<E>& g) {
  return mul(a, b, g.bracket);
}

namespace detail {

template <class E>
bool all_zero(const HbarSeries<E>& a) {
  for (const E& c : a) {
    if (!c.is_zero()) return false;
  }
  return true;
}

template <class E>
HbarSeries<E> scale(const HbarSeries<E>& a, const Gaussian& c) {
  return map_coeffs(a, [&](const E& x) { return x * c; });
}

}  // namespace detail

/// Gauge action of exp(g) on a for g of degree 0 with zero h^0 term:
///   exp(g) a = sum_n (ad g)^n / n! (a) - sum_n (ad g)^n / (n+1)! (dg).
/// Both sums terminate after order(a) steps because g = O(h).
template <class E>
HbarSeries<E> gauge_act_dgla(const HbarSeries<E>& g, const HbarSeries<E>& a, const Dgla<E>& dgla) {
  detail::require_same_order(g.order(), a.order(), "gauge action");
  if (!g[0].is_zero()) throw DomainError("gauge element must be divisible by h");
  HbarSeries<E> result = a;
  HbarSeries<E> term = a;
  for (int n = 1; n <= a.order() && !detail::all_zero(term); ++n) {
    term = detail::scale(series_bracket(g, term, dgla), Gaussian(Rational(1, n)));
    result = result + term;
  }
  if (dgla.differential) {
    // t_n = (ad g)^n (dg) / (n+1)!
    HbarSeries<E> t = map_coeffs(g, dgla.differential);
    result = result - t;
    for (int n = 1; n <= a.order() && !detail::all_zero(t); ++n) {
      t = detail::scale(series_bracket(g, t, dgla), Gaussian(Rational(1, n + 1)));
      result = result - t;
    }
  }
  return result;
}

/// Coefficients of the Dynkin series for log(e^x e^y): maps each word in
/// the letters 'x', 'y' of length <= max_length to the coefficient of its
/// right-nested commutator [w_1, [w_2, ..., [w_{L-1}, w_L]]].
std::map<std::string, Rational> dynkin_coefficients(int max_length);

/// log(exp(x) exp(y)) for x, y with zero h^0 term, as a series of the same
/// order, via the Dynkin series in nested brackets.
template <class E, class Bracket>
HbarSeries<E> bch_series(const HbarSeries<E>& x, const HbarSeries<E>& y, Bracket&& bracket) {
  detail::require_same_order(x.order(), y.order(), "bch");
  if (!x[0].is_zero() || !y[0].is_zero()) throw DomainError("bch arguments must be divisible by h");
  const int n = x.order();
  auto br = [&](const HbarSeries<E>& a, const HbarSeries<E>& b) { return mul(a, b, bracket); };
  HbarSeries<E> z = x + y;
  std::map<std::string, HbarSeries<E>> suffix;  // right-nested bracket of each suffix
  for (const auto& [word, coef] : dynkin_coefficients(n)) {
    if (word.size() < 2) continue;
    HbarSeries<E> v = word.back() == 'x' ? x : y;
    for (std::size_t k = word.size() - 1; k-- > 0;) {
      const std::string tail = word.substr(k);
      auto it = suffix.find(tail);
      if (it == suffix.end()) {
        v = br(word[k] == 'x' ? x : y, v);
        suffix.emplace(tail, v);
      } else {
        v = it->second;
      }
    }
    z = z + detail::scale(v, Gaussian(coef));
  }
  return z;
}

/// Z with exp(hZ) = exp(hX) exp(hY) through order N = order of X and Y;
/// brackets are Schouten brackets of vector fields.
FormalVectorField bch(const FormalVectorField& x, const FormalVectorField& y);

/// sum_n h^n sum_{i+j+k=n} pi_i(df_j, dg_k).
FormalFunction formal_poisson_bracket(const FormalBivector& pi, const FormalFunction& f,
                                      const FormalFunction& g);

/// 1/2 sum_n h^n sum_{a+b=n} [pi_a, pi_b]_S (the differential is zero).
HbarSeries<PolyVector> mc_residual_poisson(const FormalBivector& pi);

/// exp(L) pi with L = sum_k h^{k+1} [X_k, .]_S, i.e. the Schouten gauge
/// action of g = hX.
FormalBivector gauge_apply_bivector(const FormalVectorField& x, const FormalBivector& pi);

/// h * a, keeping the order (the top coefficient of a is dropped).
template <class E>
HbarSeries<E> times_h(const HbarSeries<E>& a, const E& zero) {
  return shift(a, 1, zero, [](const E& c) { return c.is_zero(); });
}

}  // namespace dq

#endif  // DQ_GAUGE_HPP
