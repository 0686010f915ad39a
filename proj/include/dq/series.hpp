#ifndef DQ_SERIES_HPP
#define DQ_SERIES_HPP

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "dq/errors.hpp"
#include "dq/scalar.hpp"

namespace dq {

/// Truncated formal power series a_0 + a_1 h + ... + a_N h^N in the formal
/// parameter h, with coefficients in C. The truncation order N is fixed at
/// construction and all N+1 coefficients are stored, zeros included.
///
/// C needs value semantics, +, - and unary -. Products are supplied by the
/// caller (see `mul`) because the coefficient product depends on context:
/// scalar product, pointwise product of functions, wedge, composition, ...
template <class C>
class HbarSeries {
 public:
  using value_type = C;

  /// The zero series of order `order`, every coefficient equal to `zero`.
  HbarSeries(int order, const C& zero) {
    if (order < 0) throw UsageError("negative truncation order");
    coeffs_.assign(static_cast<std::size_t>(order) + 1, zero);
  }

  /// Order is coeffs.size() - 1.
  explicit HbarSeries(std::vector<C> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw UsageError("a series needs at least one coefficient");
  }

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const C& operator[](int k) const { return coeffs_.at(static_cast<std::size_t>(k)); }
  const std::vector<C>& coeffs() const { return coeffs_; }

  auto begin() const { return coeffs_.begin(); }
  auto end() const { return coeffs_.end(); }

  friend bool operator==(const HbarSeries& a, const HbarSeries& b) {
    return a.coeffs_ == b.coeffs_;
  }

 private:
  std::vector<C> coeffs_;
};

namespace detail {

inline void require_same_order(int a, int b, const char* op) {
  if (a != b) {
    throw UsageError(std::string(op) + ": truncation orders differ (" + std::to_string(a) +
                     " vs " + std::to_string(b) + "); re-truncate explicitly");
  }
}

}  // namespace detail

template <class C>
HbarSeries<C> operator+(const HbarSeries<C>& a, const HbarSeries<C>& b) {
  detail::require_same_order(a.order(), b.order(), "series add");
  std::vector<C> out;
  out.reserve(a.coeffs().size());
  for (int k = 0; k <= a.order(); ++k) out.push_back(a[k] + b[k]);
  return HbarSeries<C>(std::move(out));
}

template <class C>
HbarSeries<C> operator-(const HbarSeries<C>& a, const HbarSeries<C>& b) {
  detail::require_same_order(a.order(), b.order(), "series subtract");
  std::vector<C> out;
  out.reserve(a.coeffs().size());
  for (int k = 0; k <= a.order(); ++k) out.push_back(a[k] - b[k]);
  return HbarSeries<C>(std::move(out));
}

template <class C>
HbarSeries<C> operator-(const HbarSeries<C>& a) {
  std::vector<C> out;
  out.reserve(a.coeffs().size());
  for (const C& c : a) out.push_back(-c);
  return HbarSeries<C>(std::move(out));
}

/// Apply `f` to every coefficient.
template <class C, class F>
auto map_coeffs(const HbarSeries<C>& a, F&& f) {
  using R = std::decay_t<std::invoke_result_t<F&, const C&>>;
  std::vector<R> out;
  out.reserve(a.coeffs().size());
  for (const C& c : a) out.push_back(f(c));
  return HbarSeries<R>(std::move(out));
}

/// Cauchy product c_n = sum_k product(a_k, b_{n-k}), truncated at the common order.
template <class A, class B, class Product>
auto mul(const HbarSeries<A>& a, const HbarSeries<B>& b, Product&& product) {
  detail::require_same_order(a.order(), b.order(), "series multiply");
  using R = std::decay_t<std::invoke_result_t<Product&, const A&, const B&>>;
  std::vector<R> out;
  out.reserve(a.coeffs().size());
  for (int n = 0; n <= a.order(); ++n) {
    R acc = product(a[0], b[n]);
    for (int k = 1; k <= n; ++k) acc = acc + product(a[k], b[n - k]);
    out.push_back(std::move(acc));
  }
  return HbarSeries<R>(std::move(out));
}

template <class C>
HbarSeries<C> operator*(const HbarSeries<C>& a, const HbarSeries<C>& b) {
  return mul(a, b, [](const C& x, const C& y) { return x * y; });
}

/// Keep coefficients 0..order. Raising the order pads with `zero`.
template <class C>
HbarSeries<C> truncate(const HbarSeries<C>& a, int order, const C& zero) {
  if (order < 0) throw UsageError("negative truncation order");
  std::vector<C> out;
  out.reserve(static_cast<std::size_t>(order) + 1);
  for (int k = 0; k <= order; ++k) out.push_back(k <= a.order() ? a[k] : zero);
  return HbarSeries<C>(std::move(out));
}

template <class C>
HbarSeries<C> truncate(const HbarSeries<C>& a, int order) {
  if (order > a.order()) throw UsageError("truncate cannot raise the order without a zero");
  return truncate(a, order, a[0]);
}

/// Multiply by h^shift (shift > 0) or divide by h^-shift (shift < 0), keeping
/// the order. Dividing requires the dropped low coefficients to be zero.
template <class C, class IsZero>
HbarSeries<C> shift(const HbarSeries<C>& a, int by, const C& zero, IsZero&& is_zero) {
  std::vector<C> out;
  out.reserve(a.coeffs().size());
  for (int k = 0; k <= a.order(); ++k) {
    const int src = k - by;
    out.push_back(src >= 0 && src <= a.order() ? a[src] : zero);
  }
  for (int k = 0; k < -by && k <= a.order(); ++k) {
    if (!is_zero(a[k])) throw DomainError("series shift would discard a nonzero coefficient");
  }
  return HbarSeries<C>(std::move(out));
}

/// Two-sided inverse of a series whose constant coefficient `a_0` has an
/// inverse `inv0`, in the (possibly non-commutative) ring given by `product`.
/// Order-by-order recursion b_n = -inv0 * sum_{k>=1} a_k b_{n-k}.
template <class C, class Product>
HbarSeries<C> invert(const HbarSeries<C>& a, const C& inv0, Product&& product) {
  std::vector<C> b;
  b.reserve(a.coeffs().size());
  b.push_back(inv0);
  for (int n = 1; n <= a.order(); ++n) {
    C acc = product(a[1], b[static_cast<std::size_t>(n - 1)]);
    for (int k = 2; k <= n; ++k) acc = acc + product(a[k], b[static_cast<std::size_t>(n - k)]);
    b.push_back(-product(inv0, acc));
  }
  return HbarSeries<C>(std::move(b));
}

/// Scalar series inverse; throws DomainError when a_0 = 0.
inline HbarSeries<Gaussian> invert(const HbarSeries<Gaussian>& a) {
  if (a[0].is_zero()) throw DomainError("series is not invertible: zero constant term");
  return invert(a, Gaussian(1) / a[0], [](const Gaussian& x, const Gaussian& y) { return x * y; });
}

using ScalarSeries = HbarSeries<Gaussian>;

}  // namespace dq

#endif  // DQ_SERIES_HPP
