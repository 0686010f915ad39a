#include "dq/star.hpp"

#include <sstream>
#include <string>

#include "dq/errors.hpp"

namespace dq {

namespace {

MultiDiffOp compose1(const MultiDiffOp& a, const MultiDiffOp& b) { return insert(a, 0, b); }

// Product of constant-coefficient operators of equal arity as symbols:
// (d^a (x) d^b)(d^c (x) d^d) = d^{a+c} (x) d^{b+d}.
MultiDiffOp symbol_product(const MultiDiffOp& x, const MultiDiffOp& y) {
  MultiDiffOp r(x.dim(), x.arity());
  for (const auto& [kx, cx] : x.terms()) {
    for (const auto& [ky, cy] : y.terms()) {
      SlotKey key;
      for (std::size_t j = 0; j < kx.size(); ++j) key.push_back(kx[j] + ky[j]);
      r.add_term(key, cx * cy);
    }
  }
  return r;
}

std::string describe_term(const SlotKey& key) {
  std::ostringstream os;
  os << '[';
  for (std::size_t j = 0; j < key.size(); ++j) {
    if (j > 0) os << " |";
    for (std::size_t i = 0; i < key[j].size(); ++i) {
      for (unsigned k = 0; k < key[j][i]; ++k) os << " d" << i + 1;
    }
  }
  os << " ]";
  return os.str();
}

}  // namespace

StarProduct::StarProduct(OperatorSeries terms) : terms_(std::move(terms)) {
  const int n = terms_[0].dim();
  if (!(terms_[0] == mult_op(n))) throw DomainError("star product must start with the pointwise product");
  for (int k = 1; k <= terms_.order(); ++k) {
    const MultiDiffOp& p = terms_[k];
    if (p.dim() != n) throw UsageError("star product coefficients differ in dimension");
    if (p.arity() != 2) throw DomainError("star product coefficients must be bidifferential");
    if (!is_normalized(p)) {
      throw DomainError("P_" + std::to_string(k) + " does not vanish on constants");
    }
  }
}

OperatorSeries StarProduct::deformation() const {
  std::vector<MultiDiffOp> p(terms_.coeffs());
  p[0] = MultiDiffOp(dim(), 2);
  return OperatorSeries(std::move(p));
}

StarProduct StarProduct::from_deformation(const OperatorSeries& p) {
  std::vector<MultiDiffOp> t(p.coeffs());
  t[0] = t[0] + mult_op(p[0].dim());
  return StarProduct(OperatorSeries(std::move(t)));
}

EquivalenceOp::EquivalenceOp(OperatorSeries terms) : terms_(std::move(terms)) {
  if (!(terms_[0] == MultiDiffOp::identity(terms_[0].dim()))) {
    throw DomainError("equivalence must start with the identity");
  }
  for (int k = 1; k <= terms_.order(); ++k) {
    if (terms_[k].arity() != 1) throw DomainError("equivalence coefficients must have arity 1");
    if (!is_normalized(terms_[k])) {
      throw DomainError("T_" + std::to_string(k) + " does not annihilate constants");
    }
  }
}

OperatorSeries EquivalenceOp::inverse() const {
  return invert(terms_, MultiDiffOp::identity(dim()), compose1);
}

OperatorSeries compose(const OperatorSeries& a, const OperatorSeries& b) {
  return mul(a, b, compose1);
}

FormalFunction formal_zero(int dim, int order) { return FormalFunction(order, Polynomial(dim)); }

FormalFunction formal_constant(const Polynomial& f, int order) {
  std::vector<Polynomial> c(static_cast<std::size_t>(order) + 1, Polynomial(f.dim()));
  c[0] = f;
  return FormalFunction(std::move(c));
}

std::vector<std::vector<Polynomial>> bivector_matrix(const PolyVector& pi) {
  if (pi.degree() != 2) throw DomainError("expected a bivector");
  const auto n = static_cast<std::size_t>(pi.dim());
  std::vector<std::vector<Polynomial>> a(n, std::vector<Polynomial>(n, Polynomial(pi.dim())));
  for (const auto& [idx, c] : pi.components()) {
    const auto i = static_cast<std::size_t>(idx[0]);
    const auto j = static_cast<std::size_t>(idx[1]);
    a[i][j] = c;
    a[j][i] = -c;
  }
  return a;
}

PolyVector bivector_from_matrix(const std::vector<std::vector<Gaussian>>& alpha) {
  const int n = static_cast<int>(alpha.size());
  PolyVector pi(n, 2);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(alpha[static_cast<std::size_t>(i)].size()) != n) {
      throw UsageError("alpha must be a square matrix");
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Gaussian& aij = alpha[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      const Gaussian& aji = alpha[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
      if (!(aij == -aji)) {
        throw UsageError("alpha is not antisymmetric at (" + std::to_string(i + 1) + "," +
                         std::to_string(j + 1) + ")");
      }
      if (i < j) pi.add_component({i, j}, Polynomial::constant(n, aij));
    }
  }
  return pi;
}

PolyVector darboux_bivector(int n) {
  PolyVector pi(2 * n, 2);
  for (int i = 0; i < n; ++i) pi.add_component({i, n + i}, Polynomial::constant(2 * n, 1));
  return pi;
}

StarProduct moyal_star(const PolyVector& alpha, int order) {
  if (alpha.degree() != 2) throw DomainError("Moyal product needs a bivector");
  const int n = alpha.dim();
  for (const auto& [idx, c] : alpha.components()) {
    if (!c.is_constant()) throw DomainError("Moyal product needs constant coefficients");
  }
  const auto a = bivector_matrix(alpha);
  MultiDiffOp b(n, 2);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      b.add_term({unit_exponent(n, i), unit_exponent(n, j)},
                 a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    }
  }
  std::vector<MultiDiffOp> p{mult_op(n)};
  MultiDiffOp power = mult_op(n);  // B^0 as a symbol
  const Gaussian half_i(Rational(0), Rational(1, 2));
  Gaussian scale = 1;
  for (int k = 1; k <= order; ++k) {
    power = symbol_product(power, b);
    scale = scale * half_i / Gaussian(k);
    p.push_back(power * scale);
  }
  return StarProduct(OperatorSeries(std::move(p)));
}

FormalFunction star_apply(const StarProduct& s, const FormalFunction& f, const FormalFunction& g) {
  detail::require_same_order(s.order(), f.order(), "star_apply");
  detail::require_same_order(s.order(), g.order(), "star_apply");
  const int n = s.order();
  std::vector<Polynomial> out;
  for (int k = 0; k <= n; ++k) {
    Polynomial acc(s.dim());
    for (int a = 0; a <= k; ++a) {
      for (int b = 0; a + b <= k; ++b) acc += apply(s[a], {f[b], g[k - a - b]});
    }
    out.push_back(std::move(acc));
  }
  return FormalFunction(std::move(out));
}

FormalFunction associator_residual(const StarProduct& s, const Polynomial& f,
                                   const Polynomial& g, const Polynomial& h) {
  const int n = s.order();
  const FormalFunction ff = formal_constant(f, n);
  const FormalFunction gg = formal_constant(g, n);
  const FormalFunction hh = formal_constant(h, n);
  return star_apply(s, star_apply(s, ff, gg), hh) - star_apply(s, ff, star_apply(s, gg, hh));
}

PolyVector first_order_skew(const StarProduct& s) {
  const int n = s.dim();
  PolyVector beta(n, 2);
  if (s.order() < 1) return beta;
  const MultiDiffOp& p1 = s[1];
  for (const auto& [key, c] : p1.terms()) {
    if (total_degree(key[0]) > 1 || total_degree(key[1]) > 1) {
      throw DomainError("P_1 term " + describe_term(key) +
                        " has differential order > 1 in a slot; no bivector to extract");
    }
  }
  const MultiDiffOp skew = p1 - transpose(p1);
  for (const auto& [key, c] : skew.terms()) {
    if (total_degree(key[0]) != 1 || total_degree(key[1]) != 1) {
      throw DomainError("skew part of P_1 has term " + describe_term(key) +
                        " which is not of the form d_i (x) d_j");
    }
    int i = 0;
    int j = 0;
    while (key[0][static_cast<std::size_t>(i)] == 0) ++i;
    while (key[1][static_cast<std::size_t>(j)] == 0) ++j;
    if (i < j) beta.add_component({i, j}, c);
  }
  return beta;
}

OperatorSeries mc_residual_star(const OperatorSeries& p) {
  if (!p[0].is_zero()) throw DomainError("Maurer-Cartan residual needs P_0 = 0");
  const int dim = p[0].dim();
  std::vector<MultiDiffOp> out;
  const Gaussian half(Rational(1, 2));
  for (int n = 0; n <= p.order(); ++n) {
    MultiDiffOp r = hochschild_d(p[n]);
    MultiDiffOp quad(dim, 3);
    for (int a = 1; a < n; ++a) quad += gerst_bracket(p[a], p[n - a]);
    r += quad * half;
    out.push_back(std::move(r));
  }
  return OperatorSeries(std::move(out));
}

StarProduct equivalence_apply(const EquivalenceOp& t, const StarProduct& s) {
  detail::require_same_order(t.order(), s.order(), "equivalence_apply");
  if (t.dim() != s.dim()) throw UsageError("equivalence and star product dimensions differ");
  const int order = s.order();
  const OperatorSeries u = t.inverse();
  // q = P o (U (x) U), then P' = T o q.
  std::vector<MultiDiffOp> q;
  for (int n = 0; n <= order; ++n) {
    MultiDiffOp acc(s.dim(), 2);
    for (int b = 0; b <= n; ++b) {
      for (int c = 0; b + c <= n; ++c) {
        acc += insert(insert(s[b], 1, u[n - b - c]), 0, u[c]);
      }
    }
    q.push_back(std::move(acc));
  }
  const OperatorSeries qs(std::move(q));
  std::vector<MultiDiffOp> out;
  for (int n = 0; n <= order; ++n) {
    MultiDiffOp acc(s.dim(), 2);
    for (int a = 0; a <= n; ++a) acc += insert(t.terms()[a], 0, qs[n - a]);
    out.push_back(std::move(acc));
  }
  return StarProduct(OperatorSeries(std::move(out)));
}

}  // namespace dq
