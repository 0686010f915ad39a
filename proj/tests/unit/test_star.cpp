#include <doctest.h>

#include "dq/errors.hpp"
#include "dq/star.hpp"
#include "support/random.hpp"

using namespace dq;

namespace {

Polynomial x(int n, int i) { return Polynomial::variable(n, i); }
Polynomial c(int n, const Gaussian& v) { return Polynomial::constant(n, v); }
const Gaussian I = Gaussian::i();

StarProduct moyal2(int order) {
  return moyal_star(bivector_from_matrix({{0, 1}, {-1, 0}}), order);
}

FormalFunction series(std::vector<Polynomial> coeffs) { return FormalFunction(std::move(coeffs)); }

MultiDiffOp bidiff(int n, const Polynomial& coeff, const Exponent& a, const Exponent& b) {
  MultiDiffOp d(n, 2);
  d.add_term({a, b}, coeff);
  return d;
}

PolyVector random_alpha(testing::Gen& gen, int n) {
  std::vector<std::vector<Gaussian>> a(static_cast<std::size_t>(n),
                                       std::vector<Gaussian>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Rational r = gen.rational();
      a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = r;
      a[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = Rational(-r);
    }
  }
  return bivector_from_matrix(a);
}

EquivalenceOp random_equivalence(testing::Gen& gen, int n, int order) {
  std::vector<MultiDiffOp> t{MultiDiffOp::identity(n)};
  for (int k = 1; k <= order; ++k) t.push_back(gen.op(n, 1, 2, 2, 2, true));
  return EquivalenceOp(OperatorSeries(t));
}

// Exact monomials up to the given degree, as a spanning set.
std::vector<Polynomial> monomials(int n, int degree) {
  std::vector<Polynomial> out;
  std::vector<Exponent> current{zero_exponent(n)};
  for (const auto& e : current) out.push_back(Polynomial::monomial(n, e, 1));
  for (int d = 1; d <= degree; ++d) {
    std::vector<Exponent> next;
    for (const auto& e : current) {
      for (int i = 0; i < n; ++i) {
        Exponent f = e;
        ++f[static_cast<std::size_t>(i)];
        if (std::find(next.begin(), next.end(), f) == next.end()) next.push_back(f);
      }
    }
    for (const auto& e : next) out.push_back(Polynomial::monomial(n, e, 1));
    current = next;
  }
  return out;
}

bool associative_on_monomials(const StarProduct& s, int degree) {
  const auto mons = monomials(s.dim(), degree);
  for (const auto& f : mons) {
    for (const auto& g : mons) {
      for (const auto& h : mons) {
        for (const auto& r : associator_residual(s, f, g, h)) {
          if (!r.is_zero()) return false;
        }
      }
    }
  }
  return true;
}

bool all_zero(const OperatorSeries& s) {
  for (const auto& d : s) {
    if (!d.is_zero()) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("Moyal examples") {
  const int n = 2;
  const auto s = moyal2(2);
  CHECK(star_apply(s, formal_constant(x(n, 0), 2), formal_constant(x(n, 1), 2)) ==
        series({x(n, 0) * x(n, 1), c(n, I / Gaussian(2)), c(n, 0)}));
  const FormalFunction comm = star_apply(s, formal_constant(x(n, 0), 2), formal_constant(x(n, 1), 2)) -
                              star_apply(s, formal_constant(x(n, 1), 2), formal_constant(x(n, 0), 2));
  CHECK(comm == series({c(n, 0), c(n, I), c(n, 0)}));
  const Polynomial x1sq = x(n, 0) * x(n, 0), x2sq = x(n, 1) * x(n, 1);
  CHECK(star_apply(s, formal_constant(x1sq, 2), formal_constant(x2sq, 2)) ==
        series({x1sq * x2sq, x(n, 0) * x(n, 1) * (Gaussian(2) * I), c(n, Rational(-1, 2))}));
  CHECK_THROWS_AS(moyal_star(PolyVector::basis(2, {0, 1}, x(2, 0)), 2), DomainError);
  CHECK_THROWS_AS(bivector_from_matrix({{0, 1}, {1, 0}}), UsageError);
  CHECK_THROWS_AS(bivector_from_matrix({{0, 1}}), UsageError);
  CHECK(darboux_bivector(1) == PolyVector::basis(2, {0, 1}, c(2, 1)));
  CHECK(darboux_bivector(2) ==
        PolyVector::basis(4, {0, 2}, c(4, 1)) + PolyVector::basis(4, {1, 3}, c(4, 1)));
}

TEST_CASE("star_apply examples") {
  const int n = 2;
  const auto s = moyal2(2);
  const FormalFunction f = series({x(n, 0) * x(n, 1), x(n, 0), c(n, 3)});
  const FormalFunction one = formal_constant(c(n, 1), 2);
  CHECK(star_apply(s, f, one) == f);
  CHECK(star_apply(s, one, f) == f);
  const auto s0 = moyal2(0);
  CHECK(star_apply(s0, formal_constant(x(n, 0), 0), formal_constant(x(n, 1), 0)) ==
        series({x(n, 0) * x(n, 1)}));
  CHECK(star_apply(s, series({c(n, 0), x(n, 0), c(n, 0)}), formal_constant(x(n, 1), 2)) ==
        series({c(n, 0), x(n, 0) * x(n, 1), c(n, I / Gaussian(2))}));
  CHECK_THROWS_AS(star_apply(s, formal_constant(x(n, 0), 1), one), UsageError);
}

TEST_CASE("associator_residual examples") {
  const int n = 2;
  testing::Gen gen(11);
  const auto s = moyal2(4);
  for (int trial = 0; trial < 10; ++trial) {
    const auto r = associator_residual(s, gen.polynomial(n, 3), gen.polynomial(n, 3), gen.polynomial(n, 3));
    CHECK(r == formal_zero(n, 4));
  }
  const auto full = moyal2(2);
  const StarProduct cut(OperatorSeries({full[0], full[1], MultiDiffOp(n, 2)}));
  const auto r = associator_residual(cut, x(n, 0) * x(n, 0), x(n, 1), x(n, 1));
  CHECK(r[0].is_zero());
  CHECK(r[1].is_zero());
  CHECK(!r[2].is_zero());
  CHECK(associator_residual(cut, c(n, 1), x(n, 0), x(n, 1)) == formal_zero(n, 2));
}

TEST_CASE("StarProduct and EquivalenceOp validate their terms") {
  const int n = 2;
  CHECK_THROWS_AS(StarProduct(OperatorSeries({MultiDiffOp(n, 2)})), DomainError);
  CHECK_THROWS_AS(StarProduct(OperatorSeries({mult_op(n), mult_op(n)})), DomainError);
  CHECK_THROWS_AS(EquivalenceOp(OperatorSeries({MultiDiffOp::identity(n), MultiDiffOp::identity(n)})),
                  DomainError);
  const auto s = moyal2(3);
  CHECK(StarProduct::from_deformation(s.deformation()).terms() == s.terms());
  CHECK(s.deformation()[0].is_zero());
}

TEST_CASE("first_order_skew") {
  const int n = 2;
  const PolyVector alpha = bivector_from_matrix({{0, 1}, {-1, 0}});
  CHECK(first_order_skew(moyal2(2)) == alpha * I);
  const MultiDiffOp sym = bidiff(n, x(n, 0), unit_exponent(n, 0), unit_exponent(n, 1)) +
                          bidiff(n, x(n, 0), unit_exponent(n, 1), unit_exponent(n, 0));
  CHECK(first_order_skew(StarProduct(OperatorSeries({mult_op(n), sym}))).is_zero());
  // refused even when the higher-order part is symmetric
  const MultiDiffOp sym2 = bidiff(n, c(n, 1), Exponent{2, 0}, Exponent{0, 2}) +
                           bidiff(n, c(n, 1), Exponent{0, 2}, Exponent{2, 0});
  CHECK_THROWS_AS(first_order_skew(StarProduct(OperatorSeries({mult_op(n), sym2}))), DomainError);
  const MultiDiffOp high = bidiff(n, c(n, 1), Exponent{2, 0}, Exponent{0, 1});
  CHECK_THROWS_AS(first_order_skew(StarProduct(OperatorSeries({mult_op(n), high}))), DomainError);
  CHECK(first_order_skew(moyal2(0)).is_zero());
  testing::Gen gen(12);
  const EquivalenceOp t = random_equivalence(gen, n, 2);
  CHECK(first_order_skew(equivalence_apply(t, moyal2(2))) == alpha * I);
}

TEST_CASE("mc_residual_star examples") {
  const int n = 2;
  for (int order = 1; order <= 4; ++order) {
    CHECK(all_zero(mc_residual_star(moyal2(order).deformation())));
  }
  const PolyVector alpha = bivector_from_matrix({{0, 2}, {-2, 0}});
  MultiDiffOp p1(n, 2);
  for (const auto& [idx, coeff] : alpha.components()) {
    p1.add_term({unit_exponent(n, idx[0]), unit_exponent(n, idx[1])}, coeff);
    p1.add_term({unit_exponent(n, idx[1]), unit_exponent(n, idx[0])}, -coeff);
  }
  const OperatorSeries p({MultiDiffOp(n, 2), p1, MultiDiffOp(n, 2), MultiDiffOp(n, 2)});
  const auto r = mc_residual_star(p);
  CHECK(r[0].is_zero());
  CHECK(r[1].is_zero());
  CHECK(r[2] == gerst_bracket(p1, p1) * Gaussian(Rational(1, 2)));
  CHECK(!r[2].is_zero());
  CHECK(r[3].is_zero());
  CHECK(all_zero(mc_residual_star(OperatorSeries(3, MultiDiffOp(n, 2)))));
  CHECK_THROWS_AS(mc_residual_star(moyal2(2).terms()), DomainError);
}

TEST_CASE("equivalence_apply examples") {
  const int n = 2;
  const auto s = moyal2(3);
  const OperatorSeries id({MultiDiffOp::identity(n), MultiDiffOp(n, 1), MultiDiffOp(n, 1),
                           MultiDiffOp(n, 1)});
  CHECK(equivalence_apply(EquivalenceOp(id), s).terms() == s.terms());
  MultiDiffOp d1(n, 1), d11(n, 1);
  d1.add_term({unit_exponent(n, 0)}, c(n, 1));
  d11.add_term({Exponent{2, 0}}, c(n, 1));
  const OperatorSeries t1({MultiDiffOp::identity(n), d1, MultiDiffOp(n, 1), MultiDiffOp(n, 1)});
  CHECK(equivalence_apply(EquivalenceOp(t1), s)[1] == s[1]);
  const OperatorSeries t2({MultiDiffOp::identity(n), d11, MultiDiffOp(n, 1), MultiDiffOp(n, 1)});
  CHECK(equivalence_apply(EquivalenceOp(t2), s)[1] ==
        s[1] + bidiff(n, c(n, 2), unit_exponent(n, 0), unit_exponent(n, 0)));
}

TEST_CASE("equivalence inverse and intertwining") {
  testing::Gen gen(13);
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 2;
    const int order = 3;
    const EquivalenceOp t = random_equivalence(gen, n, order);
    const OperatorSeries inv = t.inverse();
    OperatorSeries id(order, MultiDiffOp(n, 1));
    id = OperatorSeries([&] {
      std::vector<MultiDiffOp> v(static_cast<std::size_t>(order) + 1, MultiDiffOp(n, 1));
      v[0] = MultiDiffOp::identity(n);
      return v;
    }());
    CHECK(compose(t.terms(), inv) == id);
    CHECK(compose(inv, t.terms()) == id);
    // T(a * b) = T(a) *' T(b)
    const auto s = moyal2(order);
    const auto s2 = equivalence_apply(t, s);
    auto apply_t = [&](const FormalFunction& f) {
      return mul(t.terms(), f, [](const MultiDiffOp& d, const Polynomial& p) {
        return dq::apply(d, std::vector<Polynomial>{p});
      });
    };
    const FormalFunction a = formal_constant(gen.polynomial(n, 3), order);
    const FormalFunction b = formal_constant(gen.polynomial(n, 3), order);
    CHECK(apply_t(star_apply(s, a, b)) == star_apply(s2, apply_t(a), apply_t(b)));
    CHECK(associative_on_monomials(s2, 2));
  }
}

TEST_CASE("Maurer-Cartan residual and associator agree on monomial triples") {
  testing::Gen gen(14);
  const int n = 2;
  std::vector<StarProduct> cases;
  cases.push_back(moyal2(2));
  cases.push_back(equivalence_apply(random_equivalence(gen, n, 2), moyal2(2)));
  const auto full = moyal2(2);
  cases.push_back(StarProduct(OperatorSeries({full[0], full[1], MultiDiffOp(n, 2)})));
  for (int k = 0; k < 3; ++k) {
    cases.push_back(StarProduct(OperatorSeries({mult_op(n), gen.op(n, 2, 1, 2, 2, true),
                                                gen.op(n, 2, 1, 2, 2, true)})));
  }
  for (const auto& s : cases) {
    // P_k has at most 2 derivatives per slot here, so degree-4 monomials
    // already detect every nonzero coefficient of the residual
    CHECK(all_zero(mc_residual_star(s.deformation())) == associative_on_monomials(s, 4));
  }
}

TEST_CASE("unit and gauge invariance of the first-order skew part") {
  testing::Gen gen(15);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = trial % 2 == 0 ? 2 : 4;
    const PolyVector alpha = random_alpha(gen, n);
    const StarProduct s = moyal_star(alpha, 2);
    const StarProduct s2 = equivalence_apply(random_equivalence(gen, n, 2), s);
    CHECK(first_order_skew(s2) == first_order_skew(s));
    const FormalFunction f = formal_constant(gen.polynomial(n, 2), 2);
    const FormalFunction one = formal_constant(c(n, 1), 2);
    CHECK(star_apply(s2, f, one) == f);
    CHECK(star_apply(s2, one, f) == f);
    // associative through h^2, so the skew part is a Poisson bivector
    const PolyVector beta = first_order_skew(s2);
    CHECK(is_poisson(beta).poisson);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
          CHECK(jacobiator(beta, x(n, i), x(n, j), x(n, k)).is_zero());
        }
      }
    }
    // Leibniz in the second argument
    const Polynomial g = gen.polynomial(n, 2), h = gen.polynomial(n, 2), u = gen.polynomial(n, 2);
    CHECK(poisson_bracket(beta, g, h * u) ==
          poisson_bracket(beta, g, h) * u + h * poisson_bracket(beta, g, u));
  }
}
