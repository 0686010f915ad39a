// Acceptance suite: one PASS/FAIL line per criterion. Every comparison is
// exact equality of rational (Gaussian) values.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "dq/cli.hpp"
#include "dq/formality.hpp"
#include "dq/gauge.hpp"
#include "dq/multidiff.hpp"
#include "dq/polyvector.hpp"
#include "dq/star.hpp"
#include "support/corpus.hpp"
#include "support/golden.hpp"
#include "support/random.hpp"

using namespace dq;

namespace {

int sign(int e) { return e % 2 == 0 ? 1 : -1; }

Polynomial x(int n, int i) { return Polynomial::variable(n, i); }
Polynomial c(int n, const Gaussian& v) { return Polynomial::constant(n, v); }

// Tallies checks for one criterion and remembers the first failure.
class Tally {
 public:
  void check(bool ok, const std::string& what) {
    ++total_;
    if (!ok) {
      ++failed_;
      if (first_failure_.empty()) first_failure_ = what;
    }
  }
  bool passed() const { return failed_ == 0 && total_ > 0; }
  int total() const { return total_; }
  std::string summary() const {
    std::ostringstream s;
    s << (total_ - failed_) << "/" << total_ << " checks";
    if (!first_failure_.empty()) s << "; first failure: " << first_failure_;
    return s.str();
  }

 private:
  int total_ = 0;
  int failed_ = 0;
  std::string first_failure_;
};

template <class C>
bool all_zero(const HbarSeries<C>& s) {
  for (const auto& e : s) {
    if (!e.is_zero()) return false;
  }
  return true;
}

PolyVector random_alpha(testing::Gen& gen, int n) {
  std::vector<std::vector<Gaussian>> a(static_cast<std::size_t>(n), std::vector<Gaussian>(static_cast<std::size_t>(n)));
  bool any = false;
  while (!any) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const Rational r = gen.rational();
        any = any || sgn(r) != 0;
        a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = r;
        a[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = Rational(-r);
      }
    }
  }
  return bivector_from_matrix(a);
}

Polynomial random_monomial(testing::Gen& gen, int n, int degree) {
  return Polynomial::monomial(n, gen.exponent(n, degree));
}

std::vector<Polynomial> random_args(testing::Gen& gen, int n, int count) {
  std::vector<Polynomial> out;
  for (int k = 0; k < count; ++k) out.push_back(gen.polynomial(n, 2, 3));
  return out;
}

// ---------- criteria ----------

Tally moyal_associativity() {
  Tally t;
  testing::Gen gen(101);
  for (int half_dim : {1, 2}) {
    const int n = 2 * half_dim;
    for (int order = 2; order <= 6; ++order) {
      const StarProduct s = moyal_star(darboux_bivector(half_dim), order);
      for (int trial = 0; trial < 50; ++trial) {
        const Polynomial f = random_monomial(gen, n, 3), g = random_monomial(gen, n, 3),
                         h = random_monomial(gen, n, 3);
        t.check(all_zero(associator_residual(s, f, g, h)),
                "R^" + std::to_string(n) + " N=" + std::to_string(order) + " (" + print(f) + ", " + print(g) +
                    ", " + print(h) + ")");
      }
    }
  }
  return t;
}

Tally canonical_commutation() {
  Tally t;
  const int n = 2;
  const PolyVector alpha = PolyVector::basis(n, {0, 1}, c(n, 1));
  for (int order = 1; order <= 6; ++order) {
    const StarProduct s = moyal_star(alpha, order);
    const FormalFunction q = formal_constant(x(n, 0), order), p = formal_constant(x(n, 1), order);
    FormalFunction expected = formal_zero(n, order);
    std::vector<Polynomial> e(expected.coeffs());
    e[1] = c(n, Gaussian::i());
    t.check(star_apply(s, q, p) - star_apply(s, p, q) == FormalFunction(e), "N=" + std::to_string(order));
  }
  return t;
}

Tally skew_extraction() {
  Tally t;
  testing::Gen gen(103);
  for (int n : {2, 4}) {
    for (int trial = 0; trial < 10; ++trial) {
      const PolyVector alpha = random_alpha(gen, n);
      t.check(first_order_skew(moyal_star(alpha, 2)) == alpha * Gaussian::i(), "alpha = " + print(alpha));
    }
  }
  return t;
}

Tally equivalence_lemma() {
  Tally t;
  testing::Gen gen(104);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = trial % 2 == 0 ? 2 : 4;
    const PolyVector alpha = random_alpha(gen, n);
    const EquivalenceOp op(OperatorSeries(
        {MultiDiffOp::identity(n), gen.op(n, 1, 2, 2, 3, true), gen.op(n, 1, 2, 2, 3, true)}));
    const StarProduct moved = equivalence_apply(op, moyal_star(alpha, 2));
    t.check(first_order_skew(moved) == alpha * Gaussian::i(), "T_1 = " + print(op.terms()[1]));
  }
  return t;
}

Tally hochschild() {
  Tally t;
  testing::Gen gen(105);
  for (int trial = 0; trial < 50; ++trial) {
    const MultiDiffOp d = gen.op(gen.integer(1, 3), gen.integer(0, 3), 2, 2, 3);
    t.check(hochschild_d(hochschild_d(d)).is_zero(), "d(d(" + print(d) + "))");
  }
  for (int n = 1; n <= 4; ++n) {
    t.check(hochschild_d(MultiDiffOp::identity(n)) == mult_op(n), "d(id) in dim " + std::to_string(n));
    const MultiDiffOp mm = gerst_bracket(mult_op(n), mult_op(n));
    t.check(mm.is_zero(), "[m,m]_G structural, dim " + std::to_string(n));
    for (int trial = 0; trial < 5; ++trial) {
      const auto a = random_args(gen, n, 3);
      const MultiDiffOp m = mult_op(n);
      const Polynomial assoc = dq::apply(m, {dq::apply(m, {a[0], a[1]}), a[2]}) -
                               dq::apply(m, {a[0], dq::apply(m, {a[1], a[2]})});
      const Polynomial value = dq::apply(mm, a);
      t.check(value == assoc * Gaussian(2) && value.is_zero(), "[m,m]_G(f,g,h)");
    }
  }
  return t;
}

Tally graded_brackets(std::string& note) {
  Tally t;
  testing::Gen gen(106);
  const int n = 3;
  for (int trial = 0; trial < 50; ++trial) {
    const PolyVector X = gen.polyvector(n, gen.integer(0, 3), 2);
    const PolyVector Y = gen.polyvector(n, gen.integer(0, 3), 2);
    const PolyVector Z = gen.polyvector(n, gen.integer(0, 3), 2);
    const int xd = X.degree(), yd = Y.degree();
    t.check(schouten_bracket(X, Y) == -Gaussian(sign((xd + 1) * (yd + 1))) * schouten_bracket(Y, X), "Schouten i");
    t.check(schouten_bracket(X, wedge(Y, Z)) ==
                wedge(schouten_bracket(X, Y), Z) + Gaussian(sign((xd + 1) * yd)) * wedge(Y, schouten_bracket(X, Z)),
            "Schouten ii");
    t.check(schouten_bracket(X, schouten_bracket(Y, Z)) ==
                schouten_bracket(schouten_bracket(X, Y), Z) +
                    Gaussian(sign((xd + 1) * (yd + 1))) * schouten_bracket(Y, schouten_bracket(X, Z)),
            "Schouten iii");
  }
  // the sign (-1)^{(y+1)z} in ii is refuted by X = d1, Y = x1, Z = x1 d2
  {
    const int m = 2;
    const PolyVector X = PolyVector::partial(m, 0), Y = PolyVector::function(x(m, 0)),
                     Z = x(m, 0) * PolyVector::partial(m, 1);
    const PolyVector lhs = schouten_bracket(X, wedge(Y, Z));
    const PolyVector printed = wedge(schouten_bracket(X, Y), Z) +
                               Gaussian(sign((Y.degree() + 1) * Z.degree())) * wedge(Y, schouten_bracket(X, Z));
    if (!(lhs == printed)) {
      note = "ii verified with sign (-1)^{(x+1)y}; the sign (-1)^{(y+1)z} fails at X=d1, Y=x1, Z=x1*d2 (" +
             print(lhs) + " vs " + (printed.is_zero() ? std::string("0") : print(printed)) + ")";
    }
  }
  for (int trial = 0; trial < 30; ++trial) {
    const int m = 2;
    const MultiDiffOp A = gen.op(m, gen.integer(1, 2), 1, 2);
    const MultiDiffOp B = gen.op(m, gen.integer(1, 2), 1, 2);
    const MultiDiffOp C = gen.op(m, gen.integer(1, 2), 1, 2);
    const int a = A.dgla_degree(), b = B.dgla_degree();
    const MultiDiffOp ab = gerst_bracket(A, B), ba = gerst_bracket(B, A);
    const auto args2 = random_args(gen, m, ab.arity());
    t.check(dq::apply(ab, args2) == dq::apply(ba, args2) * Gaussian(-sign(a * b)), "Gerstenhaber skew");
    const MultiDiffOp lhs = gerst_bracket(A, gerst_bracket(B, C));
    const MultiDiffOp rhs = gerst_bracket(gerst_bracket(A, B), C) +
                            gerst_bracket(B, gerst_bracket(A, C)) * Gaussian(sign(a * b));
    const auto args3 = random_args(gen, m, lhs.arity());
    t.check(dq::apply(lhs, args3) == dq::apply(rhs, args3), "Gerstenhaber Jacobi");
  }
  return t;
}

Tally poisson_jacobi(std::string& note) {
  Tally t;
  testing::Gen gen(107);
  const int n = 3;
  int poisson_count = 0;
  for (int trial = 0; trial < 20; ++trial) {
    PolyVector pi(n, 2);
    switch (trial % 3) {
      case 0:  // every component filled
        pi = PolyVector::basis(n, {0, 1}, gen.polynomial(n, 2, 3)) +
             PolyVector::basis(n, {0, 2}, gen.polynomial(n, 2, 3)) +
             PolyVector::basis(n, {1, 2}, gen.polynomial(n, 2, 3));
        break;
      case 1:  // constant
        pi = gen.constant_bivector(n);
        break;
      default: {  // f d_i ^ d_j
        const int i = gen.integer(0, 2);
        pi = PolyVector::basis(n, {i, (i + 1) % 3}, gen.polynomial(n, 2, 3));
      }
    }
    bool jacobi_zero = true;
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        for (int cc = 0; cc < n; ++cc) jacobi_zero = jacobi_zero && jacobiator(pi, x(n, a), x(n, b), x(n, cc)).is_zero();
      }
    }
    const auto r = is_poisson(pi);
    poisson_count += r.poisson ? 1 : 0;
    t.check(r.poisson == jacobi_zero, "pi = " + print(pi));
  }
  const PolyVector golden = PolyVector::basis(n, {0, 1}, c(n, 1)) + PolyVector::basis(n, {1, 2}, x(n, 1));
  const auto r = is_poisson(golden);
  t.check(!r.poisson && !r.witness.is_zero(), "witness of d1^d2 + x2*d2^d3 is nonzero");
  t.check(jacobiator(golden, x(n, 0), x(n, 1), x(n, 2)) == c(n, 1), "cyclic sum on (x1,x2,x3) is 1");
  note = std::to_string(poisson_count) + "/20 samples Poisson; witness " + print(r.witness);
  return t;
}

Tally maurer_cartan() {
  Tally t;
  for (int half_dim : {1, 2}) {
    for (int order = 1; order <= 5; ++order) {
      t.check(all_zero(mc_residual_star(moyal_star(darboux_bivector(half_dim), order).deformation())),
              "Moyal N=" + std::to_string(order));
    }
  }
  testing::Gen gen(108);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = gen.integer(1, 3);
    MultiDiffOp p1(n, 2);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (gen.coin()) p1.add_term({unit_exponent(n, i), unit_exponent(n, j)}, c(n, gen.scalar()));
      }
    }
    const int order = 3;
    std::vector<MultiDiffOp> p(order + 1, MultiDiffOp(n, 2));
    p[1] = p1;
    const auto r = mc_residual_star(OperatorSeries(p));
    std::vector<MultiDiffOp> expected(order + 1, MultiDiffOp(n, 3));
    expected[2] = gerst_bracket(p1, p1) * Gaussian(Rational(1, 2));
    t.check(hochschild_d(p1).is_zero() && r == OperatorSeries(expected), "P_1 = " + print(p1));
  }
  for (int trial = 0; trial < 10; ++trial) {
    const int n = gen.integer(2, 4);
    std::vector<PolyVector> pi;
    for (int k = 0; k <= 3; ++k) pi.push_back(gen.constant_bivector(n));
    t.check(all_zero(mc_residual_poisson(FormalBivector(pi))), "constant formal bivector");
  }
  return t;
}

Tally gauge() {
  Tally t;
  testing::Gen gen(109);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 3, order = 3;
    std::vector<PolyVector> xs, ys;
    for (int k = 0; k <= order; ++k) {
      xs.push_back(PolyVector::partial(n, gen.integer(0, 2)) * gen.scalar());
      ys.push_back(PolyVector::partial(n, gen.integer(0, 2)) * gen.scalar());
    }
    const FormalVectorField X(xs), Y(ys);
    t.check(bch(X, Y) == X + Y, "commuting bch");
  }
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 3, order = 2;
    std::vector<PolyVector> xs, ys;
    for (int k = 0; k <= order; ++k) {
      xs.push_back(gen.polyvector(n, 1, 2));
      ys.push_back(gen.polyvector(n, 1, 2));
    }
    const auto Z = bch(FormalVectorField(xs), FormalVectorField(ys));
    t.check(Z[0] == xs[0] + ys[0] &&
                Z[1] == xs[1] + ys[1] + schouten_bracket(xs[0], ys[0]) * Gaussian(Rational(1, 2)),
            "h^2 coefficient of hZ");
  }
  {
    const int n = 2, order = 5;
    const PolyVector pi = PolyVector::basis(n, {0, 1}, c(n, 1));
    std::vector<PolyVector> xs(order + 1, PolyVector(n, 1)), p(order + 1, PolyVector(n, 2)),
        expected(order + 1, PolyVector(n, 2));
    xs[0] = x(n, 0) * PolyVector::partial(n, 0);
    p[1] = pi;
    for (int k = 0; k + 1 <= order; ++k) {
      expected[static_cast<std::size_t>(k) + 1] =
          pi * Gaussian(Rational(sign(k)) / Rational(factorial(static_cast<unsigned>(k))));
    }
    t.check(gauge_apply_bivector(FormalVectorField(xs), FormalBivector(p)) == FormalBivector(expected),
            "closed form (-1)^k/k!");
  }
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 3, order = 3;
    std::vector<PolyVector> xs, p(order + 1, PolyVector(n, 2));
    for (int k = 0; k <= order; ++k) xs.push_back(gen.polyvector(n, 1, 2));
    for (int k = 1; k <= order; ++k) p[static_cast<std::size_t>(k)] = gen.constant_bivector(n);
    const FormalBivector P(p);
    const bool before = all_zero(mc_residual_poisson(P));
    const bool after = all_zero(mc_residual_poisson(gauge_apply_bivector(FormalVectorField(xs), P)));
    t.check(before && after, "gauge preserves the Maurer-Cartan set");
  }
  return t;
}

Tally hkr() {
  Tally t;
  testing::Gen gen(110);
  const int n = 3;
  for (int trial = 0; trial < 30; ++trial) {
    const PolyVector X = gen.polyvector(n, gen.integer(1, 3), 2);
    t.check(hkr_chain_check(X).is_zero(), "d(hkr(" + print(X) + "))");
  }
  for (int trial = 0; trial < 20; ++trial) {
    const PolyVector X = gen.polyvector(n, 1, 2), Y = gen.polyvector(n, 1, 2);
    t.check(hkr_bracket_defect(X, Y).defect.is_zero(), "defect on vector fields");
  }
  for (int trial = 0; trial < 10; ++trial) {
    const PolyVector X = gen.polyvector(n, trial % 2 == 0 ? 1 : 2, 2), Y = gen.polyvector(n, 2, 2);
    const auto r = hkr_bracket_defect(X, Y);
    t.check(r.closed && hochschild_d(r.defect).is_zero(), "defect is d-closed");
  }
  return t;
}

Tally cli_golden() {
  Tally t;
  for (const auto& g : testing::load_golden_cases(DQ_GOLDEN_DIR "/cli")) {
    const auto r = cli::run(g.args);
    t.check(r.out == g.expected_out && r.exit_code == g.expected_code, "golden " + g.name);
  }
  const auto corpus = testing::load_corpus(DQ_GOLDEN_DIR "/roundtrip.txt");
  t.check(corpus.size() == 40, "corpus has 40 expressions");
  for (const auto& e : corpus) t.check(testing::round_trips(e), "round trip " + e.text);
  return t;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string title;
    std::function<Tally(std::string&)> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "Moyal associativity, R^2 and R^4, N=2..6, 50 monomial triples each",
       [](std::string&) { return moyal_associativity(); }},
      {2, "canonical commutation x1*x2 - x2*x1 = i h", [](std::string&) { return canonical_commutation(); }},
      {3, "first_order_skew(Moyal(alpha)) = i alpha, 10 alphas in dims 2 and 4",
       [](std::string&) { return skew_extraction(); }},
      {4, "skew part invariant under 20 random equivalences", [](std::string&) { return equivalence_lemma(); }},
      {5, "Hochschild: d^2 = 0, d(id) = m, [m,m]_G = 2 assoc = 0", [](std::string&) { return hochschild(); }},
      {6, "graded skew-symmetry and Jacobi for Schouten and Gerstenhaber brackets",
       [](std::string& note) { return graded_brackets(note); }},
      {7, "Poisson iff coordinate Jacobiator vanishes; golden witness",
       [](std::string& note) { return poisson_jacobi(note); }},
      {8, "Maurer-Cartan residuals", [](std::string&) { return maurer_cartan(); }},
      {9, "BCH and gauge action", [](std::string&) { return gauge(); }},
      {10, "HKR chain map and bracket defect", [](std::string&) { return hkr(); }},
      {11, "CLI golden files and 40-expression round trip", [](std::string&) { return cli_golden(); }},
  };
  bool all = true;
  const auto start = std::chrono::steady_clock::now();
  for (const auto& c : criteria) {
    std::string note;
    const auto t0 = std::chrono::steady_clock::now();
    Tally tally;
    try {
      tally = c.run(note);
    } catch (const std::exception& e) {
      tally.check(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    all = all && tally.passed();
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2fs", secs);
    std::cout << (tally.passed() ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.title
              << " [exact] (" << tally.summary() << ", " << timing << ")";
    if (!note.empty()) std::cout << " note: " << note;
    std::cout << "\n";
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  char timing[32];
  std::snprintf(timing, sizeof timing, "%.2fs", total);
  std::cout << (all ? "PASS" : "FAIL") << "  all criteria (" << timing << " total)\n";
  return all ? 0 : 1;
}
