#include "dq/gauge.hpp"

namespace dq {

Dgla<PolyVector> schouten_dgla() {
  return {[](const PolyVector& a, const PolyVector& b) { return schouten_bracket(a, b); }, {}};
}

Dgla<MultiDiffOp> gerstenhaber_dgla() {
  return {[](const MultiDiffOp& a, const MultiDiffOp& b) { return gerst_bracket(a, b); },
          [](const MultiDiffOp& a) { return hochschild_d(a); }};
}

std::map<std::string, Rational> dynkin_coefficients(int max_length) {
  std::map<std::string, Rational> out;
  // Blocks (r_i, s_i) with r_i + s_i > 0 contribute x^{r_i} y^{s_i}.
  struct State {
    std::string word;
    Rational denom_fact;  // prod r_i! s_i!
    int blocks;
  };
  auto rec = [&](auto&& self, const State& st) -> void {
    if (st.blocks > 0) {
      const auto len = static_cast<long>(st.word.size());
      Rational c(st.blocks % 2 == 1 ? 1 : -1, st.blocks);
      c /= Rational(len) * st.denom_fact;
      out[st.word] += c;
    }
    const int room = max_length - static_cast<int>(st.word.size());
    for (int r = 0; r <= room; ++r) {
      for (int s = 0; r + s <= room; ++s) {
        if (r + s == 0) continue;
        State next{st.word + std::string(static_cast<std::size_t>(r), 'x') +
                       std::string(static_cast<std::size_t>(s), 'y'),
                   st.denom_fact * factorial(static_cast<unsigned>(r)) *
                       factorial(static_cast<unsigned>(s)),
                   st.blocks + 1};
        self(self, next);
      }
    }
  };
  rec(rec, State{"", Rational(1), 0});
  for (auto it = out.begin(); it != out.end();) {
    if (sgn(it->second) == 0) {
      it = out.erase(it);
    } else {
      ++it;
    }
  }
  return out;
}

FormalVectorField bch(const FormalVectorField& x, const FormalVectorField& y) {
  detail::require_same_order(x.order(), y.order(), "bch");
  const int n = x.order();
  const PolyVector zero(x[0].dim(), 1);
  // Work with hX and hY at order N + 1 so that X_N survives.
  const auto hx = times_h(truncate(x, n + 1, zero), zero);
  const auto hy = times_h(truncate(y, n + 1, zero), zero);
  const auto hz = bch_series(hx, hy, [](const PolyVector& a, const PolyVector& b) {
    return schouten_bracket(a, b);
  });
  return truncate(shift(hz, -1, zero, [](const PolyVector& c) { return c.is_zero(); }), n, zero);
}

FormalFunction formal_poisson_bracket(const FormalBivector& pi, const FormalFunction& f,
                                      const FormalFunction& g) {
  detail::require_same_order(pi.order(), f.order(), "formal_poisson_bracket");
  detail::require_same_order(pi.order(), g.order(), "formal_poisson_bracket");
  std::vector<Polynomial> out;
  for (int n = 0; n <= pi.order(); ++n) {
    Polynomial acc(f[0].dim());
    for (int i = 0; i <= n; ++i) {
      if (pi[i].is_zero()) continue;
      for (int j = 0; i + j <= n; ++j) acc += poisson_bracket(pi[i], f[j], g[n - i - j]);
    }
    out.push_back(std::move(acc));
  }
  return FormalFunction(std::move(out));
}

HbarSeries<PolyVector> mc_residual_poisson(const FormalBivector& pi) {
  const Gaussian half(Rational(1, 2));
  return detail::scale(
      mul(pi, pi, [](const PolyVector& a, const PolyVector& b) { return schouten_bracket(a, b); }),
      half);
}

FormalBivector gauge_apply_bivector(const FormalVectorField& x, const FormalBivector& pi) {
  detail::require_same_order(x.order(), pi.order(), "gauge_apply_bivector");
  const PolyVector zero(x[0].dim(), 1);
  return gauge_act_dgla(times_h(x, zero), pi, schouten_dgla());
}

}  // namespace dq
