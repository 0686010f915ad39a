#include "dq/polyvector.hpp"

#include <algorithm>
#include <string>

#include "dq/errors.hpp"

namespace dq {

namespace {

void require_same_dim(int a, int b) {
  if (a != b) {
    throw UsageError("multivector dimensions differ (" + std::to_string(a) + " vs " +
                     std::to_string(b) + ")");
  }
}

void require_bivector(const PolyVector& pi) {
  if (pi.degree() != 2) {
    throw DomainError("expected a bivector, got degree " + std::to_string(pi.degree()));
  }
}

// Sorts `idx` in place; returns the permutation sign, or 0 on a repeat.
int sort_sign(std::vector<int>& idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i) {
    for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
      if (idx[j - 1] == idx[j]) return 0;
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  }
  return sign;
}

// Right derivative with respect to the odd generator xi_var: removes d_var
// from each component, with sign (-1)^(number of indices to its right).
PolyVector right_odd_derivative(const PolyVector& x, int var) {
  PolyVector r(x.dim(), x.degree() - 1);
  for (const auto& [idx, c] : x.components()) {
    auto it = std::find(idx.begin(), idx.end(), var);
    if (it == idx.end()) continue;
    const auto right = idx.end() - it - 1;
    IndexTuple rest(idx.begin(), it);
    rest.insert(rest.end(), it + 1, idx.end());
    r.add_component(rest, right % 2 == 0 ? c : -c);
  }
  return r;
}

}  // namespace

PolyVector::PolyVector(int dim, int degree) : dim_(dim), degree_(degree) {
  if (dim < 0) throw UsageError("negative dimension");
}

PolyVector::PolyVector(int dim, int degree, Components components) : PolyVector(dim, degree) {
  for (auto& [idx, c] : components) add_component(idx, c);
}

PolyVector PolyVector::function(const Polynomial& f) {
  PolyVector x(f.dim(), 0);
  x.add_component({}, f);
  return x;
}

PolyVector PolyVector::partial(int dim, int var) {
  return basis(dim, {var}, Polynomial::constant(dim, 1));
}

PolyVector PolyVector::basis(int dim, std::vector<int> indices, const Polynomial& coeff) {
  require_same_dim(dim, coeff.dim());
  PolyVector x(dim, static_cast<int>(indices.size()));
  const int sign = sort_sign(indices);
  if (sign != 0) x.add_component(indices, sign > 0 ? coeff : -coeff);
  return x;
}

Polynomial PolyVector::component(const IndexTuple& indices) const {
  auto it = components_.find(indices);
  return it == components_.end() ? Polynomial(dim_) : it->second;
}

void PolyVector::add_component(const IndexTuple& indices, const Polynomial& coeff) {
  if (static_cast<int>(indices.size()) != degree_) {
    throw UsageError("index tuple length " + std::to_string(indices.size()) +
                     " does not match degree " + std::to_string(degree_));
  }
  require_same_dim(dim_, coeff.dim());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] < 0 || indices[i] >= dim_) throw UsageError("index out of range");
    if (i > 0 && indices[i - 1] >= indices[i]) throw UsageError("index tuple not increasing");
  }
  if (coeff.is_zero()) return;
  auto [it, inserted] = components_.try_emplace(indices, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) components_.erase(it);
  }
}

PolyVector PolyVector::operator-() const {
  PolyVector r(*this);
  for (auto& [idx, c] : r.components_) c = -c;
  return r;
}

PolyVector& PolyVector::operator+=(const PolyVector& o) {
  require_same_dim(dim_, o.dim_);
  if (o.is_zero()) return *this;
  if (degree_ != o.degree_) throw UsageError("cannot add multivectors of different degree");
  for (const auto& [idx, c] : o.components_) add_component(idx, c);
  return *this;
}

PolyVector& PolyVector::operator-=(const PolyVector& o) { return *this += -o; }

PolyVector& PolyVector::operator*=(const Gaussian& c) {
  if (c.is_zero()) {
    components_.clear();
    return *this;
  }
  for (auto& [idx, p] : components_) p *= c;
  return *this;
}

CovectorField::CovectorField(std::vector<Polynomial> components)
    : components_(std::move(components)) {
  for (const auto& c : components_) require_same_dim(c.dim(), dim());
}

CovectorField CovectorField::zero(int dim) {
  return CovectorField(std::vector<Polynomial>(static_cast<std::size_t>(dim), Polynomial(dim)));
}

CovectorField differential(const Polynomial& f) {
  std::vector<Polynomial> c;
  for (int i = 0; i < f.dim(); ++i) c.push_back(derivative(f, i));
  return CovectorField(std::move(c));
}

PolyVector wedge(const PolyVector& x, const PolyVector& y) {
  require_same_dim(x.dim(), y.dim());
  PolyVector r(x.dim(), x.degree() + y.degree());
  for (const auto& [ix, cx] : x.components()) {
    for (const auto& [iy, cy] : y.components()) {
      IndexTuple idx(ix);
      idx.insert(idx.end(), iy.begin(), iy.end());
      const int sign = sort_sign(idx);
      if (sign == 0) continue;
      Polynomial c = cx * cy;
      r.add_component(idx, sign > 0 ? c : -c);
    }
  }
  return r;
}

PolyVector operator*(const Polynomial& f, const PolyVector& x) {
  require_same_dim(f.dim(), x.dim());
  PolyVector r(x.dim(), x.degree());
  for (const auto& [idx, c] : x.components()) r.add_component(idx, f * c);
  return r;
}

PolyVector derivative(const PolyVector& x, int var) {
  PolyVector r(x.dim(), x.degree());
  for (const auto& [idx, c] : x.components()) r.add_component(idx, derivative(c, var));
  return r;
}

// Superfunction form: with odd generators xi_i standing for d_i,
//   [P,Q] = sum_i (P <d/dxi_i) (d_i Q) - (-1)^{(p-1)(q-1)} (Q <d/dxi_i) (d_i P)
// where <d/dxi is the right derivative and juxtaposition is the wedge.
PolyVector schouten_bracket(const PolyVector& x, const PolyVector& y) {
  require_same_dim(x.dim(), y.dim());
  const int n = x.dim();
  PolyVector r(n, x.degree() + y.degree() - 1);
  if (x.is_zero() || y.is_zero()) return r;
  const bool swap_odd = ((x.degree() - 1) * (y.degree() - 1)) % 2 != 0;
  for (int i = 0; i < n; ++i) {
    if (x.degree() > 0) r += wedge(right_odd_derivative(x, i), derivative(y, i));
    if (y.degree() > 0) {
      PolyVector t = wedge(right_odd_derivative(y, i), derivative(x, i));
      if (swap_odd) {
        r += t;
      } else {
        r -= t;
      }
    }
  }
  return r;
}

PolyVector sharp(const PolyVector& pi, const CovectorField& alpha) {
  require_bivector(pi);
  require_same_dim(pi.dim(), alpha.dim());
  PolyVector r(pi.dim(), 1);
  for (const auto& [idx, c] : pi.components()) {
    const int i = idx[0];
    const int j = idx[1];
    // pi = c d_i ^ d_j: sharp(alpha) = c (alpha_i d_j - alpha_j d_i)
    r.add_component({j}, c * alpha[i]);
    r.add_component({i}, -(c * alpha[j]));
  }
  return r;
}

Polynomial apply_vector_field(const PolyVector& x, const Polynomial& f) {
  if (x.degree() != 1) throw DomainError("expected a vector field");
  require_same_dim(x.dim(), f.dim());
  Polynomial r(f.dim());
  for (const auto& [idx, c] : x.components()) r += c * derivative(f, idx[0]);
  return r;
}

Polynomial poisson_bracket(const PolyVector& pi, const Polynomial& f, const Polynomial& g) {
  require_bivector(pi);
  require_same_dim(pi.dim(), f.dim());
  require_same_dim(pi.dim(), g.dim());
  Polynomial r(pi.dim());
  for (const auto& [idx, c] : pi.components()) {
    const int i = idx[0];
    const int j = idx[1];
    r += c * (derivative(f, i) * derivative(g, j) - derivative(f, j) * derivative(g, i));
  }
  return r;
}

PolyVector hamiltonian_vf(const PolyVector& pi, const Polynomial& f) {
  return sharp(pi, differential(f));
}

Polynomial pair(const PolyVector& x, const std::vector<CovectorField>& forms) {
  if (static_cast<int>(forms.size()) != x.degree()) {
    throw UsageError("pairing needs exactly " + std::to_string(x.degree()) + " 1-forms");
  }
  for (const auto& a : forms) require_same_dim(x.dim(), a.dim());
  Polynomial r(x.dim());
  const std::size_t k = forms.size();
  for (const auto& [idx, c] : x.components()) {
    // Leibniz expansion of det[a_b(i_a)] over permutations.
    std::vector<int> perm(k);
    for (std::size_t a = 0; a < k; ++a) perm[a] = static_cast<int>(a);
    do {
      std::vector<int> p(perm);
      const int sign = sort_sign(p);
      Polynomial term = c;
      for (std::size_t a = 0; a < k; ++a) {
        term = term * forms[static_cast<std::size_t>(perm[a])][idx[a]];
      }
      r += sign > 0 ? term : -term;
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return r;
}

Polynomial jacobiator(const PolyVector& pi, const Polynomial& f, const Polynomial& g,
                      const Polynomial& h) {
  return poisson_bracket(pi, f, poisson_bracket(pi, g, h)) +
         poisson_bracket(pi, g, poisson_bracket(pi, h, f)) +
         poisson_bracket(pi, h, poisson_bracket(pi, f, g));
}

PoissonCheck is_poisson(const PolyVector& pi) {
  require_bivector(pi);
  PolyVector w = schouten_bracket(pi, pi);
  const bool ok = w.is_zero();
  return {ok, std::move(w)};
}

}  // namespace dq
