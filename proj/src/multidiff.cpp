#include "dq/multidiff.hpp"

#include <string>

#include "dq/errors.hpp"

namespace dq {

namespace {

void require_same_dim(int a, int b) {
  if (a != b) {
    throw UsageError("operator dimensions differ (" + std::to_string(a) + " vs " +
                     std::to_string(b) + ")");
  }
}

// Calls f(parts, multinomial) for every way of writing alpha as an ordered
// sum of `count` multi-indices, where multinomial = alpha! / prod parts!.
template <class F>
void for_each_split(const Exponent& alpha, int count, F&& f) {
  const std::size_t dim = alpha.size();
  std::vector<Exponent> parts(static_cast<std::size_t>(count), Exponent(dim, 0u));
  // Recurse over (variable, part) pairs, assigning how much of alpha_var
  // goes to each part; the last part takes the remainder.
  auto rec = [&](auto&& self, std::size_t var, int part, unsigned left, Rational coef) -> void {
    if (var == dim) {
      f(parts, coef);
      return;
    }
    if (part == count - 1) {
      parts[static_cast<std::size_t>(part)][var] = left;
      self(self, var + 1, 0, var + 1 < dim ? alpha[var + 1] : 0u, coef / factorial(left));
      return;
    }
    for (unsigned take = 0; take <= left; ++take) {
      parts[static_cast<std::size_t>(part)][var] = take;
      self(self, var, part + 1, left - take, coef / factorial(take));
    }
  };
  Rational alpha_fact = 1;
  for (unsigned a : alpha) alpha_fact *= factorial(a);
  rec(rec, 0, 0, dim > 0 ? alpha[0] : 0u, alpha_fact);
}

}  // namespace

MultiDiffOp::MultiDiffOp(int dim, int arity) : dim_(dim), arity_(arity) {
  if (dim < 0) throw UsageError("negative dimension");
  if (arity < 0) throw DomainError("multidifferential operators have arity >= 0");
}

MultiDiffOp::MultiDiffOp(int dim, int arity, Terms terms) : MultiDiffOp(dim, arity) {
  for (const auto& [k, c] : terms) add_term(k, c);
}

MultiDiffOp MultiDiffOp::identity(int dim) {
  MultiDiffOp d(dim, 1);
  d.add_term({zero_exponent(dim)}, Polynomial::constant(dim, 1));
  return d;
}

MultiDiffOp MultiDiffOp::constant(const Polynomial& f) {
  MultiDiffOp d(f.dim(), 0);
  d.add_term({}, f);
  return d;
}

void MultiDiffOp::add_term(const SlotKey& key, const Polynomial& coeff) {
  if (static_cast<int>(key.size()) != arity_) {
    throw UsageError("term has " + std::to_string(key.size()) + " slots, operator arity is " +
                     std::to_string(arity_));
  }
  require_same_dim(dim_, coeff.dim());
  for (const auto& a : key) {
    if (static_cast<int>(a.size()) != dim_) throw UsageError("multi-index length != dim");
  }
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(key, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

MultiDiffOp MultiDiffOp::operator-() const {
  MultiDiffOp r(*this);
  for (auto& [k, c] : r.terms_) c = -c;
  return r;
}

MultiDiffOp& MultiDiffOp::operator+=(const MultiDiffOp& o) {
  require_same_dim(dim_, o.dim_);
  if (arity_ != o.arity_) {
    throw UsageError("cannot add operators of arity " + std::to_string(arity_) + " and " +
                     std::to_string(o.arity_));
  }
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

MultiDiffOp& MultiDiffOp::operator-=(const MultiDiffOp& o) { return *this += -o; }

MultiDiffOp& MultiDiffOp::operator*=(const Gaussian& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, p] : terms_) p *= c;
  return *this;
}

Polynomial apply(const MultiDiffOp& d, const std::vector<Polynomial>& args) {
  if (static_cast<int>(args.size()) != d.arity()) {
    throw UsageError("operator of arity " + std::to_string(d.arity()) + " applied to " +
                     std::to_string(args.size()) + " arguments");
  }
  for (const auto& a : args) require_same_dim(d.dim(), a.dim());
  Polynomial r(d.dim());
  for (const auto& [key, c] : d.terms()) {
    Polynomial term = c;
    for (std::size_t j = 0; j < key.size() && !term.is_zero(); ++j) {
      term = term * derivative(args[j], key[j]);
    }
    r += term;
  }
  return r;
}

MultiDiffOp mult_op(int dim) {
  MultiDiffOp m(dim, 2);
  m.add_term({zero_exponent(dim), zero_exponent(dim)}, Polynomial::constant(dim, 1));
  return m;
}

MultiDiffOp insert(const MultiDiffOp& d, int slot, const MultiDiffOp& e) {
  require_same_dim(d.dim(), e.dim());
  if (slot < 0 || slot >= d.arity()) throw UsageError("insertion slot out of range");
  const int m = e.arity();
  const auto j = static_cast<std::size_t>(slot);
  MultiDiffOp r(d.dim(), d.arity() + m - 1);
  for (const auto& [dkey, dc] : d.terms()) {
    const Exponent& alpha = dkey[j];
    for (const auto& [ekey, ec] : e.terms()) {
      // d^alpha (ec * prod_k d^{beta_k} a_k) by the multinomial Leibniz rule;
      // parts[0] hits the coefficient, parts[k] the k-th inner argument.
      for_each_split(alpha, m + 1, [&](const std::vector<Exponent>& parts, const Rational& mult) {
        Polynomial coeff = derivative(ec, parts[0]);
        if (coeff.is_zero()) return;
        SlotKey key(dkey.begin(), dkey.begin() + slot);
        for (int k = 0; k < m; ++k) {
          key.push_back(ekey[static_cast<std::size_t>(k)] + parts[static_cast<std::size_t>(k) + 1]);
        }
        key.insert(key.end(), dkey.begin() + slot + 1, dkey.end());
        r.add_term(key, dc * coeff * Gaussian(mult));
      });
    }
  }
  return r;
}

MultiDiffOp gerst_product(const MultiDiffOp& d, const MultiDiffOp& e) {
  require_same_dim(d.dim(), e.dim());
  const int n = d.arity();
  const int m = e.arity();
  if (n + m - 1 < 0) throw DomainError("Gerstenhaber product of two arity-0 cochains");
  MultiDiffOp r(d.dim(), n + m - 1);
  for (int j = 0; j < n; ++j) {
    MultiDiffOp t = insert(d, j, e);
    if (((m - 1) * j) % 2 != 0) {
      r -= t;
    } else {
      r += t;
    }
  }
  return r;
}

MultiDiffOp gerst_bracket(const MultiDiffOp& d, const MultiDiffOp& e) {
  const int n = d.arity();
  const int m = e.arity();
  MultiDiffOp r = gerst_product(d, e);
  if (((n - 1) * (m - 1)) % 2 != 0) {
    r += gerst_product(e, d);
  } else {
    r -= gerst_product(e, d);
  }
  return r;
}

MultiDiffOp hochschild_d(const MultiDiffOp& d) { return gerst_bracket(mult_op(d.dim()), d); }

bool is_normalized(const MultiDiffOp& d) {
  if (d.arity() < 1) throw DomainError("normalization is defined for arity >= 1");
  for (const auto& [key, c] : d.terms()) {
    for (const auto& a : key) {
      if (total_degree(a) == 0) return false;
    }
  }
  return true;
}

MultiDiffOp transpose(const MultiDiffOp& d) {
  if (d.arity() != 2) throw DomainError("transpose needs a bidifferential operator");
  MultiDiffOp r(d.dim(), 2);
  for (const auto& [key, c] : d.terms()) r.add_term({key[1], key[0]}, c);
  return r;
}

unsigned max_slot_order(const MultiDiffOp& d) {
  unsigned best = 0;
  for (const auto& [key, c] : d.terms()) {
    for (const auto& a : key) best = std::max(best, total_degree(a));
  }
  return best;
}

}  // namespace dq
