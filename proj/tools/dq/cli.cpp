#include "dq/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "dq/errors.hpp"
#include "dq/formality.hpp"
#include "dq/gauge.hpp"
#include "dq/json_io.hpp"
#include "dq/multidiff.hpp"
#include "dq/parse.hpp"
#include "dq/polyvector.hpp"
#include "dq/star.hpp"

namespace dq::cli {

namespace {

using nlohmann::json;

enum class FlagKind { value, repeated, toggle };

struct FlagSpec {
  std::string name;
  std::string help;
  FlagKind kind = FlagKind::value;
};

/// Flag values after merging the command line with --file.
class Inputs {
 public:
  std::map<std::string, std::vector<std::string>> values;
  std::set<std::string> toggles;

  bool has(const std::string& name) const { return values.count(name) != 0; }
  bool on(const std::string& name) const { return toggles.count(name) != 0; }

  std::optional<std::string> get(const std::string& name) const {
    auto it = values.find(name);
    if (it == values.end() || it->second.empty()) return std::nullopt;
    return it->second.front();
  }
  std::string require(const std::string& name) const {
    auto v = get(name);
    if (!v) throw CLI::RequiredError("--" + name);
    return *v;
  }
  std::vector<std::string> all(const std::string& name) const {
    auto it = values.find(name);
    return it == values.end() ? std::vector<std::string>{} : it->second;
  }
  std::optional<int> integer(const std::string& name) const {
    auto v = get(name);
    if (!v) return std::nullopt;
    try {
      std::size_t used = 0;
      const int n = std::stoi(*v, &used);
      if (used != v->size()) throw std::invalid_argument(*v);
      return n;
    } catch (const std::exception&) {
      throw CLI::ConversionError("--" + name, *v);
    }
  }
};

// Collects parsed expressions so the dimension can be inferred once.
class DimTracker {
 public:
  explicit DimTracker(const Inputs& in) : explicit_(in.integer("dim")) {
    if (explicit_ && *explicit_ < 0) throw UsageError("--dim must be non-negative");
  }
  void use(int index) { used_ = std::max(used_, index); }
  void use(const Expression& e) { use(max_index(e)); }
  void use(const SeriesExpression& s) { use(max_index(s)); }
  /// Fixes the dimension (e.g. from the size of alpha).
  void fix(int n, const char* what) {
    if (fixed_ && *fixed_ != n) throw UsageError(std::string(what) + " disagrees on the dimension");
    fixed_ = n;
  }
  int dim() const {
    int n = used_;
    if (fixed_) {
      if (used_ > *fixed_) {
        throw UsageError("expressions use index " + std::to_string(used_) + " but the dimension is " +
                         std::to_string(*fixed_));
      }
      n = *fixed_;
    }
    if (explicit_) {
      if (*explicit_ < n) {
        throw UsageError("--dim " + std::to_string(*explicit_) + " is smaller than the index " +
                         std::to_string(n) + " in use");
      }
      if (fixed_ && *explicit_ != *fixed_) throw UsageError("--dim contradicts the given tensor size");
      n = *explicit_;
    }
    return n;
  }

 private:
  std::optional<int> explicit_;
  std::optional<int> fixed_;
  int used_ = 0;
};

struct Reply {
  json body;
  int exit_code = exit_ok;
};

using Handler = std::function<Reply(const Inputs&)>;

struct Command {
  Subcommand info;
  std::vector<FlagSpec> flags;
  Handler handler;
};

// ---------- input helpers ----------

std::vector<std::vector<Gaussian>> matrix_from_text(const std::string& text) {
  const json j = json::parse(text);
  if (!j.is_array()) throw UsageError("alpha must be a JSON array of rows");
  std::vector<std::vector<Gaussian>> m;
  for (const auto& row : j) {
    if (!row.is_array()) throw UsageError("alpha must be a JSON array of rows");
    std::vector<Gaussian> r;
    for (const auto& v : row) r.push_back(gaussian_from_json(v));
    m.push_back(std::move(r));
  }
  return m;
}

std::vector<std::string> string_list(const std::string& text, const char* what) {
  const json j = json::parse(text);
  if (!j.is_array()) throw UsageError(std::string(what) + " must be a JSON array");
  std::vector<std::string> out;
  for (const auto& v : j) out.push_back(v.is_string() ? v.get<std::string>() : v.dump());
  return out;
}

std::vector<int> index_list(const std::string& text) {
  std::string s = text;
  std::replace(s.begin(), s.end(), ',', ' ');
  std::istringstream in(s);
  std::vector<int> out;
  std::string tok;
  while (in >> tok) {
    if (tok.empty() || !std::all_of(tok.begin(), tok.end(), ::isdigit)) {
      throw ParseError("expected a variable index, got '" + tok + "'", 0);
    }
    const int v = std::stoi(tok);
    if (v < 1) throw ParseError("variable indices start at 1", 0);
    out.push_back(v);
  }
  if (out.empty()) throw ParseError("expected at least one variable index", 0);
  return out;
}

std::string nonzero_or_zero(const PolyVector& v) { return v.is_zero() ? "0" : print(v); }

template <class C>
bool all_zero(const HbarSeries<C>& s) {
  return std::all_of(s.begin(), s.end(), [](const C& c) { return c.is_zero(); });
}

// Star product selection shared by the star subcommands.
struct StarSpec {
  std::string kind;
  std::optional<std::vector<std::vector<Gaussian>>> alpha;
  std::optional<int> darboux;
  std::optional<SeriesExpression> p;
  std::optional<int> order;

  explicit StarSpec(const Inputs& in) {
    kind = in.get("star").value_or(in.has("p") ? "custom" : "moyal");
    order = in.integer("order");
    if (kind == "moyal") {
      if (auto a = in.get("alpha")) alpha = matrix_from_text(*a);
      darboux = in.integer("darboux");
      if (alpha.has_value() == darboux.has_value()) {
        throw CLI::ValidationError("--star moyal", "needs exactly one of --alpha and --darboux");
      }
      if (!order) throw CLI::RequiredError("--order");
    } else if (kind == "custom") {
      p = parse_series(in.require("p"), ExprKind::operator_);
    } else if (kind != "pointwise") {
      throw CLI::ValidationError("--star", "expected moyal, pointwise or custom");
    }
  }

  void register_dim(DimTracker& dims) const {
    if (alpha) dims.fix(static_cast<int>(alpha->size()), "alpha");
    if (darboux) dims.fix(2 * *darboux, "--darboux");
    if (p) dims.use(*p);
  }

  int resolved_order() const {
    if (order) return *order;
    return p ? p->max_order() : 0;
  }

  StarProduct build(int dim) const {
    const int n = resolved_order();
    if (kind == "moyal") {
      const PolyVector a = alpha ? bivector_from_matrix(*alpha) : darboux_bivector(*darboux);
      return moyal_star(a, n);
    }
    if (kind == "pointwise") {
      std::vector<MultiDiffOp> t(static_cast<std::size_t>(n) + 1, MultiDiffOp(dim, 2));
      t[0] = mult_op(dim);
      return StarProduct(OperatorSeries(std::move(t)));
    }
    auto deformation = to_operator_series(*p, dim, n, 2);
    if (!deformation[0].is_zero()) {
      throw DomainError("--p lists the deformation P_1, P_2, ...; the h^0 term is the pointwise product");
    }
    return StarProduct::from_deformation(deformation);
  }
};

const std::vector<FlagSpec> star_flags = {
    {"star", "moyal (default), pointwise or custom"},
    {"alpha", "constant Poisson tensor as an antisymmetric JSON matrix"},
    {"darboux", "standard symplectic tensor on R^{2n}, q_i = x_i, p_i = x_{n+i}"},
    {"p", "custom deformation series, e.g. \"1: 1/2*i [ d1 | d2 ] - 1/2*i [ d2 | d1 ]\""},
    {"order", "truncation order"},
    {"dim", "ambient dimension"},
};

std::vector<FlagSpec> with_star(std::vector<FlagSpec> extra) {
  std::vector<FlagSpec> out = star_flags;
  out.insert(out.end(), extra.begin(), extra.end());
  return out;
}

int series_order(const Inputs& in, std::initializer_list<const SeriesExpression*> parts) {
  if (auto n = in.integer("order")) return *n;
  int m = 0;
  for (const auto* p : parts) m = std::max(m, p->max_order());
  return m;
}

// ---------- handlers ----------

Reply cmd_parse(const Inputs& in) {
  const std::string kind = in.get("kind").value_or("polynomial");
  const std::string text = in.require("expr");
  DimTracker dims(in);
  json out;
  out["kind"] = kind;

  if (kind == "series") {
    const SeriesExpression a = parse_series(text, ExprKind::polynomial);
    std::optional<SeriesExpression> b;
    if (auto w = in.get("with")) b = parse_series(*w, ExprKind::polynomial);
    dims.use(a);
    if (b) dims.use(*b);
    const int n = dims.dim();
    const int order = b ? series_order(in, {&a, &*b}) : series_order(in, {&a});
    const auto fa = to_polynomial_series(a, n, order);
    out["dim"] = n;
    out["canonical"] = print_series(fa);
    out["series"] = series_json(fa);
    if (auto op = in.get("op")) {
      auto need_with = [&]() {
        if (!b) throw CLI::RequiredError("--with");
        return to_polynomial_series(*b, n, order);
      };
      if (*op == "add") {
        out["result"] = series_json(fa + need_with());
      } else if (*op == "sub") {
        out["result"] = series_json(fa - need_with());
      } else if (*op == "mul") {
        out["result"] = series_json(fa * need_with());
      } else if (*op == "invert") {
        const auto scalars = map_coeffs(fa, [](const Polynomial& f) {
          if (!f.is_constant()) throw DomainError("only series with scalar coefficients can be inverted");
          return f.constant_term();
        });
        out["result"] = to_json(invert(scalars));
      } else {
        throw CLI::ValidationError("--op", "expected add, sub, mul or invert");
      }
    }
    return {out};
  }

  if (kind == "polynomial") {
    const Expression e = parse(text, ExprKind::polynomial);
    std::optional<Expression> w;
    if (auto t = in.get("with")) w = parse(*t, ExprKind::polynomial);
    dims.use(e);
    if (w) dims.use(*w);
    std::vector<int> diff;
    if (auto d = in.get("diff")) {
      diff = index_list(*d);
      for (int v : diff) dims.use(v);
    }
    std::optional<std::vector<Gaussian>> point;
    if (auto at = in.get("at")) {
      const json pt = json::parse(*at);
      if (!pt.is_array()) throw UsageError("--at must be a JSON array");
      point.emplace();
      for (const auto& v : pt) point->push_back(gaussian_from_json(v));
      dims.use(static_cast<int>(point->size()));
    }
    const int n = dims.dim();
    const Polynomial f = to_polynomial(e, n);
    out["dim"] = n;
    out["canonical"] = print(f);
    if (point) {
      if (static_cast<int>(point->size()) != n) {
        throw UsageError("--at has " + std::to_string(point->size()) + " coordinates, dimension is " +
                         std::to_string(n));
      }
      out["value"] = to_json(evaluate(f, *point));
    }
    if (!diff.empty()) {
      Exponent alpha = zero_exponent(n);
      for (int v : diff) ++alpha[static_cast<std::size_t>(v - 1)];
      out["derivative"] = print(derivative(f, alpha));
    }
    if (auto op = in.get("op")) {
      if (!w) throw CLI::RequiredError("--with");
      const Polynomial g = to_polynomial(*w, n);
      if (*op == "add") {
        out["result"] = print(f + g);
      } else if (*op == "sub") {
        out["result"] = print(f - g);
      } else if (*op == "mul") {
        out["result"] = print(f * g);
      } else {
        throw CLI::ValidationError("--op", "expected add, sub or mul");
      }
    }
    return {out};
  }

  if (kind == "multivector") {
    const Expression e = parse(text, ExprKind::multivector);
    dims.use(e);
    const int n = dims.dim();
    const PolyVector v = to_polyvector(e, n);
    out["dim"] = n;
    out["degree"] = v.degree();
    out["canonical"] = print(v);
    return {out};
  }

  if (kind == "operator") {
    const Expression e = parse(text, ExprKind::operator_);
    dims.use(e);
    std::vector<Expression> args;
    if (auto a = in.get("args")) {
      for (const auto& s : string_list(*a, "--args")) {
        args.push_back(parse(s, ExprKind::polynomial));
        dims.use(args.back());
      }
    }
    const int n = dims.dim();
    const MultiDiffOp d = to_operator(e, n);
    out["dim"] = n;
    out["canonical"] = print(d);
    out["operator"] = to_json(d);
    if (in.has("args")) {
      std::vector<Polynomial> values;
      for (const auto& a : args) values.push_back(to_polynomial(a, n));
      out["result"] = print(dq::apply(d, values));
    }
    return {out};
  }
  throw CLI::ValidationError("--kind", "expected polynomial, multivector, operator or series");
}

Reply cmd_schouten(const Inputs& in) {
  const Expression a = parse(in.require("a"), ExprKind::multivector);
  const Expression b = parse(in.require("b"), ExprKind::multivector);
  DimTracker dims(in);
  dims.use(a);
  dims.use(b);
  const int n = dims.dim();
  const PolyVector x = to_polyvector(a, n), y = to_polyvector(b, n);
  const PolyVector r = in.on("wedge") ? wedge(x, y) : schouten_bracket(x, y);
  return {{{"degree", r.degree()}, {"result", print(r)}}};
}

Reply cmd_sharp(const Inputs& in) {
  const Expression b = parse(in.require("bivector"), ExprKind::multivector);
  DimTracker dims(in);
  dims.use(b);
  if (auto h = in.get("hamiltonian")) {
    const Expression f = parse(*h, ExprKind::polynomial);
    dims.use(f);
    const int n = dims.dim();
    return {{{"vector_field", print(hamiltonian_vf(to_polyvector(b, n), to_polynomial(f, n)))}}};
  }
  std::vector<Expression> comps;
  for (const auto& s : string_list(in.require("alpha"), "--alpha")) {
    comps.push_back(parse(s, ExprKind::polynomial));
    dims.use(comps.back());
  }
  const int n = dims.dim();
  if (static_cast<int>(comps.size()) > n) dims.fix(static_cast<int>(comps.size()), "--alpha");
  std::vector<Polynomial> alpha;
  for (const auto& c : comps) alpha.push_back(to_polynomial(c, n));
  while (static_cast<int>(alpha.size()) < n) alpha.emplace_back(n);
  return {{{"vector_field", print(sharp(to_polyvector(b, n), CovectorField(alpha)))}}};
}

Reply cmd_pbracket(const Inputs& in) {
  DimTracker dims(in);
  if (in.on("formal") || in.has("order")) {
    const auto p = parse_series(in.require("bivector"), ExprKind::multivector);
    const auto f = parse_series(in.require("f"), ExprKind::polynomial);
    const auto g = parse_series(in.require("g"), ExprKind::polynomial);
    dims.use(p);
    dims.use(f);
    dims.use(g);
    const int n = dims.dim();
    const int order = series_order(in, {&p, &f, &g});
    const auto r = formal_poisson_bracket(to_polyvector_series(p, n, order, 2),
                                          to_polynomial_series(f, n, order),
                                          to_polynomial_series(g, n, order));
    return {{{"bracket", series_json(r)}}};
  }
  const Expression p = parse(in.require("bivector"), ExprKind::multivector);
  const Expression f = parse(in.require("f"), ExprKind::polynomial);
  const Expression g = parse(in.require("g"), ExprKind::polynomial);
  dims.use(p);
  dims.use(f);
  dims.use(g);
  const int n = dims.dim();
  return {{{"bracket", print(poisson_bracket(to_polyvector(p, n), to_polynomial(f, n), to_polynomial(g, n)))}}};
}

Reply cmd_jacobiator(const Inputs& in) {
  const Expression p = parse(in.require("bivector"), ExprKind::multivector);
  std::vector<Expression> fs;
  for (const char* k : {"f", "g", "h"}) fs.push_back(parse(in.require(k), ExprKind::polynomial));
  DimTracker dims(in);
  dims.use(p);
  for (const auto& e : fs) dims.use(e);
  const int n = dims.dim();
  const Polynomial j = jacobiator(to_polyvector(p, n), to_polynomial(fs[0], n), to_polynomial(fs[1], n),
                                  to_polynomial(fs[2], n));
  return {{{"jacobiator", print(j)}}};
}

Reply cmd_poisson_check(const Inputs& in) {
  const Expression p = parse(in.require("bivector"), ExprKind::multivector);
  DimTracker dims(in);
  dims.use(p);
  const auto r = is_poisson(to_polyvector(p, dims.dim()));
  return {{{"poisson", r.poisson}, {"witness", nonzero_or_zero(r.witness)}},
          r.poisson ? exit_ok : exit_check_failed};
}

Reply cmd_moyal(const Inputs& in) {
  const StarSpec spec(in);
  if (spec.kind != "moyal") throw CLI::ValidationError("--star", "moyal builds the Moyal product only");
  DimTracker dims(in);
  spec.register_dim(dims);
  std::optional<SeriesExpression> f, g;
  if (auto t = in.get("f")) f = parse_series(*t, ExprKind::polynomial);
  if (auto t = in.get("g")) g = parse_series(*t, ExprKind::polynomial);
  if (f.has_value() != g.has_value()) throw CLI::RequiredError(f ? "--g" : "--f");
  if (f) {
    dims.use(*f);
    dims.use(*g);
  }
  const int n = dims.dim();
  const StarProduct s = spec.build(n);
  if (!f) return {{{"terms", operator_series_json(s.terms())}}};
  const int order = s.order();
  return {{{"product", series_json(star_apply(s, to_polynomial_series(*f, n, order),
                                              to_polynomial_series(*g, n, order)))}}};
}

Reply cmd_star_apply(const Inputs& in) {
  const StarSpec spec(in);
  const auto f = parse_series(in.require("f"), ExprKind::polynomial);
  const auto g = parse_series(in.require("g"), ExprKind::polynomial);
  DimTracker dims(in);
  spec.register_dim(dims);
  dims.use(f);
  dims.use(g);
  const int n = dims.dim();
  const StarProduct s = spec.build(n);
  return {{{"product", series_json(star_apply(s, to_polynomial_series(f, n, s.order()),
                                              to_polynomial_series(g, n, s.order())))}}};
}

Reply cmd_assoc_check(const Inputs& in) {
  const StarSpec spec(in);
  std::vector<Expression> fs;
  for (const char* k : {"f", "g", "h"}) fs.push_back(parse(in.require(k), ExprKind::polynomial));
  DimTracker dims(in);
  spec.register_dim(dims);
  for (const auto& e : fs) dims.use(e);
  const int n = dims.dim();
  const auto r = associator_residual(spec.build(n), to_polynomial(fs[0], n), to_polynomial(fs[1], n),
                                     to_polynomial(fs[2], n));
  return {{{"residual", print_series(r)}}, all_zero(r) ? exit_ok : exit_check_failed};
}

Reply cmd_skew_p1(const Inputs& in) {
  const StarSpec spec(in);
  DimTracker dims(in);
  spec.register_dim(dims);
  return {{{"bivector", nonzero_or_zero(first_order_skew(spec.build(dims.dim())))}}};
}

Reply cmd_mc_check(const Inputs& in) {
  const std::string side = in.get("side").value_or("star");
  if (side == "star") {
    const StarSpec spec(in);
    DimTracker dims(in);
    spec.register_dim(dims);
    const auto r = mc_residual_star(spec.build(dims.dim()).deformation());
    return {{{"residual", print_series(r)}}, all_zero(r) ? exit_ok : exit_check_failed};
  }
  if (side == "poisson") {
    const auto p = parse_series(in.require("bivector"), ExprKind::multivector);
    DimTracker dims(in);
    dims.use(p);
    const int n = dims.dim();
    const auto r = mc_residual_poisson(to_polyvector_series(p, n, series_order(in, {&p}), 2));
    return {{{"residual", print_series(r)}}, all_zero(r) ? exit_ok : exit_check_failed};
  }
  throw CLI::ValidationError("--side", "expected star or poisson");
}

OperatorSeries equivalence_terms(const SeriesExpression& t, int dim, int order) {
  OperatorSeries terms = to_operator_series(t, dim, order, 1);
  const bool has_zero_entry =
      std::any_of(t.entries.begin(), t.entries.end(), [](const auto& e) { return e.first == 0; });
  if (has_zero_entry) return terms;
  std::vector<MultiDiffOp> v(terms.coeffs());
  v[0] = MultiDiffOp::identity(dim);
  return OperatorSeries(std::move(v));
}

Reply cmd_equiv_apply(const Inputs& in) {
  const StarSpec spec(in);
  const auto t = parse_series(in.require("t"), ExprKind::operator_);
  DimTracker dims(in);
  spec.register_dim(dims);
  dims.use(t);
  const int n = dims.dim();
  const StarProduct s = spec.build(n);
  const EquivalenceOp op(equivalence_terms(t, n, s.order()));
  const StarProduct moved = equivalence_apply(op, s);
  return {{{"terms", operator_series_json(moved.terms())}}};
}

Reply cmd_gauge(const Inputs& in) {
  const std::string side = in.get("side").value_or("schouten");
  if (side == "schouten") {
    const auto x = parse_series(in.require("vf"), ExprKind::multivector);
    const auto p = parse_series(in.require("bivector"), ExprKind::multivector);
    DimTracker dims(in);
    dims.use(x);
    dims.use(p);
    const int n = dims.dim();
    const int order = series_order(in, {&x, &p});
    const auto r = gauge_apply_bivector(to_polyvector_series(x, n, order, 1),
                                        to_polyvector_series(p, n, order, 2));
    return {{{"result", series_json(r)}}};
  }
  if (side == "gerstenhaber") {
    const StarSpec spec(in);
    const auto g = parse_series(in.require("g"), ExprKind::operator_);
    DimTracker dims(in);
    spec.register_dim(dims);
    dims.use(g);
    const int n = dims.dim();
    const StarProduct s = spec.build(n);
    const auto r = gauge_act_dgla(to_operator_series(g, n, s.order(), 1), s.deformation(),
                                  gerstenhaber_dgla());
    return {{{"result", operator_series_json(r)}}};
  }
  throw CLI::ValidationError("--side", "expected schouten or gerstenhaber");
}

Reply cmd_bch(const Inputs& in) {
  const auto x = parse_series(in.require("x"), ExprKind::multivector);
  const auto y = parse_series(in.require("y"), ExprKind::multivector);
  DimTracker dims(in);
  dims.use(x);
  dims.use(y);
  const int n = dims.dim();
  const int order = series_order(in, {&x, &y});
  return {{{"result", series_json(bch(to_polyvector_series(x, n, order, 1),
                                      to_polyvector_series(y, n, order, 1)))}}};
}

Reply cmd_hochschild_d(const Inputs& in) {
  const Expression e = parse(in.require("op"), ExprKind::operator_);
  DimTracker dims(in);
  dims.use(e);
  const MultiDiffOp d = to_operator(e, dims.dim());
  if (in.on("normalized")) return {{{"normalized", is_normalized(d)}}};
  return {{{"result", to_json(hochschild_d(d))}}};
}

Reply cmd_gerst(const Inputs& in) {
  const Expression a = parse(in.require("a"), ExprKind::operator_);
  const Expression b = parse(in.require("b"), ExprKind::operator_);
  DimTracker dims(in);
  dims.use(a);
  dims.use(b);
  const int n = dims.dim();
  const MultiDiffOp x = to_operator(a, n), y = to_operator(b, n);
  return {{{"result", to_json(in.on("product") ? gerst_product(x, y) : gerst_bracket(x, y))}}};
}

Reply cmd_hkr(const Inputs& in) {
  const Expression e = parse(in.require("multivector"), ExprKind::multivector);
  DimTracker dims(in);
  dims.use(e);
  const PolyVector x = to_polyvector(e, dims.dim());
  if (in.on("chain")) {
    const MultiDiffOp d = hkr_chain_check(x);
    return {{{"cocycle", d.is_zero()}, {"d", to_json(d)}}};
  }
  return {{{"result", to_json(hkr_map(x))}}};
}

Reply cmd_hkr_defect(const Inputs& in) {
  const Expression a = parse(in.require("a"), ExprKind::multivector);
  const Expression b = parse(in.require("b"), ExprKind::multivector);
  DimTracker dims(in);
  dims.use(a);
  dims.use(b);
  const int n = dims.dim();
  const auto r = hkr_bracket_defect(to_polyvector(a, n), to_polyvector(b, n));
  return {{{"closed", r.closed}, {"defect", to_json(r.defect)}}};
}

Reply cmd_linfty_check(const Inputs& in) {
  const auto as = in.all("a"), bs = in.all("b");
  if (as.empty()) throw CLI::RequiredError("--a");
  if (as.size() != bs.size()) throw CLI::ValidationError("--a/--b", "need the same number of --a and --b");
  std::vector<std::pair<Expression, Expression>> exprs;
  DimTracker dims(in);
  for (std::size_t k = 0; k < as.size(); ++k) {
    exprs.emplace_back(parse(as[k], ExprKind::multivector), parse(bs[k], ExprKind::multivector));
    dims.use(exprs.back().first);
    dims.use(exprs.back().second);
  }
  const int n = dims.dim();
  std::vector<std::pair<PolyVector, PolyVector>> samples;
  for (const auto& [a, b] : exprs) samples.emplace_back(to_polyvector(a, n), to_polyvector(b, n));
  const std::string fam = in.get("family").value_or("hkr");
  LInftyMapFamily family;
  if (fam == "hkr") {
    family = hkr_family();
  } else if (fam == "zero") {
    family = zero_family();
  } else {
    throw CLI::ValidationError("--family", "expected hkr or zero");
  }
  const auto report = linfty_check(family, samples);
  json rows = json::array();
  for (const auto& s : report.samples) {
    rows.push_back({{"antisymmetric", s.antisymmetric},
                    {"bracket_homotopy", s.bracket_homotopy},
                    {"chain_map", s.chain_map}});
  }
  return {{{"passed", report.passed()}, {"samples", rows}},
          report.passed() ? exit_ok : exit_check_failed};
}

const std::vector<Command>& commands() {
  static const std::vector<Command> table = {
      {{"parse", "parse, print, evaluate and combine polynomials, multivectors, operators and h-series",
        {"parse", "poly_ring_ops", "evaluate", "partial_derive", "series_add", "series_mul",
         "series_invert", "apply"}},
       {{"kind", "polynomial (default), multivector, operator or series"},
        {"expr", "expression text"},
        {"at", "evaluation point as a JSON array"},
        {"diff", "1-based variables to differentiate by, e.g. \"1 1 2\""},
        {"op", "add, sub, mul (and invert for series)"},
        {"with", "second operand for --op"},
        {"args", "operator arguments as a JSON array of polynomials"},
        {"order", "truncation order for series"},
        {"dim", "ambient dimension"}},
       cmd_parse},
      {{"schouten", "Schouten-Nijenhuis bracket (or wedge) of two multivectors",
        {"schouten_bracket", "wedge"}},
       {{"a", "first multivector"}, {"b", "second multivector"},
        {"wedge", "wedge product instead of the bracket", FlagKind::toggle}, {"dim", "ambient dimension"}},
       cmd_schouten},
      {{"sharp", "sharp map of a bivector on a 1-form, or a Hamiltonian vector field",
        {"sharp", "hamiltonian_vf"}},
       {{"bivector", "bivector"}, {"alpha", "1-form components as a JSON array of polynomials"},
        {"hamiltonian", "function f for X_f"}, {"dim", "ambient dimension"}},
       cmd_sharp},
      {{"pbracket", "Poisson bracket {f,g}, or its formal version with --formal",
        {"poisson_bracket", "formal_poisson_bracket"}},
       {{"bivector", "bivector (an h-series with --formal)"}, {"f", "first function"},
        {"g", "second function"}, {"formal", "treat inputs as h-series", FlagKind::toggle},
        {"order", "truncation order (implies --formal)"}, {"dim", "ambient dimension"}},
       cmd_pbracket},
      {{"jacobiator", "cyclic sum {f,{g,h}} + {g,{h,f}} + {h,{f,g}}", {"jacobiator"}},
       {{"bivector", "bivector"}, {"f", "f"}, {"g", "g"}, {"h", "h"}, {"dim", "ambient dimension"}},
       cmd_jacobiator},
      {{"poisson-check", "is the bivector Poisson? witness [pi,pi]_S", {"is_poisson"}},
       {{"bivector", "bivector"}, {"dim", "ambient dimension"}},
       cmd_poisson_check},
      {{"moyal", "Moyal product terms, or f * g when --f and --g are given", {"moyal_star"}},
       with_star({{"f", "first factor (h-series allowed)"}, {"g", "second factor (h-series allowed)"}}),
       cmd_moyal},
      {{"star-apply", "f * g for a star product (pointwise gives the undeformed product)",
        {"star_apply", "mult_op"}},
       with_star({{"f", "first factor (h-series allowed)"}, {"g", "second factor (h-series allowed)"}}),
       cmd_star_apply},
      {{"assoc-check", "associator (f*g)*h - f*(g*h)", {"associator_residual"}},
       with_star({{"f", "f"}, {"g", "g"}, {"h", "h"}}),
       cmd_assoc_check},
      {{"skew-p1", "bivector of the skew part of P_1", {"first_order_skew"}},
       with_star({}),
       cmd_skew_p1},
      {{"mc-check", "Maurer-Cartan residual of a star product or a formal bivector",
        {"mc_residual_star", "mc_residual_poisson"}},
       with_star({{"side", "star (default) or poisson"}, {"bivector", "formal bivector for --side poisson"}}),
       cmd_mc_check},
      {{"equiv-apply", "transport a star product along T = id + h T_1 + ...", {"equivalence_apply"}},
       with_star({{"t", "operator series of T; the h^0 identity is implied when absent"}}),
       cmd_equiv_apply},
      {{"gauge", "gauge action on a formal bivector, or on a star product's deformation",
        {"gauge_apply_bivector", "gauge_act_dgla"}},
       with_star({{"side", "schouten (default) or gerstenhaber"},
                  {"vf", "formal vector field X, acting through exp(hX)"},
                  {"bivector", "formal bivector"},
                  {"g", "operator series g (zero at h^0) for --side gerstenhaber"}}),
       cmd_gauge},
      {{"bch", "Z with exp(hZ) = exp(hX) exp(hY)", {"bch"}},
       {{"x", "formal vector field X"}, {"y", "formal vector field Y"}, {"order", "truncation order"},
        {"dim", "ambient dimension"}},
       cmd_bch},
      {{"hochschild-d", "Hochschild differential [m, D]_G, or the normalization test",
        {"hochschild_d", "is_normalized"}},
       {{"op", "operator"}, {"normalized", "report whether D kills constants", FlagKind::toggle},
        {"dim", "ambient dimension"}},
       cmd_hochschild_d},
      {{"gerst", "Gerstenhaber bracket (or product with --product)", {"gerst_bracket", "gerst_product"}},
       {{"a", "first operator"}, {"b", "second operator"},
        {"product", "Gerstenhaber product instead of the bracket", FlagKind::toggle},
        {"dim", "ambient dimension"}},
       cmd_gerst},
      {{"hkr", "HKR operator of a multivector (or its Hochschild differential with --chain)",
        {"hkr_map", "hkr_chain_check"}},
       {{"multivector", "multivector"}, {"chain", "report d(hkr X)", FlagKind::toggle},
        {"dim", "ambient dimension"}},
       cmd_hkr},
      {{"hkr-defect", "hkr([X,Y]_S) - [hkr X, hkr Y]_G and whether it is d-closed",
        {"hkr_bracket_defect"}},
       {{"a", "X"}, {"b", "Y"}, {"dim", "ambient dimension"}},
       cmd_hkr_defect},
      {{"linfty-check", "low-arity L-infinity conditions on sample pairs", {"linfty_check"}},
       {{"a", "first entry of a sample pair", FlagKind::repeated},
        {"b", "second entry of a sample pair", FlagKind::repeated},
        {"family", "hkr (default) or zero"},
        {"dim", "ambient dimension"}},
       cmd_linfty_check},
  };
  return table;
}

void merge_file(const std::string& path, const std::vector<FlagSpec>& flags, Inputs& in) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot read " + path);
  json j;
  try {
    j = json::parse(f);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what(), e.byte);
  }
  if (!j.is_object()) throw ParseError(path + ": expected a JSON object", 0);
  auto text = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  for (const auto& [key, value] : j.items()) {
    auto spec = std::find_if(flags.begin(), flags.end(), [&](const FlagSpec& s) { return s.name == key; });
    if (spec == flags.end() || key == "file") throw UsageError(path + ": unknown key '" + key + "'");
    if (spec->kind == FlagKind::toggle) {
      if (!value.is_boolean()) throw UsageError(path + ": '" + key + "' must be true or false");
      if (value.get<bool>()) in.toggles.insert(key);
      continue;
    }
    if (in.has(key)) continue;  // the command line wins
    if (spec->kind == FlagKind::repeated && value.is_array()) {
      for (const auto& v : value) in.values[key].push_back(text(v));
    } else {
      in.values[key].push_back(text(value));
    }
  }
}

std::string usage_text(const CLI::App& app, const CLI::App* sub) {
  return sub != nullptr ? sub->help() : app.help();
}

}  // namespace

const std::vector<Subcommand>& dispatch_table() {
  static const std::vector<Subcommand> table = [] {
    std::vector<Subcommand> out;
    for (const auto& c : commands()) out.push_back(c.info);
    return out;
  }();
  return table;
}

Outcome run(const std::vector<std::string>& args) {
  CLI::App app("Deformation quantization toolkit: exact computations with Poisson structures, "
               "star products and multidifferential operators.",
               "dq");
  app.set_help_flag("--help", "print this help message and exit");
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "show help for every subcommand");

  const auto& cmds = commands();
  std::vector<std::map<std::string, std::string>> singles(cmds.size());
  std::vector<std::map<std::string, std::vector<std::string>>> multis(cmds.size());
  std::vector<std::map<std::string, bool>> switches(cmds.size());
  std::vector<std::string> files(cmds.size());
  std::vector<CLI::App*> subs;

  for (std::size_t k = 0; k < cmds.size(); ++k) {
    const auto& c = cmds[k];
    CLI::App* sub = app.add_subcommand(c.info.name, c.info.help);
    for (const auto& f : c.flags) {
      const std::string flag = "--" + f.name;
      switch (f.kind) {
        case FlagKind::value:
          sub->add_option(flag, singles[k][f.name], f.help);
          break;
        case FlagKind::repeated:
          sub->add_option(flag, multis[k][f.name], f.help);
          break;
        case FlagKind::toggle:
          sub->add_flag(flag, switches[k][f.name], f.help);
          break;
      }
    }
    sub->add_option("--file", files[k], "JSON object supplying flags by name");
    subs.push_back(sub);
  }

  Outcome outcome;
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const CLI::App* active = nullptr;
    for (auto* s : subs) {
      if (s->parsed()) active = s;
    }
    outcome.out = usage_text(app, active);
    return outcome;
  } catch (const CLI::CallForAllHelp&) {
    outcome.out = app.help("", CLI::AppFormatMode::All);
    return outcome;
  } catch (const CLI::ParseError& e) {
    outcome.err = std::string("error: ") + e.what() + "\n";
    outcome.exit_code = exit_parse_error;
    return outcome;
  }

  std::size_t k = 0;
  while (k < subs.size() && !subs[k]->parsed()) ++k;
  const Command& cmd = cmds[k];

  try {
    Inputs in;
    for (const auto& f : cmd.flags) {
      const CLI::Option* opt = subs[k]->get_option("--" + f.name);
      if (opt->count() == 0) continue;
      switch (f.kind) {
        case FlagKind::value:
          in.values[f.name] = {singles[k][f.name]};
          break;
        case FlagKind::repeated:
          in.values[f.name] = multis[k][f.name];
          break;
        case FlagKind::toggle:
          if (switches[k][f.name]) in.toggles.insert(f.name);
          break;
      }
    }
    if (!files[k].empty()) merge_file(files[k], cmd.flags, in);
    const Reply reply = cmd.handler(in);
    outcome.out = reply.body.dump() + "\n";
    outcome.exit_code = reply.exit_code;
  } catch (const CLI::Error& e) {
    outcome.err = std::string("error: ") + e.what() + "\n";
    outcome.exit_code = exit_parse_error;
  } catch (const ParseError& e) {
    outcome.err = "parse error at " + std::to_string(e.position()) + ": " + e.what() + "\n";
    outcome.exit_code = exit_parse_error;
  } catch (const json::exception& e) {
    outcome.err = std::string("malformed JSON argument: ") + e.what() + "\n";
    outcome.exit_code = exit_parse_error;
  } catch (const UsageError& e) {
    outcome.err = std::string("usage error: ") + e.what() + "\n";
    outcome.exit_code = exit_domain_error;
  } catch (const DomainError& e) {
    outcome.err = std::string("domain error: ") + e.what() + "\n";
    outcome.exit_code = exit_domain_error;
  } catch (const std::exception& e) {
    outcome.err = std::string("error: ") + e.what() + "\n";
    outcome.exit_code = exit_domain_error;
  }
  return outcome;
}

}  // namespace dq::cli
