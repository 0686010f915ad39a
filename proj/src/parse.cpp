#include "dq/parse.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

#include "dq/errors.hpp"

namespace dq {

namespace {

enum class Tok {
  number, variable, partial, imag, plus, minus, star, slash, power, wedge,
  lparen, rparen, lbracket, rbracket, bar, colon, semicolon, end
};

struct Token {
  Tok kind;
  std::size_t pos;
  std::string text;
  int index = 0;  // 0-based, for variable / partial
};

const char* tok_name(Tok t) {
  switch (t) {
    case Tok::number: return "number";
    case Tok::variable: return "variable";
    case Tok::partial: return "partial derivative";
    case Tok::imag: return "'i'";
    case Tok::plus: return "'+'";
    case Tok::minus: return "'-'";
    case Tok::star: return "'*'";
    case Tok::slash: return "'/'";
    case Tok::power: return "'**'";
    case Tok::wedge: return "'^'";
    case Tok::lparen: return "'('";
    case Tok::rparen: return "')'";
    case Tok::lbracket: return "'['";
    case Tok::rbracket: return "']'";
    case Tok::bar: return "'|'";
    case Tok::colon: return "':'";
    case Tok::semicolon: return "';'";
    case Tok::end: return "end of input";
  }
  return "?";
}

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto digits = [&](std::size_t from) {
    std::size_t j = from;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    return j;
  };
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      i = digits(i);
      out.push_back({Tok::number, start, std::string(s.substr(start, i - start))});
      continue;
    }
    if (c == 'x' || c == 'd') {
      const std::size_t j = digits(i + 1);
      if (j == i + 1) throw ParseError(std::string("expected an index after '") + c + "'", i);
      const std::string num(s.substr(i + 1, j - i - 1));
      const long idx = std::stol(num);
      if (idx < 1 || idx > 4096) throw ParseError("index out of range: " + num, i + 1);
      if (j < s.size() && std::isalpha(static_cast<unsigned char>(s[j]))) {
        throw ParseError("unexpected character after index", j);
      }
      out.push_back({c == 'x' ? Tok::variable : Tok::partial, start,
                     std::string(s.substr(start, j - start)), static_cast<int>(idx) - 1});
      i = j;
      continue;
    }
    if (c == 'i') {
      if (i + 1 < s.size() && std::isalnum(static_cast<unsigned char>(s[i + 1]))) {
        throw ParseError("unknown identifier", i);
      }
      out.push_back({Tok::imag, start, "i"});
      ++i;
      continue;
    }
    if (c == '*' && i + 1 < s.size() && s[i + 1] == '*') {
      out.push_back({Tok::power, start, "**"});
      i += 2;
      continue;
    }
    Tok t;
    switch (c) {
      case '+': t = Tok::plus; break;
      case '-': t = Tok::minus; break;
      case '*': t = Tok::star; break;
      case '/': t = Tok::slash; break;
      case '^': t = Tok::wedge; break;
      case '(': t = Tok::lparen; break;
      case ')': t = Tok::rparen; break;
      case '[': t = Tok::lbracket; break;
      case ']': t = Tok::rbracket; break;
      case '|': t = Tok::bar; break;
      case ':': t = Tok::colon; break;
      case ';': t = Tok::semicolon; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", i);
    }
    out.push_back({t, start, std::string(1, c)});
    ++i;
  }
  out.push_back({Tok::end, s.size(), ""});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, ExprKind kind) : toks_(std::move(toks)), kind_(kind) {}

  Expression expression() {
    Expression e = sum();
    return e;
  }

  const Token& peek() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_++]; }
  bool accept(Tok t) {
    if (peek().kind != t) return false;
    ++pos_;
    return true;
  }
  const Token& expect(Tok t) {
    if (peek().kind != t) {
      throw ParseError(std::string("expected ") + tok_name(t) + ", found " + tok_name(peek().kind),
                       peek().pos);
    }
    return take();
  }

 private:
  static Expression node(Expression::Node n, std::size_t pos) {
    Expression e;
    e.node = n;
    e.position = pos;
    return e;
  }

  static Expression binary(Expression::Node n, Expression a, Expression b, std::size_t pos) {
    Expression e = node(n, pos);
    e.children.push_back(std::move(a));
    e.children.push_back(std::move(b));
    return e;
  }

  static Expression negate(Expression a) {
    Expression e = node(Expression::Node::negate, a.position);
    e.children.push_back(std::move(a));
    return e;
  }

  Expression sum() {
    const std::size_t pos = peek().pos;
    std::vector<Expression> parts;
    bool neg = false;
    if (accept(Tok::minus)) {
      neg = true;
    } else {
      accept(Tok::plus);
    }
    parts.push_back(neg ? negate(term()) : term());
    while (true) {
      if (accept(Tok::plus)) {
        parts.push_back(term());
      } else if (accept(Tok::minus)) {
        parts.push_back(negate(term()));
      } else {
        break;
      }
    }
    if (parts.size() == 1) return std::move(parts.front());
    Expression e = node(Expression::Node::sum, pos);
    e.children = std::move(parts);
    return e;
  }

  // product [slots] | slots
  Expression term() {
    const std::size_t pos = peek().pos;
    if (peek().kind == Tok::lbracket) return slot_list(std::nullopt);
    Expression e = wedge_expr();
    while (true) {
      const Token& t = peek();
      if (t.kind == Tok::star) {
        take();
        if (peek().kind == Tok::lbracket) return slot_list(std::move(e));
        e = binary(Expression::Node::product, std::move(e), wedge_expr(), t.pos);
      } else if (t.kind == Tok::slash) {
        take();
        e = binary(Expression::Node::quotient, std::move(e), wedge_expr(), t.pos);
      } else if (t.kind == Tok::lbracket) {
        return slot_list(std::move(e));
      } else {
        break;
      }
    }
    (void)pos;
    return e;
  }

  Expression slot_list(std::optional<Expression> coeff) {
    const Token& open = expect(Tok::lbracket);
    if (kind_ != ExprKind::operator_) {
      throw ParseError("operator slots are not allowed in this kind of expression", open.pos);
    }
    Expression e = node(Expression::Node::slots, coeff ? coeff->position : open.pos);
    if (coeff) e.children.push_back(std::move(*coeff));
    e.slots.emplace_back();
    while (true) {
      const Token& t = take();
      if (t.kind == Tok::partial) {
        e.slots.back().push_back(t.index);
      } else if (t.kind == Tok::bar) {
        e.slots.emplace_back();
      } else if (t.kind == Tok::rbracket) {
        break;
      } else {
        throw ParseError(std::string("expected d<i>, '|' or ']' in operator slots, found ") +
                             tok_name(t.kind),
                         t.pos);
      }
    }
    for (auto& s : e.slots) std::sort(s.begin(), s.end());
    return e;
  }

  Expression wedge_expr() {
    Expression e = power();
    while (peek().kind == Tok::wedge) {
      const Token& t = take();
      if (kind_ != ExprKind::multivector) {
        throw ParseError("wedge '^' is only allowed in multivector expressions (use '**' for powers)",
                         t.pos);
      }
      e = binary(Expression::Node::wedge, std::move(e), power(), t.pos);
    }
    return e;
  }

  Expression power() {
    Expression base = atom();
    if (peek().kind == Tok::power) {
      const Token& t = take();
      const Token& n = expect(Tok::number);
      Expression e = node(Expression::Node::power, t.pos);
      if (n.text.size() > 6) throw ParseError("exponent too large", n.pos);
      e.exponent = static_cast<unsigned>(std::stoul(n.text));
      e.children.push_back(std::move(base));
      return e;
    }
    return base;
  }

  Expression atom() {
    const Token& t = take();
    switch (t.kind) {
      case Tok::number: {
        Expression e = node(Expression::Node::rational, t.pos);
        e.value = Rational(mpz_class(t.text));
        return e;
      }
      case Tok::imag:
        return node(Expression::Node::imaginary_unit, t.pos);
      case Tok::variable: {
        Expression e = node(Expression::Node::variable, t.pos);
        e.index = t.index;
        return e;
      }
      case Tok::partial: {
        if (kind_ != ExprKind::multivector) {
          throw ParseError(kind_ == ExprKind::operator_
                               ? "partials must appear inside operator slots [ ... ]"
                               : "partial derivatives are not allowed in a polynomial",
                           t.pos);
        }
        Expression e = node(Expression::Node::partial, t.pos);
        e.index = t.index;
        return e;
      }
      case Tok::minus:
        return negate(power());
      case Tok::lparen: {
        Expression e = sum();
        expect(Tok::rparen);
        return e;
      }
      default:
        throw ParseError(std::string("unexpected ") + tok_name(t.kind), t.pos);
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  ExprKind kind_;
};

// ---- evaluation ----------------------------------------------------------

PolyVector add_homogeneous(PolyVector a, const PolyVector& b, std::size_t pos) {
  if (a.is_zero() && a.degree() != b.degree()) return b;
  if (!b.is_zero() && a.degree() != b.degree()) {
    throw ParseError("sum mixes multivector degrees " + std::to_string(a.degree()) + " and " +
                         std::to_string(b.degree()),
                     pos);
  }
  return a += b;
}

PolyVector eval_pv(const Expression& e, int dim) {
  using N = Expression::Node;
  switch (e.node) {
    case N::rational:
      return PolyVector::function(Polynomial::constant(dim, e.value));
    case N::imaginary_unit:
      return PolyVector::function(Polynomial::constant(dim, Gaussian::i()));
    case N::variable:
      if (e.index >= dim) throw ParseError("x" + std::to_string(e.index + 1) + " exceeds dimension", e.position);
      return PolyVector::function(Polynomial::variable(dim, e.index));
    case N::partial:
      if (e.index >= dim) throw ParseError("d" + std::to_string(e.index + 1) + " exceeds dimension", e.position);
      return PolyVector::partial(dim, e.index);
    case N::negate:
      return -eval_pv(e.children[0], dim);
    case N::sum: {
      PolyVector acc = eval_pv(e.children[0], dim);
      for (std::size_t k = 1; k < e.children.size(); ++k) {
        acc = add_homogeneous(std::move(acc), eval_pv(e.children[k], dim), e.children[k].position);
      }
      return acc;
    }
    case N::product:
    case N::wedge:
      return wedge(eval_pv(e.children[0], dim), eval_pv(e.children[1], dim));
    case N::quotient: {
      const PolyVector num = eval_pv(e.children[0], dim);
      const PolyVector den = eval_pv(e.children[1], dim);
      if (den.degree() != 0 || !den.component({}).is_constant() || den.is_zero()) {
        throw ParseError("division only by a nonzero constant", e.position);
      }
      return num * (Gaussian(1) / den.component({}).constant_term());
    }
    case N::power: {
      const PolyVector base = eval_pv(e.children[0], dim);
      if (base.degree() != 0) throw ParseError("'**' needs a function base", e.position);
      return PolyVector::function(pow(base.component({}), e.exponent));
    }
    case N::slots:
      throw ParseError("operator slots in a non-operator expression", e.position);
  }
  throw ParseError("unhandled expression node", e.position);
}

MultiDiffOp eval_op(const Expression& e, int dim) {
  using N = Expression::Node;
  switch (e.node) {
    case N::slots: {
      const Polynomial coeff = e.children.empty() ? Polynomial::constant(dim, 1)
                                                  : to_polynomial(e.children[0], dim);
      SlotKey key;
      for (const auto& slot : e.slots) {
        Exponent a = zero_exponent(dim);
        for (int v : slot) {
          if (v >= dim) throw ParseError("d" + std::to_string(v + 1) + " exceeds dimension", e.position);
          ++a[static_cast<std::size_t>(v)];
        }
        key.push_back(std::move(a));
      }
      MultiDiffOp d(dim, static_cast<int>(key.size()));
      d.add_term(key, coeff);
      return d;
    }
    case N::negate:
      return -eval_op(e.children[0], dim);
    case N::sum: {
      MultiDiffOp acc = eval_op(e.children[0], dim);
      for (std::size_t k = 1; k < e.children.size(); ++k) {
        MultiDiffOp t = eval_op(e.children[k], dim);
        if (t.arity() != acc.arity()) {
          if (acc.is_zero()) {
            acc = std::move(t);
            continue;
          }
          if (t.is_zero()) continue;
          throw ParseError("sum mixes operator arities " + std::to_string(acc.arity()) + " and " +
                               std::to_string(t.arity()),
                           e.children[k].position);
        }
        acc += t;
      }
      return acc;
    }
    default:
      // Anything without slots is a constant (arity 0) cochain.
      return MultiDiffOp::constant(to_polynomial(e, dim));
  }
}

template <class T, class Convert>
HbarSeries<T> series_of(const SeriesExpression& s, int order, const T& zero, Convert&& convert) {
  if (s.max_order() > order) {
    throw UsageError("series entry of order " + std::to_string(s.max_order()) +
                     " exceeds truncation order " + std::to_string(order));
  }
  std::vector<T> c(static_cast<std::size_t>(order) + 1, zero);
  for (const auto& [k, e] : s.entries) {
    T v = convert(e);
    auto& slot = c[static_cast<std::size_t>(k)];
    slot = slot + v;
  }
  return HbarSeries<T>(std::move(c));
}

// ---- printing ------------------------------------------------------------

struct Piece {
  bool negative;
  std::string body;
};

// Splits c * mono into signed pieces; `mono` may be empty.
void coefficient_pieces(const Gaussian& c, const std::string& mono, std::vector<Piece>& out) {
  auto emit = [&](const Rational& r, bool imag) {
    if (sgn(r) == 0) return;
    const Rational a = abs(r);
    std::string body;
    if (a != 1) body = a.get_str();
    if (imag) body += body.empty() ? "i" : "*i";
    if (!mono.empty()) body += body.empty() ? mono : "*" + mono;
    if (body.empty()) body = "1";
    out.push_back({sgn(r) < 0, body});
  };
  emit(c.re(), false);
  emit(c.im(), true);
}

std::string join(const std::vector<Piece>& pieces) {
  if (pieces.empty()) return "0";
  std::string s;
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    if (k == 0) {
      if (pieces[k].negative) s += "-";
    } else {
      s += pieces[k].negative ? " - " : " + ";
    }
    s += pieces[k].body;
  }
  return s;
}

std::string monomial_text(const Exponent& e) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += "x" + std::to_string(i + 1);
    if (e[i] > 1) s += "**" + std::to_string(e[i]);
  }
  return s;
}

// Graded, then lexicographically descending: x1**2, x1*x2, x2**2, x1, x2, 1.
std::vector<std::pair<Exponent, Gaussian>> print_order(const Polynomial& f) {
  std::vector<std::pair<Exponent, Gaussian>> t(f.terms().begin(), f.terms().end());
  std::sort(t.begin(), t.end(), [](const auto& a, const auto& b) {
    const unsigned da = total_degree(a.first);
    const unsigned db = total_degree(b.first);
    if (da != db) return da > db;
    return a.first > b.first;
  });
  return t;
}

void polynomial_pieces(const Polynomial& f, const std::string& suffix, std::vector<Piece>& out) {
  for (const auto& [e, c] : print_order(f)) {
    std::string mono = monomial_text(e);
    if (!suffix.empty()) mono = mono.empty() ? suffix : mono + "*" + suffix;
    coefficient_pieces(c, mono, out);
  }
}

}  // namespace

Expression parse(std::string_view text, ExprKind kind) {
  Parser p(tokenize(text), kind);
  Expression e = p.expression();
  if (p.peek().kind != Tok::end) {
    throw ParseError(std::string("unexpected ") + tok_name(p.peek().kind), p.peek().pos);
  }
  return e;
}

int SeriesExpression::max_order() const {
  int m = 0;
  for (const auto& [k, e] : entries) m = std::max(m, k);
  return m;
}

SeriesExpression parse_series(std::string_view text, ExprKind kind) {
  SeriesExpression s;
  auto toks = tokenize(text);
  const bool bare = std::none_of(toks.begin(), toks.end(),
                                 [](const Token& t) { return t.kind == Tok::colon; });
  if (bare) {
    s.entries.emplace_back(0, parse(text, kind));
    return s;
  }
  Parser p(std::move(toks), kind);
  while (p.peek().kind != Tok::end) {
    const Token& n = p.expect(Tok::number);
    if (n.text.size() > 4) throw ParseError("series order too large", n.pos);
    const int order = std::stoi(n.text);
    p.expect(Tok::colon);
    s.entries.emplace_back(order, p.expression());
    if (!p.accept(Tok::semicolon)) break;
  }
  if (p.peek().kind != Tok::end) {
    throw ParseError(std::string("expected ';' between series entries, found ") +
                         tok_name(p.peek().kind),
                     p.peek().pos);
  }
  return s;
}

int max_index(const Expression& e) {
  int m = 0;
  if (e.node == Expression::Node::variable || e.node == Expression::Node::partial) m = e.index + 1;
  for (const auto& s : e.slots) {
    for (int v : s) m = std::max(m, v + 1);
  }
  for (const auto& c : e.children) m = std::max(m, max_index(c));
  return m;
}

int max_index(const SeriesExpression& s) {
  int m = 0;
  for (const auto& [k, e] : s.entries) m = std::max(m, max_index(e));
  return m;
}

Polynomial to_polynomial(const Expression& e, int dim) {
  const PolyVector v = eval_pv(e, dim);
  if (v.degree() != 0) {
    if (v.is_zero()) return Polynomial(dim);
    throw ParseError("expected a polynomial, got a multivector of degree " +
                         std::to_string(v.degree()),
                     e.position);
  }
  return v.component({});
}

PolyVector to_polyvector(const Expression& e, int dim) { return eval_pv(e, dim); }

MultiDiffOp to_operator(const Expression& e, int dim) { return eval_op(e, dim); }

HbarSeries<Polynomial> to_polynomial_series(const SeriesExpression& s, int dim, int order) {
  return series_of(s, order, Polynomial(dim),
                   [&](const Expression& e) { return to_polynomial(e, dim); });
}

HbarSeries<PolyVector> to_polyvector_series(const SeriesExpression& s, int dim, int order,
                                            int degree) {
  return series_of(s, order, PolyVector(dim, degree), [&](const Expression& e) {
    PolyVector v = to_polyvector(e, dim);
    if (v.is_zero()) return PolyVector(dim, degree);
    if (v.degree() != degree) {
      throw ParseError("expected multivectors of degree " + std::to_string(degree) + ", got " +
                           std::to_string(v.degree()),
                       e.position);
    }
    return v;
  });
}

HbarSeries<MultiDiffOp> to_operator_series(const SeriesExpression& s, int dim, int order,
                                           int arity) {
  return series_of(s, order, MultiDiffOp(dim, arity), [&](const Expression& e) {
    MultiDiffOp d = to_operator(e, dim);
    if (d.is_zero()) return MultiDiffOp(dim, arity);
    if (d.arity() != arity) {
      throw ParseError("expected operators of arity " + std::to_string(arity) + ", got " +
                           std::to_string(d.arity()),
                       e.position);
    }
    return d;
  });
}

std::string print(const Gaussian& c) {
  std::vector<Piece> pieces;
  coefficient_pieces(c, "", pieces);
  return join(pieces);
}

std::string print(const Polynomial& f) {
  std::vector<Piece> pieces;
  polynomial_pieces(f, "", pieces);
  return join(pieces);
}

std::string print(const PolyVector& x) {
  std::vector<Piece> pieces;
  for (const auto& [idx, c] : x.components()) {
    std::string basis;
    for (int i : idx) {
      if (!basis.empty()) basis += "^";
      basis += "d" + std::to_string(i + 1);
    }
    polynomial_pieces(c, basis, pieces);
  }
  return join(pieces);
}

std::string print(const MultiDiffOp& d) {
  if (d.arity() == 0) return d.is_zero() ? "0" : print(d.terms().begin()->second);
  // Order terms by their slot contents written as sorted index lists.
  using Lists = std::vector<std::vector<int>>;
  std::vector<std::pair<Lists, const Polynomial*>> terms;
  for (const auto& [key, c] : d.terms()) {
    Lists lists;
    for (const auto& a : key) {
      std::vector<int> l;
      for (std::size_t i = 0; i < a.size(); ++i) {
        for (unsigned k = 0; k < a[i]; ++k) l.push_back(static_cast<int>(i) + 1);
      }
      lists.push_back(std::move(l));
    }
    terms.emplace_back(std::move(lists), &c);
  }
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Piece> pieces;
  for (const auto& [lists, c] : terms) {
    std::string slots = "[";
    for (std::size_t j = 0; j < lists.size(); ++j) {
      if (j > 0) slots += " |";
      for (int v : lists[j]) slots += " d" + std::to_string(v);
    }
    slots += " ]";
    for (const auto& [e, g] : print_order(*c)) {
      std::vector<Piece> coeff;
      coefficient_pieces(g, monomial_text(e), coeff);
      for (auto& p : coeff) {
        p.body = p.body == "1" ? slots : p.body + " " + slots;
        pieces.push_back(std::move(p));
      }
    }
  }
  return join(pieces);
}

}  // namespace dq
