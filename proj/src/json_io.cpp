#include "dq/json_io.hpp"

#include <algorithm>

#include "dq/errors.hpp"

namespace dq {

nlohmann::json to_json(const Rational& q) { return q.get_str(); }

nlohmann::json to_json(const Gaussian& z) {
  return {{"re", z.re().get_str()}, {"im", z.im().get_str()}};
}

Gaussian gaussian_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return Gaussian(Rational(j.get<long>()));
  if (j.is_string()) return Gaussian(parse_rational(j.get<std::string>()));
  if (j.is_object()) {
    return {parse_rational(j.value("re", std::string("0"))),
            parse_rational(j.value("im", std::string("0")))};
  }
  throw UsageError("expected a rational string, an integer or {\"re\",\"im\"}: " + j.dump());
}

nlohmann::json to_json(const MultiDiffOp& d) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [key, c] : d.terms()) {
    nlohmann::json derivs = nlohmann::json::array();
    for (const auto& a : key) {
      nlohmann::json l = nlohmann::json::array();
      for (std::size_t i = 0; i < a.size(); ++i) {
        for (unsigned k = 0; k < a[i]; ++k) l.push_back(static_cast<int>(i) + 1);
      }
      derivs.push_back(l);
    }
    terms.push_back({{"coeff", print(c)}, {"derivs", derivs}});
  }
  return {{"arity", d.arity()}, {"dim", d.dim()}, {"expr", print(d)}, {"terms", terms}};
}

MultiDiffOp operator_from_json(const nlohmann::json& j) {
  const int dim = j.at("dim").get<int>();
  const int arity = j.at("arity").get<int>();
  MultiDiffOp d(dim, arity);
  for (const auto& t : j.at("terms")) {
    SlotKey key;
    for (const auto& l : t.at("derivs")) {
      Exponent a = zero_exponent(dim);
      for (const auto& v : l) {
        const int idx = v.get<int>();
        if (idx < 1 || idx > dim) throw UsageError("derivative index out of range");
        ++a[static_cast<std::size_t>(idx - 1)];
      }
      key.push_back(std::move(a));
    }
    d.add_term(key, to_polynomial(parse(t.at("coeff").get<std::string>(), ExprKind::polynomial), dim));
  }
  return d;
}

nlohmann::json to_json(const ScalarSeries& s) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : s) coeffs.push_back(to_json(c));
  return {{"order", s.order()}, {"coeffs", coeffs}};
}

nlohmann::json operator_series_json(const HbarSeries<MultiDiffOp>& s) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : s) coeffs.push_back(to_json(c));
  return {{"order", s.order()}, {"coeffs", coeffs}};
}

}  // namespace dq
