#ifndef DQ_JSON_IO_HPP
#define DQ_JSON_IO_HPP

#include <json.hpp>

#include "dq/multidiff.hpp"
#include "dq/parse.hpp"
#include "dq/scalar.hpp"
#include "dq/series.hpp"

namespace dq {

/// "p/q" (or "p" for integers).
nlohmann::json to_json(const Rational& q);
/// {"re": "p/q", "im": "p/q"}
nlohmann::json to_json(const Gaussian& z);
Gaussian gaussian_from_json(const nlohmann::json& j);

/// Term-list mirror of an operator:
/// {"arity": n, "dim": d, "expr": "<text>", "terms": [{"coeff": "<poly>", "derivs": [[1], [2, 2]]}]}
/// with 1-based variable indices in each derivative list.
nlohmann::json to_json(const MultiDiffOp& d);
MultiDiffOp operator_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ScalarSeries& s);

/// {"order": N, "coeffs": [...]} with each coefficient in its text form.
template <class C>
nlohmann::json series_json(const HbarSeries<C>& s) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const C& c : s) coeffs.push_back(print(c));
  return {{"order", s.order()}, {"coeffs", coeffs}};
}

/// Same, with operator coefficients in their term-list form.
nlohmann::json operator_series_json(const HbarSeries<MultiDiffOp>& s);

}  // namespace dq

#endif  // DQ_JSON_IO_HPP
