#ifndef DQ_TESTS_CORPUS_HPP
#define DQ_TESTS_CORPUS_HPP

#include <fstream>
#include <string>
#include <vector>

#include "dq/parse.hpp"

namespace dq::testing {

struct CorpusEntry {
  ExprKind kind;
  std::string text;
};

inline std::vector<CorpusEntry> load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<CorpusEntry> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    const std::string kind = line.substr(0, tab);
    const std::string text = line.substr(tab + 1);
    if (kind == "polynomial") {
      out.push_back({ExprKind::polynomial, text});
    } else if (kind == "multivector") {
      out.push_back({ExprKind::multivector, text});
    } else if (kind == "operator") {
      out.push_back({ExprKind::operator_, text});
    } else {
      throw std::runtime_error("unknown corpus kind " + kind);
    }
  }
  return out;
}

/// parse -> print -> parse yields the same value and print is a fixed point.
/// Zero values print as "0", which carries no degree or arity, so those
/// compare by being zero.
inline bool round_trips(const CorpusEntry& e, std::string* printed = nullptr) {
  const Expression first = parse(e.text, e.kind);
  const int dim = max_index(first);
  auto check = [&](const auto& convert) {
    const auto v1 = convert(first, dim);
    const std::string s1 = print(v1);
    if (printed != nullptr) *printed = s1;
    const auto v2 = convert(parse(s1, e.kind), dim);
    const bool same = v1.is_zero() ? v2.is_zero() : v1 == v2;
    return same && print(v2) == s1;
  };
  switch (e.kind) {
    case ExprKind::polynomial:
      return check([](const Expression& x, int n) { return to_polynomial(x, n); });
    case ExprKind::multivector:
      return check([](const Expression& x, int n) { return to_polyvector(x, n); });
    case ExprKind::operator_:
      return check([](const Expression& x, int n) { return to_operator(x, n); });
  }
  return false;
}

}  // namespace dq::testing

#endif  // DQ_TESTS_CORPUS_HPP
