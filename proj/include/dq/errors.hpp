#ifndef DQ_ERRORS_HPP
#define DQ_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dq {

/// Caller broke a precondition: mismatched dimensions, truncation orders,
/// arities or an out-of-range index.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The input is well formed but the operation is undefined on it
/// (non-invertible series, wrong multivector degree, unsupported shape).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Syntax error in the expression language; `position` is a 0-based
/// character offset into the input.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace dq

#endif  // DQ_ERRORS_HPP
