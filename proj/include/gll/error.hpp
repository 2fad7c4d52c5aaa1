#ifndef GLL_ERROR_HPP
#define GLL_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gll {

/// Invalid arguments or violated preconditions (bad k, u outside (0,1), ...).
class DomainError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A region that contains no points. Suprema over the empty set are undefined.
class EmptyRegionError : public DomainError {
public:
  using DomainError::DomainError;
};

/// Malformed hypothesis predicate. `position` is a 0-based character offset.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

/// Numerical failure: optimizer found no finite value, 0/0 ratios, too many
/// failed replications.
class NumericError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace gll

#endif  // GLL_ERROR_HPP
