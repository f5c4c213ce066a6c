#ifndef ARRTOWER_ERROR_HPP
#define ARRTOWER_ERROR_HPP

#include <stdexcept>
#include <string>

namespace arrtower {

/// Caller passed arguments that violate an operation's preconditions.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A request exceeded a configured size guard.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& what, int bound)
      : std::runtime_error(what), bound_(bound) {}
  int bound() const noexcept { return bound_; }

 private:
  int bound_;
};

/// An internal consistency check failed: two computation routes disagree,
/// a cube is not functorial, a certificate did not verify.
class IntegrityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Raised by the join formula when a base group carries torsion.
class TorsionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace arrtower

#endif  // ARRTOWER_ERROR_HPP
