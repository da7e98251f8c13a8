#pragma once

#include <stdexcept>
#include <string>

namespace nullpart {

/// Two operands were built over different ambient sizes n.
class AmbientMismatch : public std::invalid_argument {
 public:
  explicit AmbientMismatch(const std::string& what) : std::invalid_argument(what) {}
};

/// A size parameter (n, matrix dimension) exceeds the configured limit or is below 1.
class LimitExceeded : public std::out_of_range {
 public:
  explicit LimitExceeded(const std::string& what) : std::out_of_range(what) {}
};

class SingularMatrix : public std::domain_error {
 public:
  explicit SingularMatrix(const std::string& what) : std::domain_error(what) {}
};

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when a derived quantity contradicts the equations it must satisfy.
/// Always indicates a bug, never a property of the input.
class ConsistencyError : public std::logic_error {
 public:
  explicit ConsistencyError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace nullpart
