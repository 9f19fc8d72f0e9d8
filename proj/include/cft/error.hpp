#pragma once

#include <stdexcept>
#include <string>

namespace cft {

/// Argument outside the mathematical domain of an operation.
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A root or value exists only over a larger constant field; `degree` is the extension needed.
class extension_degree_error : public domain_error {
 public:
  extension_degree_error(const std::string& what, unsigned degree)
      : domain_error(what), degree(degree) {}
  unsigned degree;
};

/// A documented precondition does not hold (support overlaps, ramified places, ...).
class precondition_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Requested object exceeds the desk-scale size limits.
class size_error : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Malformed text in one of the textual grammars.
class parse_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cft
