#pragma once

#include <stdexcept>
#include <string>

namespace qtrace {

// Shapes or dimension lists that do not fit together.
class DimensionError : public std::invalid_argument {
public:
  explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

// An input violates a numerical precondition (Hermiticity, unitarity, ...).
class PreconditionError : public std::domain_error {
public:
  explicit PreconditionError(const std::string& what) : std::domain_error(what) {}
};

class NotHermitianError : public PreconditionError {
public:
  explicit NotHermitianError(const std::string& what) : PreconditionError(what) {}
};

// Malformed QMAT input.
class ParseError : public std::runtime_error {
public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qtrace
