#pragma once

#include <stdexcept>
#include <string>

namespace mutkit {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input data: bad indices, unparsable words, schema violations.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A mathematical hypothesis failed on otherwise well-formed data.
class CheckFailure : public Error {
 public:
  using Error::Error;
};

enum class ConjugatorFailure { NoSolution, Ambiguous, Degenerate, NotFiniteOrder };

inline const char* to_string(ConjugatorFailure kind) {
  switch (kind) {
    case ConjugatorFailure::NoSolution: return "NoSolution";
    case ConjugatorFailure::Ambiguous: return "Ambiguous";
    case ConjugatorFailure::Degenerate: return "Degenerate";
    case ConjugatorFailure::NotFiniteOrder: return "NotFiniteOrder";
  }
  return "unknown";
}

class ConjugatorError : public CheckFailure {
 public:
  ConjugatorError(ConjugatorFailure kind, const std::string& what)
      : CheckFailure(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ConjugatorFailure kind() const { return kind_; }

 private:
  ConjugatorFailure kind_;
};

}  // namespace mutkit
