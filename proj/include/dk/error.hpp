#pragma once

#include <stdexcept>
#include <string>

namespace dk {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A cochain complex (or double complex) failed d∘d = 0 or a square check.
class ComplexError : public Error {
 public:
  ComplexError(const std::string& what, int degree) : Error(what), degree_(degree) {}
  int degree() const { return degree_; }

 private:
  int degree_;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Scenario or JSON payload does not match the schema. `pointer` is a JSON pointer.
class SchemaError : public Error {
 public:
  SchemaError(const std::string& pointer, const std::string& what)
      : Error(pointer + ": " + what), pointer_(pointer) {}
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

/// Truncation window too small for a transition or differential.
class WindowOverflow : public Error {
 public:
  WindowOverflow(const std::string& what, int suggested) : Error(what), suggested_(suggested) {}
  int suggested_window() const { return suggested_; }

 private:
  int suggested_;
};

class StabilizationError : public Error {
 public:
  StabilizationError(const std::string& what, int suggested) : Error(what), suggested_(suggested) {}
  int suggested_window() const { return suggested_; }

 private:
  int suggested_;
};

class VerificationError : public Error {
 public:
  using Error::Error;
};

}  // namespace dk
