#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cartan {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by an expression that normalizes to zero") {}
};

class UnknownName : public Error {
 public:
  explicit UnknownName(const std::string& name)
      : Error("unknown name '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class ChartMismatch : public Error {
 public:
  ChartMismatch() : Error("operands live on different charts") {}
};

class ArgumentEscape : public Error {
 public:
  explicit ArgumentEscape(const std::string& what) : Error(what) {}
};

class DegreeOverflow : public Error {
 public:
  DegreeOverflow() : Error("form degree exceeds chart dimension") {}
};

class SingularCoframe : public Error {
 public:
  SingularCoframe() : Error("coframe matrix is singular") {}
};

class NotLinear : public Error {
 public:
  NotLinear() : Error("Pfaffian system is not linear (pi^pi terms survive)") {}
};

class NonEmptyEssentialTorsion : public Error {
 public:
  NonEmptyEssentialTorsion()
      : Error("cannot prolong: essential torsion does not vanish") {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

class VanishingJacobian : public Error {
 public:
  explicit VanishingJacobian(const std::string& what) : Error(what) {}
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

}  // namespace cartan
