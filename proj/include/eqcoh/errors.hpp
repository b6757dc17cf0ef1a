#pragma once

#include <stdexcept>
#include <string>

namespace eqcoh {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operation requires a torus rank it does not support (SNF, Ext, classification).
class UnsupportedRank : public Error {
 public:
  using Error::Error;
};

/// Operation is undefined for this kind of model (e.g. integration on a non-compact model).
class Unsupported : public Error {
 public:
  using Error::Error;
};

/// Dimension mismatch, missing functional entry, element/model mismatch.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// A product of two generators was needed but the model's product table lacks it.
class MissingProduct : public Error {
 public:
  MissingProduct(std::string first, std::string second)
      : Error("missing product " + first + " * " + second),
        first_(std::move(first)),
        second_(std::move(second)) {}
  const std::string& first() const { return first_; }
  const std::string& second() const { return second_; }

 private:
  std::string first_, second_;
};

/// Equivariant extension of a cocycle is obstructed at some form degree.
class ObstructionError : public Error {
 public:
  ObstructionError(int form_degree, const std::string& what)
      : Error(what), form_degree_(form_degree) {}
  int form_degree() const { return form_degree_; }

 private:
  int form_degree_;
};

/// A result that mathematics says cannot occur; signals a model or library bug.
class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

/// Fixed-point data missing a restriction, bad weights, etc.
class DataError : public Error {
 public:
  using Error::Error;
};

class NonIsolatedFixedPoint : public Error {
 public:
  using Error::Error;
};

/// Text could not be parsed; carries a line number when known (0 otherwise).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line = 0) : Error(what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class VersionError : public Error {
 public:
  using Error::Error;
};

}  // namespace eqcoh
