#pragma once

#include <stdexcept>
#include <string>

namespace legweb {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An operation received arguments outside its domain (zero resultant inputs,
// zero rational function valuation, ...).
class UndefinedInputError : public Error {
 public:
  using Error::Error;
};

// Structurally invalid objects: non-coprime foliation data, non-reduced webs,
// coincident slopes, proportional forms.
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

// A declared curve line is not invariant by the foliation.
class InvarianceError : public Error {
 public:
  using Error::Error;
};

class DiscriminantProximityError : public Error {
 public:
  using Error::Error;
};

class PrecisionError : public Error {
 public:
  using Error::Error;
};

class SamplingError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace legweb
