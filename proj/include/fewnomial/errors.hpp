#pragma once

#include <stdexcept>
#include <string>

namespace fewnomial {

// Base of every error raised by the library. Subclasses name the failed
// precondition so callers (and the CLI) can map them to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidSpectrum : public Error {
 public:
  using Error::Error;
};

class ZeroNullspace : public Error {
 public:
  using Error::Error;
};

class UnsupportedDimension : public Error {
 public:
  using Error::Error;
};

class WrongColumnCount : public Error {
 public:
  using Error::Error;
};

class HyperplaneHit : public Error {
 public:
  using Error::Error;
};

class DegenerateBox : public Error {
 public:
  using Error::Error;
};

class ZeroCoefficient : public Error {
 public:
  using Error::Error;
};

class OutsideBox : public Error {
 public:
  using Error::Error;
};

class DefectiveSpectrum : public Error {
 public:
  using Error::Error;
};

class UnsupportedJ : public Error {
 public:
  using Error::Error;
};

class NotStabilized : public Error {
 public:
  using Error::Error;
};

class InconsistentChamber : public Error {
 public:
  using Error::Error;
};

class DegeneratePath : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Missing or unreadable file.
class FileError : public Error {
 public:
  using Error::Error;
};

// Input file problems; carries the 1-based line and column of the first
// offending token (column 0 when the whole line is at fault).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(what), line_(line), column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace fewnomial
