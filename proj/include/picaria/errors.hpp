#pragma once

#include <stdexcept>
#include <string>

namespace picaria {

// Root of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// (k, s) outside the supported family.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Malformed wire notation.
class NotationError : public Error {
 public:
  using Error::Error;
};

// Well-formed input that violates a Position invariant (stone counts,
// turn order, both players holding a line).
class InvalidPositionError : public Error {
 public:
  using Error::Error;
};

class IllegalMoveError : public Error {
 public:
  using Error::Error;
};

// Move generation or move ranking asked of a finished game.
class TerminalPositionError : public Error {
 public:
  using Error::Error;
};

// Lookup of a position the solve table does not contain.
class UnknownPositionError : public Error {
 public:
  using Error::Error;
};

class SizeGuardError : public Error {
 public:
  using Error::Error;
};

class TableFormatError : public Error {
 public:
  enum class Kind { malformed, version, spec_mismatch, checksum, inconsistent };

  TableFormatError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

// A proof fixture that cannot be replayed (bad syntax, illegal move). This is
// an authoring error and is kept apart from a claim that fails.
class FixtureError : public Error {
 public:
  using Error::Error;
};

}  // namespace picaria
