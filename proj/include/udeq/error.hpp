#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace udeq {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// poset_core

class CycleError : public Error {
 public:
  CycleError(std::string a, std::string b)
      : Error("relation cycle between '" + a + "' and '" + b + "'"),
        first(std::move(a)), second(std::move(b)) {}
  std::string first, second;
};

class UnknownElement : public Error {
 public:
  explicit UnknownElement(std::string name)
      : Error("unknown element '" + name + "'"), element(std::move(name)) {}
  std::string element;
};

class DuplicateElement : public Error {
 public:
  explicit DuplicateElement(std::string name)
      : Error("duplicate element '" + name + "'"), element(std::move(name)) {}
  std::string element;
};

class SizeLimit : public Error {
 public:
  using Error::Error;
};

// gluing

class AntichainViolation : public Error {
 public:
  AntichainViolation(std::string x_, std::string y_, std::string y2_, std::string witness_)
      : Error("Y_" + x_ + " is not an antichain in the required sense: '" + witness_ +
              "' lies in the " + "up/down sets of both '" + y_ + "' and '" + y2_ + "'"),
        x(std::move(x_)), y(std::move(y_)), y_other(std::move(y2_)),
        witness(std::move(witness_)) {}
  std::string x, y, y_other, witness;
};

class PhiMissing : public Error {
 public:
  PhiMissing(std::string x_, std::string x2_, std::string y_)
      : Error("no element of Y_" + x2_ + " lies above '" + y_ + "' (from Y_" + x_ + ")"),
        x(std::move(x_)), x_other(std::move(x2_)), y(std::move(y_)) {}
  std::string x, x_other, y;
};

class PhiNotBijective : public Error {
 public:
  PhiNotBijective(std::string x_, std::string x2_)
      : Error("induced map Y_" + x_ + " -> Y_" + x2_ + " is not a bijection"),
        x(std::move(x_)), x_other(std::move(x2_)) {}
  std::string x, x_other;
};

class CocycleViolation : public Error {
 public:
  using Error::Error;
};

class NotOrderPreserving : public Error {
 public:
  NotOrderPreserving(std::string x_, std::string x2_)
      : Error("f is not order preserving on '" + x_ + "' <= '" + x2_ + "'"),
        x(std::move(x_)), x_other(std::move(x2_)) {}
  std::string x, x_other;
};

class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

// formula_cat

class IllegalSupport : public Error {
 public:
  IllegalSupport(std::size_t row_, std::size_t col_)
      : Error("nonzero matrix entry at forbidden position (" + std::to_string(row_) + "," +
              std::to_string(col_) + ")"),
        row(row_), col(col_) {}
  std::size_t row, col;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class BaseMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidFormula : public Error {
 public:
  using Error::Error;
};

// abelian_eval

class InvalidComplex : public Error {
 public:
  using Error::Error;
};

class InvalidChainMap : public Error {
 public:
  using Error::Error;
};

class D2NotZero : public Error {
 public:
  using Error::Error;
};

class DiagramAxiomFailure : public Error {
 public:
  using Error::Error;
};

class InvalidField : public Error {
 public:
  using Error::Error;
};

// harness

class CommutativityFailure : public Error {
 public:
  using Error::Error;
};

class NaturalityFailure : public Error {
 public:
  using Error::Error;
};

class NotATree : public Error {
 public:
  using Error::Error;
};

class NoPathFound : public Error {
 public:
  using Error::Error;
};

// io

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace udeq
