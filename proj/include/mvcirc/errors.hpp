#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mvcirc {

  // Root of every exception thrown by the library.
  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  class UnknownOp : public Error {
   public:
    explicit UnknownOp(std::string const& name)
        : Error("unknown operation '" + name + "'"), name_(name) {}
    std::string const& name() const noexcept { return name_; }

   private:
    std::string name_;
  };

  class UnboundVariable : public Error {
   public:
    using Error::Error;
  };

  class ElementOutOfRange : public Error {
   public:
    using Error::Error;
  };

  class ArityMismatch : public Error {
   public:
    using Error::Error;
  };

  class SignatureMismatch : public Error {
   public:
    using Error::Error;
  };

  class InvalidAlgebra : public Error {
   public:
    using Error::Error;
  };

  // A cap on stored functions, congruences or work was reached; the caller
  // must treat the question as undecided.
  class CapExceeded : public Error {
   public:
    CapExceeded(std::string const& what, std::size_t reached)
        : Error(what + " (cap exceeded at " + std::to_string(reached) + ")"),
          reached_(reached) {}
    std::size_t reached() const noexcept { return reached_; }

   private:
    std::size_t reached_;
  };

  class NotACongruence : public Error {
   public:
    using Error::Error;
  };

  class LatticeMismatch : public Error {
   public:
    using Error::Error;
  };

  class SizeNot2 : public Error {
   public:
    SizeNot2() : Error("algebra must have exactly 2 elements") {}
  };

  class UntypedLattice : public Error {
   public:
    using Error::Error;
  };

  class ParseError : public Error {
   public:
    ParseError(std::string const& msg, std::size_t line, std::size_t column)
        : Error("line " + std::to_string(line) + ", column "
                + std::to_string(column) + ": " + msg),
          line_(line),
          column_(column) {}
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

   private:
    std::size_t line_;
    std::size_t column_;
  };

  class ForwardReference : public ParseError {
   public:
    using ParseError::ParseError;
  };

  class UnboundInput : public Error {
   public:
    using Error::Error;
  };

  class BudgetExceeded : public Error {
   public:
    using Error::Error;
  };

  // Base for every "the algorithm does not apply to this algebra" failure.
  class PreconditionViolation : public Error {
   public:
    using Error::Error;
  };

  class NotDlLike : public PreconditionViolation {
   public:
    using PreconditionViolation::PreconditionViolation;
  };

  class NotMalcev : public PreconditionViolation {
   public:
    using PreconditionViolation::PreconditionViolation;
  };

  class NotAffine : public PreconditionViolation {
   public:
    using PreconditionViolation::PreconditionViolation;
  };

  class NotSupernilpotent : public PreconditionViolation {
   public:
    using PreconditionViolation::PreconditionViolation;
  };

  class LinearityCheckFailed : public PreconditionViolation {
   public:
    using PreconditionViolation::PreconditionViolation;
  };

  class InvalidWitness : public PreconditionViolation {
   public:
    using PreconditionViolation::PreconditionViolation;
  };

  class UnrecognizedShape : public Error {
   public:
    using Error::Error;
  };

}  // namespace mvcirc
