#pragma once

#include <stdexcept>
#include <string>

namespace weblin {

enum class ErrorKind {
  SyntaxError,
  UnknownIdentifier,
  SingularEvaluation,
  UnboundSymbol,
  DegenerateWeb,
  ParallelizableBranch,
  DegenerateMinor,
  EliminationFailure,
  NoRegularSamples,
  InputError,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string msg)
      : std::runtime_error(std::move(msg)), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

/// Syntax errors carry the byte offset into the input text.
class SyntaxError : public Error {
 public:
  SyntaxError(std::string msg, std::size_t offset)
      : Error(ErrorKind::SyntaxError,
              msg + " at offset " + std::to_string(offset)),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Division by zero or log of a non-positive value during evaluation;
/// carries the printed offending subterm.
class SingularEvaluation : public Error {
 public:
  explicit SingularEvaluation(std::string subterm)
      : Error(ErrorKind::SingularEvaluation,
              "singular evaluation at " + subterm),
        subterm_(std::move(subterm)) {}
  const std::string& subterm() const { return subterm_; }

 private:
  std::string subterm_;
};

}  // namespace weblin
