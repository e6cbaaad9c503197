#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace effgame {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DuplicateOperation : public Error {
 public:
  explicit DuplicateOperation(std::string op)
      : Error("duplicate operation '" + op + "'"), op_(std::move(op)) {}
  const std::string& op() const noexcept { return op_; }

 private:
  std::string op_;
};

class DuplicateOutcome : public Error {
 public:
  DuplicateOutcome(std::string op, std::string label)
      : Error("duplicate outcome '" + label + "' in arity of '" + op + "'"),
        op_(std::move(op)),
        label_(std::move(label)) {}
  const std::string& op() const noexcept { return op_; }
  const std::string& label() const noexcept { return label_; }

 private:
  std::string op_;
  std::string label_;
};

class UnknownOperation : public Error {
 public:
  explicit UnknownOperation(std::string op)
      : Error("unknown operation '" + op + "'"), op_(std::move(op)) {}
  const std::string& op() const noexcept { return op_; }

 private:
  std::string op_;
};

class UnknownOutcome : public Error {
 public:
  UnknownOutcome(std::string op, std::string label)
      : Error("'" + label + "' is not an outcome of '" + op + "'"),
        op_(std::move(op)),
        label_(std::move(label)) {}
  const std::string& op() const noexcept { return op_; }
  const std::string& label() const noexcept { return label_; }

 private:
  std::string op_;
  std::string label_;
};

class ArityMismatch : public Error {
 public:
  ArityMismatch(std::string op, std::size_t expected, std::size_t got)
      : Error("operation '" + op + "' expects " + std::to_string(expected) +
              " children, got " + std::to_string(got)),
        op_(std::move(op)),
        expected_(expected),
        got_(got) {}
  const std::string& op() const noexcept { return op_; }
  std::size_t expected() const noexcept { return expected_; }
  std::size_t got() const noexcept { return got_; }

 private:
  std::string op_;
  std::size_t expected_;
  std::size_t got_;
};

class MissingClause : public Error {
 public:
  explicit MissingClause(std::string op)
      : Error("handler has no clause for operation '" + op + "'"),
        op_(std::move(op)) {}
  const std::string& op() const noexcept { return op_; }

 private:
  std::string op_;
};

/// Raised by join when two partial terms disagree on a defined position.
/// The path lists child indices from the root ("/" is the root itself).
class Incompatible : public Error {
 public:
  explicit Incompatible(std::string path)
      : Error("incompatible partial terms at " + path), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// Two coplays that a costrategy would have to contain are not coherent.
/// Both coplays are carried in the strategy dump notation.
class IncoherentPair : public Error {
 public:
  IncoherentPair(std::string first, std::string second)
      : Error("incoherent coplays [" + first + "] and [" + second + "]"),
        first_(std::move(first)),
        second_(std::move(second)) {}
  const std::string& first() const noexcept { return first_; }
  const std::string& second() const noexcept { return second_; }

 private:
  std::string first_;
  std::string second_;
};

class UnknownState : public Error {
 public:
  explicit UnknownState(std::string state)
      : Error("unknown state '" + state + "'"), state_(std::move(state)) {}
  const std::string& state() const noexcept { return state_; }

 private:
  std::string state_;
};

class UnknownSort : public Error {
 public:
  explicit UnknownSort(std::string sort)
      : Error("unknown sort '" + sort + "'"), sort_(std::move(sort)) {}
  const std::string& sort() const noexcept { return sort_; }

 private:
  std::string sort_;
};

/// Malformed multi-sorted signature or ill-sorted typed object.
class SortError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class UnknownName : public Error {
 public:
  explicit UnknownName(std::string name)
      : Error("nothing named '" + name + "' is loaded"), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

}  // namespace effgame
