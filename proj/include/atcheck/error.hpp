#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace atc {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed transition system, path, anchoring or tree.
class ModelError : public Error {
 public:
  using Error::Error;
};

class UnknownProposition : public Error {
 public:
  explicit UnknownProposition(const std::string& name)
      : Error("unknown proposition '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

/// An AND refinement wider than the configured marker-search cap.
class ArityCapExceeded : public Error {
 public:
  ArityCapExceeded(std::size_t arity, std::size_t cap)
      : Error("AND arity " + std::to_string(arity) + " exceeds cap " + std::to_string(cap)),
        arity_(arity),
        cap_(cap) {}
  std::size_t arity() const { return arity_; }
  std::size_t cap() const { return cap_; }

 private:
  std::size_t arity_;
  std::size_t cap_;
};

/// A bounded enumeration ran out of budget before reaching a verdict.
class SearchBudgetExhausted : public Error {
 public:
  using Error::Error;
};

/// Syntax or schema error in an input document. `location` is either
/// "line:column" for expression text or a JSON pointer for documents.
class ParseError : public Error {
 public:
  ParseError(const std::string& location, const std::string& message)
      : Error(location.empty() ? message : location + ": " + message), location_(location), message_(message) {}
  const std::string& location() const { return location_; }
  const std::string& message() const { return message_; }

 private:
  std::string location_;
  std::string message_;
};

}  // namespace atc
