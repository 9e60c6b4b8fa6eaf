#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ontoform {

enum class ErrorCode {
  InvalidTriple,
  MalformedList,
  Parse,
  InvalidInput,
  CyclicHierarchy,
  UnknownClass,
  MalformedAxiom,
  NotAProduct,
  SessionComplete,
  StaleForm,
  ValidationFailed,
  CyclicDefinition,
  OntologyMismatch,
  CorruptSession,
};

std::string_view to_string(ErrorCode code) noexcept;

// Base of every engine error; the code is what callers branch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

enum class ParseErrorKind { Lexical, Syntax, UndefinedPrefix, BadIri, BadLiteral };

std::string_view to_string(ParseErrorKind kind) noexcept;

class ParseError : public Error {
 public:
  ParseError(ParseErrorKind kind, std::size_t line, std::size_t column,
             std::string message);

  ParseErrorKind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ParseErrorKind kind_;
  std::size_t line_;
  std::size_t column_;
  std::string detail_;
};

// Carries the offending cycle as a closed sequence, e.g. [A, B, A].
class CycleError : public Error {
 public:
  CycleError(ErrorCode code, std::vector<std::string> cycle);

  const std::vector<std::string>& cycle() const noexcept { return cycle_; }

 private:
  std::vector<std::string> cycle_;
};

struct FieldError {
  std::string field;
  std::string message;

  friend bool operator==(const FieldError&, const FieldError&) = default;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<FieldError> errors);

  const std::vector<FieldError>& errors() const noexcept { return errors_; }

 private:
  std::vector<FieldError> errors_;
};

}  // namespace ontoform
