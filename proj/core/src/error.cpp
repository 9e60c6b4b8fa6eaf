#include "ontoform/error.hpp"

namespace ontoform {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidTriple: return "InvalidTriple";
    case ErrorCode::MalformedList: return "MalformedList";
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::CyclicHierarchy: return "CyclicHierarchy";
    case ErrorCode::UnknownClass: return "UnknownClass";
    case ErrorCode::MalformedAxiom: return "MalformedAxiom";
    case ErrorCode::NotAProduct: return "NotAProduct";
    case ErrorCode::SessionComplete: return "SessionComplete";
    case ErrorCode::StaleForm: return "StaleForm";
    case ErrorCode::ValidationFailed: return "ValidationFailed";
    case ErrorCode::CyclicDefinition: return "CyclicDefinition";
    case ErrorCode::OntologyMismatch: return "OntologyMismatch";
    case ErrorCode::CorruptSession: return "CorruptSession";
  }
  return "Unknown";
}

std::string_view to_string(ParseErrorKind kind) noexcept {
  switch (kind) {
    case ParseErrorKind::Lexical: return "Lexical";
    case ParseErrorKind::Syntax: return "Syntax";
    case ParseErrorKind::UndefinedPrefix: return "UndefinedPrefix";
    case ParseErrorKind::BadIri: return "BadIri";
    case ParseErrorKind::BadLiteral: return "BadLiteral";
  }
  return "Unknown";
}

ParseError::ParseError(ParseErrorKind kind, std::size_t line, std::size_t column,
                       std::string message)
    : Error(ErrorCode::Parse, std::to_string(line) + ":" + std::to_string(column) +
                                  ": " + std::string(to_string(kind)) + ": " + message),
      kind_(kind),
      line_(line),
      column_(column),
      detail_(std::move(message)) {}

namespace {

std::string describe_cycle(ErrorCode code, const std::vector<std::string>& cycle) {
  std::string out(code == ErrorCode::CyclicHierarchy ? "cyclic hierarchy: "
                                                     : "cyclic definition: ");
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    if (i) out += " -> ";
    out += cycle[i];
  }
  return out;
}

std::string describe_fields(const std::vector<FieldError>& errors) {
  std::string out = "validation failed";
  for (const auto& e : errors) {
    out += "; ";
    out += e.field;
    out += ": ";
    out += e.message;
  }
  return out;
}

}  // namespace

CycleError::CycleError(ErrorCode code, std::vector<std::string> cycle)
    : Error(code, describe_cycle(code, cycle)), cycle_(std::move(cycle)) {}

ValidationError::ValidationError(std::vector<FieldError> errors)
    : Error(ErrorCode::ValidationFailed, describe_fields(errors)),
      errors_(std::move(errors)) {}

}  // namespace ontoform
