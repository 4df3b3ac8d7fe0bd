#pragma once

#include "guesscost/numeric.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>

namespace guesscost {

enum class ErrorKind {
  Domain,
  NotCovered,
  EmptyDistribution,
  DuplicateInInput,
  CapExceeded,
  UndecidableOverlap,
  LayerIndexAmbiguous,
  InvalidAlphabet,
  MalformedLine,
  InvalidUtf8,
  NegativeOrNonNumericCount,
  Syntax,
  UnknownAlphabet,
  UnknownSource,
  UnknownRule,
  MissingRequiredKey,
  ZeroTotalWeight,
  NonPositiveWeight,
  Io,
};

inline const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain: return "DomainError";
    case ErrorKind::NotCovered: return "NotCovered";
    case ErrorKind::EmptyDistribution: return "EmptyDistribution";
    case ErrorKind::DuplicateInInput: return "DuplicateInInput";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::UndecidableOverlap: return "UndecidableOverlap";
    case ErrorKind::LayerIndexAmbiguous: return "LayerIndexAmbiguous";
    case ErrorKind::InvalidAlphabet: return "InvalidAlphabet";
    case ErrorKind::MalformedLine: return "MalformedLine";
    case ErrorKind::InvalidUtf8: return "InvalidUtf8";
    case ErrorKind::NegativeOrNonNumericCount: return "NegativeOrNonNumericCount";
    case ErrorKind::Syntax: return "SyntaxError";
    case ErrorKind::UnknownAlphabet: return "UnknownAlphabet";
    case ErrorKind::UnknownSource: return "UnknownSource";
    case ErrorKind::UnknownRule: return "UnknownRule";
    case ErrorKind::MissingRequiredKey: return "MissingRequiredKey";
    case ErrorKind::ZeroTotalWeight: return "ZeroTotalWeight";
    case ErrorKind::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorKind::Io: return "IoError";
  }
  return "Error";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// The password lies outside every layer. Carries the dictionary size so
/// callers can report "stronger than all `total` candidates".
class NotCoveredError : public Error {
 public:
  explicit NotCoveredError(Natural total)
      : Error(ErrorKind::NotCovered, "password is not covered by the strategy (total=" + total.str() + ")"),
        total_(std::move(total)) {}

  const Natural& total() const noexcept { return total_; }

 private:
  Natural total_;
};

/// Parse failures that can point at a location in the input.
class ParseError : public Error {
 public:
  ParseError(ErrorKind kind, std::size_t line, std::size_t column, const std::string& message)
      : Error(kind, "line " + std::to_string(line) + (column ? ", column " + std::to_string(column) : "") + ": " +
                        message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace guesscost
