#pragma once

#include <stdexcept>
#include <string>

namespace sng {

/// Network invariant violations, reported in a fixed order so that the first
/// failure of a bad description is deterministic.
enum class ValidationCode {
  DuplicateNode,
  UnknownNode,
  SelfLoopEdge,
  DuplicateEdge,
  WeightOutOfRange,
  InWeightSumExceedsOne,
  EmptyProductSet,
  UnknownProduct,
  DuplicateProduct,
  MissingThreshold,
  ThresholdOutOfRange,
  ExtraneousThreshold,
  NonPositiveC0,
  NumberFormat,
};

inline const char* to_string(ValidationCode code) {
  switch (code) {
    case ValidationCode::DuplicateNode: return "DuplicateNode";
    case ValidationCode::UnknownNode: return "UnknownNode";
    case ValidationCode::SelfLoopEdge: return "SelfLoopEdge";
    case ValidationCode::DuplicateEdge: return "DuplicateEdge";
    case ValidationCode::WeightOutOfRange: return "WeightOutOfRange";
    case ValidationCode::InWeightSumExceedsOne: return "InWeightSumExceedsOne";
    case ValidationCode::EmptyProductSet: return "EmptyProductSet";
    case ValidationCode::UnknownProduct: return "UnknownProduct";
    case ValidationCode::DuplicateProduct: return "DuplicateProduct";
    case ValidationCode::MissingThreshold: return "MissingThreshold";
    case ValidationCode::ThresholdOutOfRange: return "ThresholdOutOfRange";
    case ValidationCode::ExtraneousThreshold: return "ExtraneousThreshold";
    case ValidationCode::NonPositiveC0: return "NonPositiveC0";
    case ValidationCode::NumberFormat: return "NumberFormat";
  }
  return "Unknown";
}

class ValidationError : public std::runtime_error {
 public:
  ValidationError(ValidationCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ValidationCode code() const { return code_; }

 private:
  ValidationCode code_;
};

/// Malformed document text (bad JSON, missing fields). Line/column are 0
/// when the position is not known.
class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(int line, int column, const std::string& message)
      : std::runtime_error("syntax error at " + std::to_string(line) + ":" +
                           std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// A configured enumeration cap was hit (state space, subset enumeration).
/// Raised explicitly rather than truncating results.
class CapExceeded : public std::runtime_error {
 public:
  explicit CapExceeded(const std::string& message) : std::runtime_error(message) {}
};

/// An operation was called outside its contract (illegal modification,
/// profile not an equilibrium, wrong product count, ...).
class PreconditionError : public std::runtime_error {
 public:
  explicit PreconditionError(const std::string& message) : std::runtime_error(message) {}
};

}  // namespace sng
