#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cricrules {

enum class ErrorCode {
  // usage (exit 2)
  ParameterError,
  ConfigError,
  // data (exit 3)
  SchemaError,
  EmptyCorpus,
  RejectRateExceeded,
  LexiconError,
  UnknownOutcome,
  SessionUnavailable,
  InsufficientData,
  IoError,
  // numerical degeneracy (exit 4)
  EmptyMatrix,
  DegenerateMatrix,
  FeatureUnavailable,
  ConfigurationError,
  DegenerateConfiguration,
  DegeneratePlot,
};

std::string_view to_string(ErrorCode code);

/// Process exit status for a given error: 2 usage, 3 data, 4 numerical.
int exit_status(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class UnknownOutcomeError : public Error {
 public:
  explicit UnknownOutcomeError(std::string token)
      : Error(ErrorCode::UnknownOutcome, "unknown outcome token '" + token + "'"),
        token_(std::move(token)) {}

  const std::string& token() const noexcept { return token_; }

 private:
  std::string token_;
};

class InsufficientDataError : public Error {
 public:
  explicit InsufficientDataError(std::string half)
      : Error(ErrorCode::InsufficientData, half + " half of the holdout split is empty"),
        half_(std::move(half)) {}

  /// "train" or "test"
  const std::string& half() const noexcept { return half_; }

 private:
  std::string half_;
};

}  // namespace cricrules
