#include "cricrules/error.hpp"

namespace cricrules {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParameterError: return "ParameterError";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::EmptyCorpus: return "EmptyCorpus";
    case ErrorCode::RejectRateExceeded: return "RejectRateExceeded";
    case ErrorCode::LexiconError: return "LexiconError";
    case ErrorCode::UnknownOutcome: return "UnknownOutcome";
    case ErrorCode::SessionUnavailable: return "SessionUnavailable";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::EmptyMatrix: return "EmptyMatrix";
    case ErrorCode::DegenerateMatrix: return "DegenerateMatrix";
    case ErrorCode::FeatureUnavailable: return "FeatureUnavailable";
    case ErrorCode::ConfigurationError: return "ConfigurationError";
    case ErrorCode::DegenerateConfiguration: return "DegenerateConfiguration";
    case ErrorCode::DegeneratePlot: return "DegeneratePlot";
  }
  return "Unknown";
}

int exit_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParameterError:
    case ErrorCode::ConfigError:
      return 2;
    case ErrorCode::EmptyMatrix:
    case ErrorCode::DegenerateMatrix:
    case ErrorCode::FeatureUnavailable:
    case ErrorCode::ConfigurationError:
    case ErrorCode::DegenerateConfiguration:
    case ErrorCode::DegeneratePlot:
      return 4;
    default:
      return 3;
  }
}

}  // namespace cricrules
