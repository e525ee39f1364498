#pragma once

#include <stdexcept>
#include <string>

namespace adicscope {

/// Malformed input: unparsable spec files, bad CLI values. CLI exit code 2.
struct InputError : std::runtime_error {
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// Well-formed input, but the requested analysis is not applicable
/// (precondition violated, rejected candidate, scale guard). CLI exit code 1.
struct AnalysisError : std::runtime_error {
  explicit AnalysisError(const std::string& what) : std::runtime_error(what) {}
};

/// Explicit word expansion or block budget exceeded.
struct ExpansionError : AnalysisError {
  explicit ExpansionError(const std::string& what) : AnalysisError(what) {}
};

/// Operation defined only for Toeplitz-type diagrams (constant in-degree)
/// was invoked on a generalized one.
struct NotToeplitzError : AnalysisError {
  explicit NotToeplitzError(const std::string& what) : AnalysisError(what) {}
};

}  // namespace adicscope
