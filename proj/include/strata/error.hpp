// Copyright 2026 The Strata Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace strata {

/// Diagnostic category attached to every strata exception. The CLI maps
/// categories to exit codes; tests match on them.
enum class ErrorCategory {
    Config,    ///< malformed configuration or invalid parameters
    Data,      ///< bad input files (corpus, fixtures, gold data)
    Matrix,    ///< missing (document, thought) score entry
    Contract,  ///< operation called outside its precondition
    Provider,  ///< provider failure (transport, missing fixture entry)
    Parse,     ///< unparseable provider response
    Internal,  ///< invariant violation inside the engine
};

const char* to_string(ErrorCategory category);

class Error : public std::runtime_error {
public:
    Error(ErrorCategory category, const std::string& message)
        : std::runtime_error(std::string(to_string(category)) + ": " + message),
          category_(category) {}

    ErrorCategory category() const { return category_; }

private:
    ErrorCategory category_;
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& m) : Error(ErrorCategory::Config, m) {}
};
struct DataError : Error {
    explicit DataError(const std::string& m) : Error(ErrorCategory::Data, m) {}
};
struct IncompleteMatrixError : Error {
    explicit IncompleteMatrixError(const std::string& m) : Error(ErrorCategory::Matrix, m) {}
};
struct ContractError : Error {
    explicit ContractError(const std::string& m) : Error(ErrorCategory::Contract, m) {}
};
struct ProviderError : Error {
    explicit ProviderError(const std::string& m) : Error(ErrorCategory::Provider, m) {}
};
struct ParseError : Error {
    explicit ParseError(const std::string& m) : Error(ErrorCategory::Parse, m) {}
};
struct InternalError : Error {
    explicit InternalError(const std::string& m) : Error(ErrorCategory::Internal, m) {}
};

}  // namespace strata
