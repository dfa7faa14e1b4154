#pragma once

#include <stdexcept>
#include <string>

namespace gvar {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// CSV ingestion
struct MissingColumn : Error { using Error::Error; };
struct UnparseableDate : Error { using Error::Error; };
struct NonPositivePrice : Error { using Error::Error; };
struct EmptySeries : Error { using Error::Error; };
struct DuplicateDate : Error { using Error::Error; };
struct MalformedRow : Error { using Error::Error; };

// Series / window preconditions
struct SeriesTooShort : Error { using Error::Error; };
struct WindowLengthMismatch : Error { using Error::Error; };
struct InvalidBlockConfig : Error { using Error::Error; };

// Numerics
struct DomainError : Error { using Error::Error; };

// Adaptive loop / evaluation
struct EmptyHistory : Error { using Error::Error; };
struct IndexSpaceMismatch : Error { using Error::Error; };
struct DegenerateInput : Error { using Error::Error; };

// Synthetic experiments
struct InvalidModel : Error { using Error::Error; };
struct InvalidWindows : Error { using Error::Error; };

// CLI / configuration
struct ConfigError : Error { using Error::Error; };

} // namespace gvar
