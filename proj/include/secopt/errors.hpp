#pragma once

#include <stdexcept>
#include <string>

namespace secopt {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotHermitian : Error { using Error::Error; };
struct NotPositiveDefinite : Error { using Error::Error; };
struct NotPsd : Error { using Error::Error; };
struct NumericalFailure : Error { using Error::Error; };
struct ZeroVector : Error { using Error::Error; };
struct ShapeMismatch : Error { using Error::Error; };
struct NonPositiveDistance : Error { using Error::Error; };
struct RankTooHigh : Error { using Error::Error; };
struct NonUnitModulus : Error { using Error::Error; };
struct LogDomain : Error { using Error::Error; };
struct OutOfRange : Error { using Error::Error; };
struct IndexOutOfRange : Error { using Error::Error; };
struct BracketingFailure : Error { using Error::Error; };
struct BadLevelCount : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

} // namespace secopt
