#pragma once

#include <stdexcept>
#include <string>

namespace envlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error { using Error::Error; };
class DomainError : public Error { using Error::Error; };
class NotStrictlyConvexError : public Error { using Error::Error; };
class ZeroSubspaceError : public Error { using Error::Error; };
class FullSupportError : public Error { using Error::Error; };
class NotIsometryError : public Error { using Error::Error; };
class TooLargeError : public Error { using Error::Error; };
class HilbertCaseError : public Error { using Error::Error; };
class NotExtendableError : public Error { using Error::Error; };
class NotAGroupError : public Error { using Error::Error; };
class NotContractionError : public Error { using Error::Error; };
class NotProjectionError : public Error { using Error::Error; };
class DegenerateRangeError : public Error { using Error::Error; };
class ParseError : public Error { using Error::Error; };
class UsageError : public Error { using Error::Error; };

// ConvergenceError is declared in ergodic.hpp because it carries a partial report.

}  // namespace envlab
