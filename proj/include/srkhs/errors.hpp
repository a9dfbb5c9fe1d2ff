#ifndef SRKHS_ERRORS_HPP
#define SRKHS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace srkhs {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : Error { using Error::Error; };
struct IndexError : Error { using Error::Error; };
struct IndexMismatch : Error { using Error::Error; };
struct UnsupportedFamily : Error { using Error::Error; };
struct NotSummable : Error { using Error::Error; };
struct BadExponent : Error { using Error::Error; };
struct BadIndexSequence : Error { using Error::Error; };
struct InvalidSpec : Error { using Error::Error; };
struct TruncationFailure : Error { using Error::Error; };
struct MetricAssumptionUnmet : Error { using Error::Error; };
struct PrecisionExhausted : Error { using Error::Error; };
struct DuplicatePoints : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

}  // namespace srkhs

#endif
