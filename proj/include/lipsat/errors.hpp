#ifndef LIPSAT_ERRORS_HPP
#define LIPSAT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lipsat {

// Engine errors carry a stable code so the CLI can map them to exit codes
// and JSON reports without string matching.
enum class ErrorCode {
    DivisionByZero,
    UnknownVariable,
    IllegalComposition,
    TruncationInsufficient,
    UnsupportedExtension,
    NoSingularPoint,
    NotFiniteColength,
    NotNested,
    EmptyIdeal,
    NonIsolatedFiber,
    NotAFamilyOverY,
    NotOnVariety,
    DegenerateInput,
    DegenerateCurve,
    NonIsolatedSection,
    ParseError,
    InternalError,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}
    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

} // namespace lipsat

#endif
