#ifndef QHCALC_ERRORS_HPP
#define QHCALC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qhcalc {

// Machine-readable error codes; the CLI maps categories to exit codes
// (2 = precondition/input problem, 3 = parse error, 4 = internal bug).
enum class ErrorCategory { Parse, Precondition, Internal };

class Error : public std::runtime_error {
public:
    Error(std::string code, ErrorCategory cat, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)), cat_(cat) {}
    const std::string& code() const { return code_; }
    ErrorCategory category() const { return cat_; }

private:
    std::string code_;
    ErrorCategory cat_;
};

struct ParseError : Error {
    explicit ParseError(const std::string& w) : Error("ParseError", ErrorCategory::Parse, w) {}
};

// Input fails a documented precondition of an operation.
struct PreconditionError : Error {
    PreconditionError(const std::string& code, const std::string& w)
        : Error(code, ErrorCategory::Precondition, w) {}
};

struct NotFiniteDimensional : PreconditionError {
    explicit NotFiniteDimensional(const std::string& w) : PreconditionError("NotFiniteDimensional", w) {}
};
struct NotPositivelyGraded : PreconditionError {
    explicit NotPositivelyGraded(const std::string& w) : PreconditionError("NotPositivelyGraded", w) {}
};
struct NotDegreeOneGenerated : PreconditionError {
    explicit NotDegreeOneGenerated(const std::string& w) : PreconditionError("NotDegreeOneGenerated", w) {}
};
struct NotBasic : PreconditionError {
    explicit NotBasic(const std::string& w) : PreconditionError("NotBasic", w) {}
};
struct NotKoszul : PreconditionError {
    explicit NotKoszul(const std::string& w) : PreconditionError("NotKoszul", w) {}
};
struct FieldUnsupported : PreconditionError {
    explicit FieldUnsupported(const std::string& w) : PreconditionError("FieldUnsupported", w) {}
};
struct CapExceeded : PreconditionError {
    explicit CapExceeded(const std::string& w) : PreconditionError("CapExceeded", w) {}
};
struct OrderViolation : PreconditionError {
    explicit OrderViolation(const std::string& w) : PreconditionError("OrderViolation", w) {}
};
struct FiltrationMissing : PreconditionError {
    explicit FiltrationMissing(const std::string& w) : PreconditionError("FiltrationMissing", w) {}
};
struct PreconditionFailed : PreconditionError {
    explicit PreconditionFailed(const std::string& w) : PreconditionError("PreconditionFailed", w) {}
};
struct NotAComplex : PreconditionError {
    explicit NotAComplex(const std::string& w) : PreconditionError("NotAComplex", w) {}
};

// A violated internal invariant; always a bug, never an input problem.
struct InternalError : Error {
    explicit InternalError(const std::string& w) : Error("InternalError", ErrorCategory::Internal, w) {}
};

inline void check_internal(bool ok, const std::string& what) {
    if (!ok) throw InternalError(what);
}

} // namespace qhcalc

#endif
