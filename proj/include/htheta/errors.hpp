#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace htheta {

// Broad failure categories, aligned with the CLI exit-code contract:
// input errors exit 1, hypothesis failures exit 2, conformance violations
// exit 3. Internal errors indicate an engine bug and also exit 2.
enum class ErrorCategory { input, hypothesis, conformance, internal };

class Error : public std::runtime_error {
public:
    Error(ErrorCategory cat, std::string msg)
        : std::runtime_error(std::move(msg)), cat_(cat) {}
    ErrorCategory category() const noexcept { return cat_; }

private:
    ErrorCategory cat_;
};

struct SyntaxError : Error {
    SyntaxError(std::size_t pos, const std::string& msg)
        : Error(ErrorCategory::input,
                "syntax error at position " + std::to_string(pos) + ": " + msg),
          position(pos) {}
    std::size_t position;
};

struct UnknownVariable : Error {
    UnknownVariable(std::size_t pos, const std::string& name)
        : Error(ErrorCategory::input,
                "unknown variable '" + name + "' at position " + std::to_string(pos)),
          position(pos), name(name) {}
    std::size_t position;
    std::string name;
};

struct NegativeExponent : Error {
    explicit NegativeExponent(std::size_t pos)
        : Error(ErrorCategory::input,
                "negative exponent at position " + std::to_string(pos)),
          position(pos) {}
    std::size_t position;
};

struct RingMismatch : Error {
    explicit RingMismatch(const std::string& ctx)
        : Error(ErrorCategory::input, "ring mismatch: " + ctx) {}
};

struct RankMismatch : Error {
    explicit RankMismatch(const std::string& ctx)
        : Error(ErrorCategory::input, "rank mismatch: " + ctx) {}
};

struct InvalidParameter : Error {
    explicit InvalidParameter(const std::string& ctx)
        : Error(ErrorCategory::input, "invalid parameter: " + ctx) {}
};

struct VariableClash : Error {
    explicit VariableClash(const std::string& name)
        : Error(ErrorCategory::input, "variable name already in use: " + name) {}
};

struct NotAFactorization : Error {
    NotAFactorization(std::size_t row, std::size_t col, const std::string& detail)
        : Error(ErrorCategory::input,
                "not a matrix factorization: product entry (" + std::to_string(row) +
                    "," + std::to_string(col) + ") " + detail),
          row(row), col(col) {}
    std::size_t row, col;
};

// Elimination would need to divide by a non-constant local unit such as 1+x.
struct NonConstantUnit : Error {
    NonConstantUnit(std::size_t row, std::size_t col)
        : Error(ErrorCategory::input,
                "entry (" + std::to_string(row) + "," + std::to_string(col) +
                    ") has a nonzero constant term but is not constant; "
                    "exact elimination is impossible. Use a quasi-homogeneous model."),
          row(row), col(col) {}
    std::size_t row, col;
};

struct NoStabilization : Error {
    explicit NoStabilization(int max_steps)
        : Error(ErrorCategory::hypothesis,
                "no two-periodic stabilization found within " +
                    std::to_string(max_steps) +
                    " resolution steps; raise --max-steps or use --assume-stable-at"),
          max_steps(max_steps) {}
    int max_steps;
};

struct NotFiniteLength : Error {
    explicit NotFiniteLength(const std::string& ctx)
        : Error(ErrorCategory::hypothesis,
                "stable Tor module is not of finite length supported at the origin: " + ctx) {}
};

struct PeriodicityCheckFailed : Error {
    explicit PeriodicityCheckFailed(const std::string& ctx)
        : Error(ErrorCategory::hypothesis, "periodicity check failed: " + ctx) {}
};

struct CompositeNonzero : Error {
    explicit CompositeNonzero(const std::string& ctx)
        : Error(ErrorCategory::input, "composite of maps is not zero: " + ctx) {}
};

struct IllDefinedMap : Error {
    explicit IllDefinedMap(const std::string& ctx)
        : Error(ErrorCategory::input, "map does not respect relations: " + ctx) {}
};

struct ConformanceViolation : Error {
    explicit ConformanceViolation(const std::string& ctx)
        : Error(ErrorCategory::conformance, "vanishing conformance violated: " + ctx) {}
};

struct IdentityFailed : Error {
    explicit IdentityFailed(const std::string& ctx)
        : Error(ErrorCategory::internal, "matrix identity failed: " + ctx) {}
};

struct ExactnessFailed : Error {
    ExactnessFailed(int spot, const std::string& ctx)
        : Error(ErrorCategory::internal,
                "exactness failed at spot " + std::to_string(spot) + ": " + ctx),
          spot(spot) {}
    int spot;
};

struct InternalError : Error {
    explicit InternalError(const std::string& ctx)
        : Error(ErrorCategory::internal, "internal error: " + ctx) {}
};

}  // namespace htheta
