#pragma once

#include <stdexcept>
#include <string>

namespace subspec {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Two values belong to different alphabets (or a character does not
/// match the alphabet of the letter it is applied to).
struct AlphabetMismatch : Error {
    explicit AlphabetMismatch(const std::string& msg = "alphabet mismatch")
        : Error(msg) {}
};

/// The alphabet carries no group structure (extended naturals).
struct NotAGroup : Error {
    explicit NotAGroup(const std::string& msg = "letters are not composable: no group structure")
        : Error(msg) {}
};

/// No internal fixable column could be found up to the power cap.
struct NoInternalColumn : Error {
    explicit NoInternalColumn(const std::string& msg = "no internal column available for normalization")
        : Error(msg) {}
};

/// The window iteration failed its stability check.
struct NotNested : Error {
    explicit NotNested(const std::string& msg = "window iteration is not nested")
        : Error(msg) {}
};

/// A requested coefficient lies outside the available window.
struct WindowTooSmall : Error {
    explicit WindowTooSmall(const std::string& msg = "window too small for requested index")
        : Error(msg) {}
};

/// A classification routine was invoked on a rule violating its
/// hypotheses. `criterion` names the failed requirement.
struct HypothesisViolation : Error {
    std::string criterion;
    HypothesisViolation(std::string criterion_, const std::string& msg)
        : Error(msg), criterion(std::move(criterion_)) {}
};

/// Iterative solver ran out of iterations.
struct NoConvergence : Error {
    explicit NoConvergence(const std::string& msg = "iteration did not converge")
        : Error(msg) {}
};

/// Config file parse error with source position.
struct ConfigError : Error {
    int line;
    int column;
    ConfigError(int line_, int column_, const std::string& msg)
        : Error("line " + std::to_string(line_) + ", col " + std::to_string(column_) + ": " + msg),
          line(line_), column(column_) {}
};

} // namespace subspec
