#pragma once

#include <stdexcept>
#include <string>

namespace hs {

// Exit-code contract used by the CLI:
//   1 = input validation failure
//   2 = solver failure (non-convergence, degeneracy, inconclusive comparison)
//   3 = invariant violation (a proved theorem failed numerically -- always a bug)

class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
    static constexpr int exit_code = 1;
};

class SolverError : public std::runtime_error {
public:
    enum class Kind { DegenerateSpectrum, NonConvergence, Inconclusive, Internal };
    SolverError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }
    static constexpr int exit_code = 2;
private:
    Kind kind_;
};

class InvariantViolation : public std::runtime_error {
public:
    explicit InvariantViolation(const std::string& what) : std::runtime_error(what) {}
    static constexpr int exit_code = 3;
};

// Equal-rho equilateral zeros must land on the incenter-to-vertex rays; anything
// else falsifies the claimed structure and is reported loudly via this type.
class ClassificationFailure : public std::runtime_error {
public:
    explicit ClassificationFailure(const std::string& what) : std::runtime_error(what) {}
    static constexpr int exit_code = 3;
};

} // namespace hs
