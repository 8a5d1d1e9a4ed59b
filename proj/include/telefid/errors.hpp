#pragma once

#include <stdexcept>
#include <string>

namespace telefid {

// Input matrix is not Hermitian within the solver tolerance.
struct NotHermitianError : std::runtime_error {
    explicit NotHermitianError(const std::string& what) : std::runtime_error(what) {}
};

// Jacobi iteration hit the sweep cap without reaching the off-diagonal threshold.
struct NoConvergenceError : std::runtime_error {
    explicit NoConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// A component of an operator decomposition had a non-negligible imaginary part.
struct NonHermitianInputError : std::runtime_error {
    explicit NonHermitianInputError(const std::string& what) : std::runtime_error(what) {}
};

struct NotUnitaryError : std::runtime_error {
    explicit NotUnitaryError(const std::string& what) : std::runtime_error(what) {}
};

// Family parameter outside [0, 1].
struct OutOfRangeError : std::runtime_error {
    explicit OutOfRangeError(const std::string& what) : std::runtime_error(what) {}
};

// Measurement protocol failed the projector / completeness / unitarity checks.
struct InvalidProtocolError : std::runtime_error {
    explicit InvalidProtocolError(const std::string& what) : std::runtime_error(what) {}
};

// Operator failed the trace / positivity checks required of a density matrix.
struct NonStateError : std::runtime_error {
    explicit NonStateError(const std::string& what) : std::runtime_error(what) {}
};

struct BasisNotOrthonormalError : std::runtime_error {
    explicit BasisNotOrthonormalError(const std::string& what) : std::runtime_error(what) {}
};

// Bisection bracket does not straddle a sign change.
struct NoSignChangeError : std::runtime_error {
    explicit NoSignChangeError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace telefid
