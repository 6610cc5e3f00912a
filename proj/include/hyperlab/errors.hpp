#pragma once

#include <stdexcept>
#include <string>

namespace hyperlab {

// Base error. ConfigError maps to CLI exit code 2 (bad parameters/inputs),
// MathError to exit code 3 (mathematical precondition violated at runtime).
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

struct MathError : Error {
    explicit MathError(const std::string& msg) : Error(msg) {}
};

struct AllZeroInput : ConfigError {
    explicit AllZeroInput(const std::string& msg = "all basis vectors are zero")
        : ConfigError(msg) {}
};

struct DimensionMismatch : ConfigError {
    explicit DimensionMismatch(const std::string& msg = "dimension mismatch")
        : ConfigError(msg) {}
};

struct NotSquarefree : ConfigError {
    explicit NotSquarefree(const std::string& msg = "radicand is not squarefree")
        : ConfigError(msg) {}
};

struct Duplicate : ConfigError {
    explicit Duplicate(const std::string& msg = "duplicate radicand")
        : ConfigError(msg) {}
};

struct IncompatibleGrids : ConfigError {
    explicit IncompatibleGrids(const std::string& msg = "grids differ in window or cell size")
        : ConfigError(msg) {}
};

struct NotCoprime : ConfigError {
    explicit NotCoprime(const std::string& msg = "scaling factors must be coprime")
        : ConfigError(msg) {}
};

struct RationalTheta : ConfigError {
    explicit RationalTheta(const std::string& msg = "rotation angle must be certified irrational")
        : ConfigError(msg) {}
};

struct UnknownId : ConfigError {
    explicit UnknownId(const std::string& msg = "unknown reproduction id")
        : ConfigError(msg) {}
};

struct NotCommuting : MathError {
    explicit NotCommuting(const std::string& msg = "matrices do not commute")
        : MathError(msg) {}
};

struct NumericalBreakdown : MathError {
    explicit NumericalBreakdown(const std::string& msg = "numerical breakdown")
        : MathError(msg) {}
};

struct Overflow : MathError {
    explicit Overflow(const std::string& msg = "orbit magnitude overflow")
        : MathError(msg) {}
};

struct NoNontrivialCanonical : MathError {
    explicit NoNontrivialCanonical(const std::string& msg =
        "no nontrivial canonical invariant subspace in this configuration")
        : MathError(msg) {}
};

}  // namespace hyperlab
