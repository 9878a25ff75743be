#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace specphi {

// Error hierarchy. Every precondition failure named in the operation
// contracts maps to one of these.
struct SpecphiError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotIrreducible : SpecphiError {
    NotIrreducible() : SpecphiError("matrix is not irreducible") {}
    explicit NotIrreducible(const std::string& m) : SpecphiError(m) {}
};
struct NoConvergence : SpecphiError {
    explicit NoConvergence(const std::string& m) : SpecphiError(m) {}
};
struct TooLarge : SpecphiError {
    explicit TooLarge(const std::string& m) : SpecphiError(m) {}
};
struct EmptyCut : SpecphiError {
    EmptyCut() : SpecphiError("cut is empty") {}
};
struct FullCut : SpecphiError {
    FullCut() : SpecphiError("cut is the full vertex set") {}
};
struct DegenerateGap : SpecphiError {
    DegenerateGap() : SpecphiError("Re lambda_2 = 1 within tolerance") {}
};
struct DegenerateSigma : SpecphiError {
    DegenerateSigma() : SpecphiError("sigma_2 >= 1 within tolerance") {}
};
struct NotReversible : SpecphiError {
    NotReversible() : SpecphiError("matrix is not reversible") {}
};
struct NotPerfectSquare : SpecphiError {
    NotPerfectSquare() : SpecphiError("n is not a perfect square >= 4") {}
};
struct NotPrime : SpecphiError {
    NotPrime() : SpecphiError("p is not an odd prime") {}
};
struct PrecisionExhausted : SpecphiError {
    explicit PrecisionExhausted(const std::string& m) : SpecphiError(m) {}
};
struct SingularBlock : SpecphiError {
    SingularBlock() : SpecphiError("eliminated block is singular") {}
};
struct SingularClump : SpecphiError {
    SingularClump() : SpecphiError("clumped matrix is singular") {}
};
struct DegenerateBoundary : SpecphiError {
    DegenerateBoundary() : SpecphiError("boundary values proportional to the PF restriction") {}
};
struct NotPDSymPart : SpecphiError {
    NotPDSymPart() : SpecphiError("symmetric part is not positive definite") {}
};
struct ShapeMismatch : SpecphiError {
    explicit ShapeMismatch(const std::string& m) : SpecphiError(m) {}
};
struct InvalidPath : SpecphiError {
    explicit InvalidPath(const std::string& m) : SpecphiError(m) {}
};
struct MissingPair : SpecphiError {
    explicit MissingPair(const std::string& m) : SpecphiError(m) {}
};
struct UsageError : SpecphiError {
    explicit UsageError(const std::string& m) : SpecphiError(m) {}
};

enum class PrecisionMode { Machine, Decimal };

// Arithmetic policy. Decimal mode drives the Chet construction; machine
// mode is everything else.
struct PrecisionConfig {
    PrecisionMode mode = PrecisionMode::Machine;
    int digits = 100;      // decimal mode only
    double tol = 1e-12;    // machine-mode convergence tolerance
    long max_iter = 1000000;

    static PrecisionConfig machine(double tol = 1e-12) {
        PrecisionConfig c;
        c.mode = PrecisionMode::Machine;
        c.tol = tol;
        return c;
    }
    static PrecisionConfig decimal(int digits = 100) {
        if (digits < 20) throw UsageError("decimal mode requires >= 20 digits");
        PrecisionConfig c;
        c.mode = PrecisionMode::Decimal;
        c.digits = digits;
        return c;
    }
    // 10^-(digits-10): loose enough to absorb rounding at the working
    // precision, tight enough to catch a genuinely broken build.
    double decimal_tol() const { return std::pow(10.0, -(digits - 10)); }
};

// Entries below this count as structural zeros in machine mode.
inline constexpr double kSupportEps = 1e-14;

}  // namespace specphi
