#pragma once

namespace qsep::tol {

// Construction-time validation.
inline constexpr double kNorm = 1e-10;           // |<psi|psi> - 1|
inline constexpr double kZeroNorm = 1e-14;       // squared norm below which a tensor is "zero"
inline constexpr double kOrthogonality = 1e-9;   // |<E1|E2>|
inline constexpr double kHermiticity = 1e-10;    // max |rho - rho^dagger|
inline constexpr double kTrace = 1e-10;          // |tr rho - 1|
inline constexpr double kPositivity = 1e-9;      // eigenvalues >= -kPositivity
inline constexpr double kUnitarity = 1e-10;      // max |U U^dagger - I|

// Spectral analysis.
inline constexpr double kRank = 1e-9;            // rank test, relative to largest eigenvalue
inline constexpr double kEigenResidual = 1e-10;  // ||rho v - lambda v|| per eigenvector

// Criteria engine.
inline constexpr double kRel = 1e-8;             // default relative tolerance for the criteria
inline constexpr double kReconstruction = 1e-8;  // Frobenius residual of a decomposition
inline constexpr double kPConsistency = 1e-6;    // recovered eigenvalue vs input eigenvalue
inline constexpr double kCoefficientFloor = 1e-12;  // below this, a whole triple set is noise

// Concurrence.
inline constexpr double kPureSeparable = 1e-9;   // base tolerance, scaled by amplitude magnitude
inline constexpr double kFormulaFail = 1e-7;     // the two C routes further apart is an error

// File formats.
inline constexpr double kWeightSum = 1e-9;       // eigen-form weights must sum to 1

}  // namespace qsep::tol
