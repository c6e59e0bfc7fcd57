#pragma once

#include <stdexcept>
#include <string>

namespace qsep {

/// Base class for every qsep error.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Input tensor has (numerically) zero norm.
struct AllZeroTensor : Error {
  using Error::Error;
};

/// Operand shapes or mode dimensions do not match.
struct DimensionMismatch : Error {
  using Error::Error;
};

/// A matrix expected to be unitary is not, within tolerance.
struct NotUnitary : Error {
  using Error::Error;
};

/// A matrix expected to be a density matrix fails Hermiticity, trace or
/// positivity validation.
struct InvalidDensityMatrix : Error {
  using Error::Error;
};

/// The spectrum has more than two significant eigenvalues.
struct NotRankTwo : Error {
  using Error::Error;
};

/// The spectrum has only one significant eigenvalue.
struct RankOne : Error {
  using Error::Error;
};

/// Factor extraction was requested for a state that is not a product state.
struct NotSeparable : Error {
  using Error::Error;
};

/// The two independent concurrence computations disagree beyond the failure
/// threshold. Signals an implementation or data-corruption bug.
struct FormulaMismatch : Error {
  using Error::Error;
};

/// Real-coefficient analysis requested on a state with genuinely complex
/// amplitudes.
struct NotRealCoefficients : Error {
  using Error::Error;
};

/// Vector is not the canonical maximally entangled vector.
struct NotMaximallyEntangled : Error {
  using Error::Error;
};

/// Two vectors expected to be orthogonal are not.
struct NotOrthogonal : Error {
  using Error::Error;
};

/// Two states expected to be distinct coincide up to phase.
struct IdenticalStates : Error {
  using Error::Error;
};

/// Structured input file could not be parsed or violates its schema.
struct ParseError : Error {
  using Error::Error;
};

/// An unconditional internal soundness check failed (e.g. a decomposition
/// that does not reconstruct its input). Always a bug, never a verdict.
struct InternalError : Error {
  using Error::Error;
};

}  // namespace qsep
