#pragma once

#include <stdexcept>
#include <string>

namespace effects {

// Numerical guard bands used across the library.  Values are absolute
// tolerances on quantities of order one (all spectra live in [0,1]).
namespace tol {
inline constexpr double herm = 1e-10;      // allowed |A - A^dagger| per entry
inline constexpr double eig = 1e-9;        // spectrum membership / measure slack
inline constexpr double recon = 1e-9;      // eigendecomposition reconstruction
inline constexpr double ortho = 1e-10;     // eigenvector orthonormality
inline constexpr double trace = 1e-10;     // state normalization
inline constexpr double member = 1e-8;     // set-membership classification
inline constexpr double feas = 1e-7;       // feasibility margin slack
inline constexpr double marginal_band = 1e-6;   // undecided band around lhs = 1
inline constexpr double agreement_band = 5e-3;  // criterion-vs-search exclusion band
inline constexpr int max_dim = 16;         // default Hilbert space dimension cap
}  // namespace tol

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Input matrix is not selfadjoint within tolerance.
struct NotHermitianError final : Error {
  using Error::Error;
};

// Spectrum escapes the admissible interval (effect: [0,1], state: [0,inf)).
struct SpectrumError final : Error {
  using Error::Error;
};

// Operator dimensions disagree, exceed the cap, or are otherwise unusable.
struct DimensionError final : Error {
  using Error::Error;
};

// Measure identifier not present in the catalogue.
struct UnknownMeasureError final : Error {
  using Error::Error;
};

// Unreadable or malformed input file.
struct ParseError final : Error {
  using Error::Error;
};

// An internal algebraic guarantee failed badly enough to distrust the result,
// e.g. a discriminant that should be nonnegative came out significantly negative.
struct InternalError final : Error {
  using Error::Error;
};

}  // namespace effects
