#pragma once

// Dense selfadjoint operators with spectrum in [0,1] ("effects"), their
// complements, and the handful of spectral statistics everything else in this
// library is built from.  All types are immutable after construction and all
// functions are pure.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <utility>

#include "effects/types.hpp"

namespace effects {

template <typename Real = double>
using ComplexMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real = double>
using RealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

namespace detail {

template <typename Real>
Real max_hermiticity_defect(const ComplexMatrix<Real>& m) {
  return (m - m.adjoint().eval()).cwiseAbs().maxCoeff();
}

inline std::string dim_text(Eigen::Index d) {
  std::ostringstream os;
  os << d;
  return os.str();
}

}  // namespace detail

// A validated selfadjoint matrix.  Construction is the only mutation point.
template <typename Real = double>
class HermitianOperator {
 public:
  using Matrix = ComplexMatrix<Real>;

  HermitianOperator(Matrix entries, Real herm_tol = static_cast<Real>(tol::herm),
                    Eigen::Index max_dim = tol::max_dim)
      : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols())
      throw DimensionError("operator matrix is not square");
    if (entries_.rows() < 1 || entries_.rows() > max_dim)
      throw DimensionError("operator dimension " + detail::dim_text(entries_.rows()) +
                           " outside [1, " + detail::dim_text(max_dim) + "]");
    const Real defect = detail::max_hermiticity_defect(entries_);
    if (!(defect <= herm_tol))
      throw NotHermitianError("matrix deviates from selfadjointness by " +
                              std::to_string(static_cast<double>(defect)));
  }

  const Matrix& matrix() const { return entries_; }
  Eigen::Index dim() const { return entries_.rows(); }

 private:
  Matrix entries_;
};

template <typename Real = double>
struct EigenDecomposition {
  RealVector<Real> values;        // ascending
  ComplexMatrix<Real> vectors;    // columns, orthonormal
};

// Full spectral decomposition.  Values come back ascending; columns of
// `vectors` are the matching eigenvectors.
template <typename Real>
EigenDecomposition<Real> eig_decompose(const HermitianOperator<Real>& op) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix<Real>> solver(op.matrix());
  if (solver.info() != Eigen::Success)
    throw InternalError("selfadjoint eigensolver failed to converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

// Endpoints of the smallest interval containing the spectrum.
template <typename Real = double>
struct SpectralSummary {
  Real min;
  Real max;
  Real width;     // max - min
  Real midpoint;  // (max + min) / 2
};

template <typename Real>
SpectralSummary<Real> summary_of_sorted(const RealVector<Real>& ascending) {
  const Real lo = ascending(0);
  const Real hi = ascending(ascending.size() - 1);
  return {lo, hi, hi - lo, (hi + lo) / Real(2)};
}

template <typename Real>
class Effect;

template <typename Real>
Effect<Real> validate_effect(const HermitianOperator<Real>& op, Real tol);

// A selfadjoint operator with spectrum in [0,1], carrying its spectral
// decomposition.  Obtained through validate_effect().
template <typename Real = double>
class Effect {
 public:
  using Matrix = ComplexMatrix<Real>;

  const Matrix& matrix() const { return op_; }
  Eigen::Index dim() const { return op_.rows(); }

  // Ascending, clamped into [0,1].
  const RealVector<Real>& eigenvalues() const { return eigs_; }
  const Matrix& eigenvectors() const { return vecs_; }

  friend Effect validate_effect<Real>(const HermitianOperator<Real>& op, Real tol);

 private:
  Effect(Matrix op, RealVector<Real> eigs, Matrix vecs)
      : op_(std::move(op)), eigs_(std::move(eigs)), vecs_(std::move(vecs)) {}

  Matrix op_;
  RealVector<Real> eigs_;
  Matrix vecs_;
};

// Operator norm of a selfadjoint matrix given its spectrum.
template <typename Real>
Real spectral_norm(const RealVector<Real>& eigenvalues) {
  return eigenvalues.cwiseAbs().maxCoeff();
}

// Norm characterization of effects among selfadjoint operators:
//   0 <= |A| + |1-A| - 1 <= 1 - ||A| - |1-A||
// holds exactly when the spectrum lies in [0,1].
template <typename Real>
bool satisfies_effect_norm_bounds(const RealVector<Real>& eigenvalues, Real slack) {
  const Real norm_a = spectral_norm<Real>(eigenvalues);
  const Real norm_c = spectral_norm<Real>((RealVector<Real>::Ones(eigenvalues.size()) - eigenvalues).eval());
  const Real s = norm_a + norm_c - Real(1);
  return s >= -slack && s <= Real(1) - std::abs(norm_a - norm_c) + slack;
}

// Checks 0 <= A <= 1 within `tol`, clamps the spectrum into [0,1] and returns
// the effect together with its decomposition.
template <typename Real>
Effect<Real> validate_effect(const HermitianOperator<Real>& op, Real tol) {
  EigenDecomposition<Real> dec = eig_decompose(op);
  const Real lo = dec.values(0);
  const Real hi = dec.values(dec.values.size() - 1);
  if (!(lo >= -tol && hi <= Real(1) + tol))
    throw SpectrumError("spectrum [" + std::to_string(static_cast<double>(lo)) + ", " +
                        std::to_string(static_cast<double>(hi)) + "] escapes [0,1] beyond tolerance");
  // Cheap cross-check: the norm characterization must agree with the direct
  // spectrum test it is equivalent to.
  if (!satisfies_effect_norm_bounds<Real>(dec.values, Real(4) * (tol + static_cast<Real>(tol::eig))))
    throw InternalError("norm characterization disagrees with spectrum bounds");
  RealVector<Real> clamped = dec.values.cwiseMax(Real(0)).cwiseMin(Real(1));
  return Effect<Real>(op.matrix(), std::move(clamped), std::move(dec.vectors));
}

template <typename Real>
Effect<Real> validate_effect(const HermitianOperator<Real>& op) {
  return validate_effect(op, static_cast<Real>(tol::eig));
}

template <typename Real>
Effect<Real> validate_effect(const ComplexMatrix<Real>& entries, Real tol = static_cast<Real>(tol::eig)) {
  return validate_effect(HermitianOperator<Real>(entries), tol);
}

// Complement effect A' = 1 - A.
template <typename Real>
Effect<Real> complement(const Effect<Real>& a) {
  ComplexMatrix<Real> c = -a.matrix();
  c.diagonal().array() += std::complex<Real>(1, 0);
  return validate_effect(HermitianOperator<Real>(std::move(c)));
}

template <typename Real>
SpectralSummary<Real> spectral_summary(const Effect<Real>& a) {
  return summary_of_sorted(a.eigenvalues());
}

// Spectrum of AA' is {l(1-l) : l eigenvalue of A}; no matrix product needed.
template <typename Real>
RealVector<Real> product_spectrum(const Effect<Real>& a) {
  const RealVector<Real>& l = a.eigenvalues();
  return (l.array() * (Real(1) - l.array())).matrix();
}

// Width of the spectrum of AA'.  Zero exactly when the spectrum of A is
// contained in a set {l, 1-l}, i.e. when AA' is itself trivial.
template <typename Real>
Real dispersion(const Effect<Real>& a) {
  const RealVector<Real> p = product_spectrum(a);
  return p.maxCoeff() - p.minCoeff();
}

// Closest trivial effect kappa*1 in operator norm, with the distance to it.
template <typename Real = double>
struct TrivialDistance {
  Real kappa_star;
  Real distance;
};

template <typename Real>
TrivialDistance<Real> min_distance_to_trivial(const Effect<Real>& a) {
  const SpectralSummary<Real> s = spectral_summary(a);
  return {s.midpoint, s.width / Real(2)};
}

template <typename Real>
class State;

template <typename Real>
State<Real> validate_state(const HermitianOperator<Real>& op, Real psd_tol, Real trace_tol);

// Density operator: positive semidefinite, unit trace.
template <typename Real = double>
class State {
 public:
  using Matrix = ComplexMatrix<Real>;

  const Matrix& matrix() const { return op_; }
  Eigen::Index dim() const { return op_.rows(); }

  friend State validate_state<Real>(const HermitianOperator<Real>& op, Real psd_tol, Real trace_tol);

 private:
  explicit State(Matrix op) : op_(std::move(op)) {}
  Matrix op_;
};

template <typename Real>
State<Real> validate_state(const HermitianOperator<Real>& op, Real psd_tol, Real trace_tol) {
  EigenDecomposition<Real> dec = eig_decompose(op);
  if (!(dec.values(0) >= -psd_tol))
    throw SpectrumError("state has negative eigenvalue " +
                        std::to_string(static_cast<double>(dec.values(0))));
  const Real tr = op.matrix().trace().real();
  if (!(std::abs(tr - Real(1)) <= trace_tol))
    throw SpectrumError("state trace " + std::to_string(static_cast<double>(tr)) + " is not 1");
  return State<Real>(op.matrix());
}

template <typename Real>
State<Real> validate_state(const HermitianOperator<Real>& op) {
  return validate_state(op, static_cast<Real>(tol::eig), static_cast<Real>(tol::trace));
}

template <typename Real>
State<Real> validate_state(const ComplexMatrix<Real>& entries) {
  return validate_state(HermitianOperator<Real>(entries));
}

// Probability of "yes then no" when the same effect is measured twice in
// sequence on state T with the standard square-root update: tr[T A A'].
template <typename Real>
Real luders_sequential_prob(const State<Real>& t, const Effect<Real>& a) {
  if (t.dim() != a.dim())
    throw DimensionError("state and effect dimensions disagree");
  ComplexMatrix<Real> aprime = -a.matrix();
  aprime.diagonal().array() += std::complex<Real>(1, 0);
  return (t.matrix() * a.matrix() * aprime).trace().real();
}

// --- set membership classifiers (floating-point renditions) ---------------

template <typename Real>
bool is_trivial(const Effect<Real>& a, Real eps = static_cast<Real>(tol::member)) {
  return spectral_summary(a).width < eps;
}

// Projection different from 0 and 1: every eigenvalue at an endpoint of
// [0,1] and both endpoints hit.  The width test keeps near-trivial effects
// out without a separate rank check.
template <typename Real>
bool is_nontrivial_projection(const Effect<Real>& a, Real eps = static_cast<Real>(tol::member)) {
  const RealVector<Real>& l = a.eigenvalues();
  const bool on_corners =
      ((l.array() < eps) || (l.array() > Real(1) - eps)).all();
  return on_corners && summary_of_sorted(l).width > Real(0.5);
}

template <typename Real>
bool is_identity_effect(const Effect<Real>& a, Real eps = static_cast<Real>(tol::member)) {
  return a.eigenvalues()(0) > Real(1) - eps;
}

template <typename Real>
bool is_zero_effect(const Effect<Real>& a, Real eps = static_cast<Real>(tol::member)) {
  return a.eigenvalues()(a.dim() - 1) < eps;
}

template <typename Real>
bool is_unbiased(const Effect<Real>& a, Real eps = static_cast<Real>(tol::member)) {
  return std::abs(spectral_summary(a).midpoint - Real(0.5)) < eps;
}

using HermitianOperatord = HermitianOperator<double>;
using Effectd = Effect<double>;
using Stated = State<double>;

}  // namespace effects
