#pragma once

// Randomized generators (spectrum-uniform effects under Haar-random bases,
// ball-uniform qubit effects) and an independent joint-measurability check
// that knows nothing about the closed-form inequality: it searches for an
// explicit joint-observable corner G on a refined grid.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "effects/core.hpp"
#include "effects/qubit.hpp"
#include "effects/types.hpp"

namespace effects::oracle {

using Rng = std::mt19937_64;

// Stream-splitting: derive an independent generator from (seed, stream).
inline Rng seeded_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return Rng(z ^ (z >> 31));
}

template <typename Real = double>
ComplexMatrix<Real> gaussian_complex_matrix(Eigen::Index dim, Rng& rng) {
  std::normal_distribution<Real> normal(Real(0), Real(1));
  ComplexMatrix<Real> g(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j)
      g(i, j) = std::complex<Real>(normal(rng), normal(rng));
  return g;
}

// Haar-distributed unitary: QR of a complex Gaussian matrix with the phase
// ambiguity fixed by making the R diagonal real positive.
template <typename Real = double>
ComplexMatrix<Real> haar_unitary(Eigen::Index dim, Rng& rng) {
  ComplexMatrix<Real> g = gaussian_complex_matrix<Real>(dim, rng);
  Eigen::HouseholderQR<ComplexMatrix<Real>> qr(g);
  ComplexMatrix<Real> q = qr.householderQ();
  ComplexMatrix<Real> r = qr.matrixQR().template triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < dim; ++j) {
    const std::complex<Real> d = r(j, j);
    const Real mag = std::abs(d);
    if (mag > Real(0)) q.col(j) *= d / mag;
  }
  return q;
}

// Effect with the given spectrum, either diagonal or conjugated by a fresh
// Haar-random unitary.  Values must already lie in [0,1] (validation throws
// otherwise).
template <typename Real = double>
Effect<Real> effect_with_spectrum(const std::vector<Real>& values, Rng* rng = nullptr) {
  const Eigen::Index d = static_cast<Eigen::Index>(values.size());
  RealVector<Real> lam(d);
  for (Eigen::Index i = 0; i < d; ++i) lam(i) = values[static_cast<std::size_t>(i)];
  ComplexMatrix<Real> m;
  if (rng == nullptr) {
    m = lam.template cast<std::complex<Real>>().asDiagonal();
  } else {
    ComplexMatrix<Real> u = haar_unitary<Real>(d, *rng);
    m = u * lam.template cast<std::complex<Real>>().asDiagonal() * u.adjoint();
    m = ((m + m.adjoint()) / Real(2)).eval();  // scrub rounding off selfadjointness
  }
  return validate_effect(HermitianOperator<Real>(std::move(m)));
}

// Random effect: eigenvalues i.i.d. uniform on [0,1], eigenbasis Haar.
template <typename Real = double>
Effect<Real> random_effect(Eigen::Index dim, Rng& rng) {
  std::uniform_real_distribution<Real> unit(Real(0), Real(1));
  std::vector<Real> values(static_cast<std::size_t>(dim));
  for (Real& v : values) v = unit(rng);
  return effect_with_spectrum<Real>(values, &rng);
}

// Random qubit effect: a0 uniform on [0,1], Bloch vector uniform in the ball
// of admissible radius min(a0, 1-a0).
template <typename Real = double>
QubitEffect<Real> random_qubit_effect(Rng& rng) {
  std::uniform_real_distribution<Real> unit(Real(0), Real(1));
  std::normal_distribution<Real> normal(Real(0), Real(1));
  const Real a0 = unit(rng);
  Vector3<Real> dir;
  Real n = Real(0);
  do {
    dir << normal(rng), normal(rng), normal(rng);
    n = dir.norm();
  } while (n == Real(0));
  const Real radius = std::min(a0, Real(1) - a0) * std::cbrt(unit(rng));
  return QubitEffect<Real>(a0, ((radius / n) * dir).eval());
}

// Outcome of the feasibility search.  `margin` is the best (largest) value
// found of the smallest constraint eigenvalue; the pair counts as feasible
// when it is >= -tol::feas, and the point achieving it becomes the witness.
template <typename Real = double>
struct FeasibilityResult {
  bool feasible;
  Real margin;
  std::optional<QubitEffect<Real>> witness;
};

namespace detail {

// For a fixed Bloch part g the four constraint margins are two increasing and
// two decreasing affine functions of the corner level g0, so the best level
// is exactly the (clamped) crossing of the two envelope lines.
template <typename Real>
struct CornerEval {
  Real margin;
  Real g0;
};

template <typename Real>
CornerEval<Real> best_corner_level(Real a0, Real b0, const Vector3<Real>& a,
                                   const Vector3<Real>& b, const Vector3<Real>& s,
                                   const Vector3<Real>& g) {
  const Real p = std::min(-g.norm(), (Real(1) - a0 - b0) - (g - s).norm());
  const Real q = std::min(a0 - (g - a).norm(), b0 - (g - b).norm());
  const Real g0 = std::clamp((q - p) / Real(2), Real(0), Real(1));
  return {std::min(g0 + p, q - g0), g0};
}

// One subgradient of the level-optimized margin at g.  The margin is concave
// in g (a max over g0 of a min of affine-minus-norm terms), so any active
// branch supplies a valid ascent certificate; zero means g is stationary.
template <typename Real>
Vector3<Real> margin_subgradient(Real a0, Real b0, const Vector3<Real>& a,
                                 const Vector3<Real>& b, const Vector3<Real>& s,
                                 const Vector3<Real>& g) {
  const auto slope = [](const Vector3<Real>& v) {
    const Real n = v.norm();
    return n > Real(0) ? Vector3<Real>(-v / n) : Vector3<Real>(Vector3<Real>::Zero());
  };
  const Real n_g = g.norm();
  const Real n_gs = (g - s).norm();
  const Real n_ga = (g - a).norm();
  const Real n_gb = (g - b).norm();
  const Real p = std::min(-n_g, (Real(1) - a0 - b0) - n_gs);
  const Real q = std::min(a0 - n_ga, b0 - n_gb);
  const Vector3<Real> dp = -n_g <= (Real(1) - a0 - b0) - n_gs ? slope(g) : slope(g - s);
  const Vector3<Real> dq = a0 - n_ga <= b0 - n_gb ? slope(g - a) : slope(g - b);
  const Real cross = (q - p) / Real(2);
  if (cross <= Real(0)) return dq;
  if (cross >= Real(1)) return dp;
  return (dp + dq) / Real(2);
}

}  // namespace detail

// Decides whether effects A and B admit a joint observable by searching for
// its corner G = g0*1 + g.sigma with
//   G >= 0,  A - G >= 0,  B - G >= 0,  1 - A - B + G >= 0.
// Each constraint c0*1 + c.sigma >= 0 is evaluated exactly as c0 - |c| >= 0,
// and the level g0 is solved exactly per Bloch part (best_corner_level), so
// the search runs over g alone.  Two phases: a resolution^3 grid on the
// master box g in [-1/2,1/2]^3 with `rounds` shrink-by-5 refinements around
// the best point, then an ellipsoid-method polish of the concave margin over
// the unit ball, which pins the optimum to ~1e-10 even when a near-singular
// effect leaves only a sliver of feasible corners.  (Any corner with margin
// >= -eps provably has |g| <= 1/2 + eps, so neither region loses solutions.)
// Deliberately independent of the closed-form inequality in qubit.hpp: this
// is the check the criterion is tested against.
template <typename Real>
FeasibilityResult<Real> joint_feasible_bruteforce(const QubitEffect<Real>& qa,
                                                 const QubitEffect<Real>& qb,
                                                 int resolution = 21, int rounds = 4,
                                                 Real eps = static_cast<Real>(tol::feas)) {
  if (resolution < 2) throw DimensionError("grid resolution must be at least 2");
  const Real a0 = qa.a0(), b0 = qb.a0();
  const Vector3<Real> a = qa.a(), b = qb.a(), ab = a + b;
  const Real c40 = Real(1) - a0 - b0;

  Real best_margin = -std::numeric_limits<Real>::infinity();
  Vector3<Real> best_g = Vector3<Real>::Zero();
  Real best_g0 = Real(0.5);
  const auto record = [&](Real margin, const Vector3<Real>& g, Real g0) {
    if (margin > best_margin) {
      best_margin = margin;
      best_g = g;
      best_g0 = g0;
    }
  };

  // Phase 1: refined grid over the Bloch part.
  Vector3<Real> center = Vector3<Real>::Zero();
  Real half = Real(0.5);
  std::vector<Real> axis[3];
  for (int round = 0; round <= rounds; ++round) {
    for (int d = 0; d < 3; ++d) {
      const Real lo = std::max(Real(-0.5), center(d) - half);
      const Real hi = std::min(Real(0.5), center(d) + half);
      axis[d].assign(static_cast<std::size_t>(resolution), lo);
      const Real step = (hi - lo) / Real(resolution - 1);
      for (int k = 0; k < resolution; ++k)
        axis[d][static_cast<std::size_t>(k)] = lo + step * Real(k);
    }
    Real round_best = -std::numeric_limits<Real>::infinity();
    Vector3<Real> round_g = center;
    for (Real gx : axis[0]) {
      for (Real gy : axis[1]) {
        const Real pxy_g = gx * gx + gy * gy;
        const Real pxy_a = (gx - a(0)) * (gx - a(0)) + (gy - a(1)) * (gy - a(1));
        const Real pxy_b = (gx - b(0)) * (gx - b(0)) + (gy - b(1)) * (gy - b(1));
        const Real pxy_s = (gx - ab(0)) * (gx - ab(0)) + (gy - ab(1)) * (gy - ab(1));
        for (Real gz : axis[2]) {
          const Real n_g = std::sqrt(pxy_g + gz * gz);
          const Real n_ga = std::sqrt(pxy_a + (gz - a(2)) * (gz - a(2)));
          const Real n_gb = std::sqrt(pxy_b + (gz - b(2)) * (gz - b(2)));
          const Real n_gs = std::sqrt(pxy_s + (gz - ab(2)) * (gz - ab(2)));
          const Real p = std::min(-n_g, c40 - n_gs);
          const Real q = std::min(a0 - n_ga, b0 - n_gb);
          const Real g0 = std::clamp((q - p) / Real(2), Real(0), Real(1));
          const Real m = std::min(g0 + p, q - g0);
          if (m > round_best) {
            round_best = m;
            round_g << gx, gy, gz;
          }
        }
      }
    }
    {
      const detail::CornerEval<Real> ev = detail::best_corner_level(a0, b0, a, b, ab, round_g);
      record(ev.margin, round_g, ev.g0);
    }
    center = round_g;
    half /= Real(5);
  }

  // Phase 2: central-cut ellipsoid on the concave margin, starting from the
  // unit ball around the origin.  600 cuts shrink the containing ellipsoid by
  // e^(-600/24), far below every tolerance in play.
  Eigen::Matrix<Real, 3, 3> shape = Eigen::Matrix<Real, 3, 3>::Identity();
  Vector3<Real> x = Vector3<Real>::Zero();
  for (int it = 0; it < 600; ++it) {
    const detail::CornerEval<Real> ev = detail::best_corner_level(a0, b0, a, b, ab, x);
    record(ev.margin, x, ev.g0);
    const Vector3<Real> u = detail::margin_subgradient(a0, b0, a, b, ab, x);
    const Real upu = u.dot(shape * u);
    if (!(upu > Real(1e-300))) break;  // stationary point or degenerate shape
    const Vector3<Real> step = (shape * u) / std::sqrt(upu);
    x += step / Real(4);
    shape = Real(9) / Real(8) * (shape - Real(0.5) * (step * step.transpose()));
    shape = (shape + shape.transpose().eval()) / Real(2);
  }

  FeasibilityResult<Real> result;
  result.margin = best_margin;
  result.feasible = best_margin >= -eps;
  if (result.feasible)
    result.witness = QubitEffect<Real>(best_g0, best_g, Real(1e-6));
  return result;
}

// Sanity-check evaluator shared with tests: smallest of the four constraint
// margins of a candidate corner.
template <typename Real>
Real corner_margin(const QubitEffect<Real>& qa, const QubitEffect<Real>& qb, Real g0,
                   const Vector3<Real>& g) {
  const Real m1 = g0 - g.norm();
  const Real m2 = (qa.a0() - g0) - (g - qa.a()).norm();
  const Real m3 = (qb.a0() - g0) - (g - qb.a()).norm();
  const Real m4 = (Real(1) - qa.a0() - qb.a0() + g0) - (g - qa.a() - qb.a()).norm();
  return std::min(std::min(m1, m2), std::min(m3, m4));
}

}  // namespace effects::oracle
