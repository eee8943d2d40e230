#pragma once

// The catalogue of sharpness, unsharpness and bias functionals of an effect.
// Everything here is a function of the spectrum alone; general-dimension
// measures take an Effect, the closed-form qubit measures take a QubitEffect
// (with Effect overloads that go through the Bloch decomposition).

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "effects/core.hpp"
#include "effects/qubit.hpp"
#include "effects/types.hpp"

namespace effects {

namespace detail {

// sqrt with a guard: the argument is nonnegative up to rounding by
// construction, so a significantly negative value means a real bug.
template <typename Real>
Real guarded_sqrt(Real radicand, const char* who) {
  if (radicand < -static_cast<Real>(tol::eig))
    throw InternalError(std::string(who) + ": radicand " +
                        std::to_string(static_cast<double>(radicand)) + " is negative");
  return std::sqrt(std::max(radicand, Real(0)));
}

// Smallest squared distance from any eigenvalue to the spectral midpoint.
template <typename Real>
Real min_midpoint_offset_sq(const Effect<Real>& a) {
  const Real mid = spectral_summary(a).midpoint;
  return (a.eigenvalues().array() - mid).square().minCoeff();
}

}  // namespace detail

// Spectral width M - m.  The simplest sharpness candidate; saturates at 1 for
// any effect whose spectrum touches both 0 and 1, projection or not.
template <typename Real>
Real sharpness_a(const Effect<Real>& a) {
  return spectral_summary(a).width;
}

// Width damped by twice the smaller of the midpoints of A and A':
// (1 - ||A| - |A'||) (|A| + |A'| - 1).
template <typename Real>
Real sharpness_b(const Effect<Real>& a) {
  const SpectralSummary<Real> s = spectral_summary(a);
  const Real norm_a = s.max;
  const Real norm_c = Real(1) - s.min;
  return (Real(1) - std::abs(norm_a - norm_c)) * (norm_a + norm_c - Real(1));
}

// |A| |A'| - |AA'|.
template <typename Real>
Real sharpness_0(const Effect<Real>& a) {
  const SpectralSummary<Real> s = spectral_summary(a);
  return s.max * (Real(1) - s.min) - product_spectrum(a).maxCoeff();
}

// Spectral width minus the dispersion of AA'.
template <typename Real>
Real sharpness_1(const Effect<Real>& a) {
  return spectral_summary(a).width - dispersion(a);
}

// The two abbreviations the quadratic sharpness measure is built from:
//   x = 2 |A| |A'| - width,   y = 2 S0 - S1.
template <typename Real = double>
struct QuadraticTerms {
  Real x;
  Real y;
};

template <typename Real>
QuadraticTerms<Real> quadratic_terms(const Effect<Real>& a) {
  const SpectralSummary<Real> s = spectral_summary(a);
  const Real x = Real(2) * s.max * (Real(1) - s.min) - s.width;
  const Real y = Real(2) * sharpness_0(a) - sharpness_1(a);
  return {x, y};
}

// Smaller root s = x - sqrt(x^2 - y) of s^2 - 2xs + y = 0.  Unlike the width
// it keeps the projection characterization in every dimension.
template <typename Real>
Real sharpness_2(const Effect<Real>& a) {
  const QuadraticTerms<Real> t = quadratic_terms(a);
  return t.x - detail::guarded_sqrt(t.x * t.x - t.y, "sharpness_2");
}

// Discriminant 1 - 2x + y of the failed quadratic bias candidate.  A valid
// bias functional would need this to stay nonnegative; it does not.
template <typename Real>
Real failed_b2_discriminant(const Effect<Real>& a) {
  const QuadraticTerms<Real> t = quadratic_terms(a);
  return Real(1) - Real(2) * t.x + t.y;
}

// sqrt(M m) + sqrt((1-M)(1-m)) and its bias companion.
template <typename Real>
Real unsharpness_f3(const Effect<Real>& a) {
  const SpectralSummary<Real> s = spectral_summary(a);
  return std::sqrt(s.max * s.min) + std::sqrt((Real(1) - s.max) * (Real(1) - s.min));
}

template <typename Real>
Real bias_3(const Effect<Real>& a) {
  const SpectralSummary<Real> s = spectral_summary(a);
  return std::sqrt(s.max * s.min) - std::sqrt((Real(1) - s.max) * (Real(1) - s.min));
}

// Variant built from the full spectrum: the radicands subtract the smallest
// squared offset of an eigenvalue from the midpoint.
template <typename Real>
Real unsharpness_f4(const Effect<Real>& a) {
  const Real mid = spectral_summary(a).midpoint;
  const Real off = detail::min_midpoint_offset_sq(a);
  return detail::guarded_sqrt(mid * mid - off, "unsharpness_f4") +
         detail::guarded_sqrt((Real(1) - mid) * (Real(1) - mid) - off, "unsharpness_f4");
}

template <typename Real>
Real bias_4(const Effect<Real>& a) {
  const Real mid = spectral_summary(a).midpoint;
  const Real off = detail::min_midpoint_offset_sq(a);
  return detail::guarded_sqrt(mid * mid - off, "bias_4") -
         detail::guarded_sqrt((Real(1) - mid) * (Real(1) - mid) - off, "bias_4");
}

// Equal-weight average of the f3 and f4 radicands under the roots; lands
// between the two by concavity of sqrt.
template <typename Real>
Real unsharpness_f5(const Effect<Real>& a) {
  const SpectralSummary<Real> s = spectral_summary(a);
  const Real off = detail::min_midpoint_offset_sq(a);
  const Real yes = (s.midpoint * s.midpoint - off + s.max * s.min) / Real(2);
  const Real no = ((Real(1) - s.midpoint) * (Real(1) - s.midpoint) - off +
                   (Real(1) - s.max) * (Real(1) - s.min)) / Real(2);
  return detail::guarded_sqrt(yes, "unsharpness_f5") + detail::guarded_sqrt(no, "unsharpness_f5");
}

template <typename Real>
Real bias_5(const Effect<Real>& a) {
  const SpectralSummary<Real> s = spectral_summary(a);
  const Real off = detail::min_midpoint_offset_sq(a);
  const Real yes = (s.midpoint * s.midpoint - off + s.max * s.min) / Real(2);
  const Real no = ((Real(1) - s.midpoint) * (Real(1) - s.midpoint) - off +
                   (Real(1) - s.max) * (Real(1) - s.min)) / Real(2);
  return detail::guarded_sqrt(yes, "bias_5") - detail::guarded_sqrt(no, "bias_5");
}

// Midpoint displacement 2 mu - 1 = M + m - 1.
template <typename Real>
Real bias_0(const Effect<Real>& a) {
  const SpectralSummary<Real> s = spectral_summary(a);
  return s.max + s.min - Real(1);
}

// --- closed-form qubit measures -------------------------------------------

// 2 |a|: the qubit width.
template <typename Real>
Real sharpness_a2(const QubitEffect<Real>& q) {
  return Real(2) * q.radius();
}

// 4 min(a0, 1-a0) |a|.
template <typename Real>
Real sharpness_b2(const QubitEffect<Real>& q) {
  return Real(4) * std::min(q.a0(), Real(1) - q.a0()) * q.radius();
}

// 1 - f2(A)^2.
template <typename Real>
Real sharpness_c2(const QubitEffect<Real>& q) {
  const Real f = f2(q);
  return Real(1) - f * f;
}

// 2 a0 - 1.
template <typename Real>
Real bias_a2(const QubitEffect<Real>& q) {
  return Real(2) * q.a0() - Real(1);
}

// The two-outcome bias sqrt(a0^2-|a|^2) - sqrt((1-a0)^2-|a|^2).
template <typename Real>
Real bias_2d(const QubitEffect<Real>& q) {
  return b2(q);
}

// --- string-keyed catalogue (double precision, CLI and harness facing) ----

enum class MeasureKind { Sharpness, Unsharpness, Bias, BiasDiagnostic };

struct MeasureInfo {
  std::string id;
  MeasureKind kind;
  bool qubit_only;  // needs a 2x2 operator (closed Bloch form)
  bool axiomatic;   // expected to pass its full axiom family
  double (*eval)(const Effectd&);
  std::string summary;
};

namespace detail {

inline QubitEffectd as_qubit(const Effectd& e) { return bloch_from_effect(e); }

}  // namespace detail

inline const std::vector<MeasureInfo>& measure_catalogue() {
  static const std::vector<MeasureInfo> table = {
      {"Sa", MeasureKind::Sharpness, false, false,
       [](const Effectd& e) { return sharpness_a(e); },
       "spectral width M - m"},
      {"Sb", MeasureKind::Sharpness, false, false,
       [](const Effectd& e) { return sharpness_b(e); },
       "width damped by the smaller midpoint"},
      {"S0", MeasureKind::Sharpness, false, true,
       [](const Effectd& e) { return sharpness_0(e); },
       "|A||A'| - |AA'|"},
      {"S1", MeasureKind::Sharpness, false, true,
       [](const Effectd& e) { return sharpness_1(e); },
       "width minus dispersion of AA'"},
      {"S2", MeasureKind::Sharpness, false, true,
       [](const Effectd& e) { return sharpness_2(e); },
       "x - sqrt(x^2 - y) with x = 2|A||A'| - width, y = 2 S0 - S1"},
      {"Sa2", MeasureKind::Sharpness, true, true,
       [](const Effectd& e) { return sharpness_a2(detail::as_qubit(e)); },
       "qubit closed form 2|a|"},
      {"Sb2", MeasureKind::Sharpness, true, true,
       [](const Effectd& e) { return sharpness_b2(detail::as_qubit(e)); },
       "qubit closed form 4 min(a0, 1-a0)|a|"},
      {"Sc2", MeasureKind::Sharpness, true, true,
       [](const Effectd& e) { return sharpness_c2(detail::as_qubit(e)); },
       "qubit closed form 1 - f2^2"},
      {"F3", MeasureKind::Unsharpness, false, false,
       [](const Effectd& e) { return unsharpness_f3(e); },
       "sqrt(Mm) + sqrt((1-M)(1-m))"},
      {"F4", MeasureKind::Unsharpness, false, false,
       [](const Effectd& e) { return unsharpness_f4(e); },
       "midpoint form with smallest eigenvalue offset"},
      {"F5", MeasureKind::Unsharpness, false, true,
       [](const Effectd& e) { return unsharpness_f5(e); },
       "averaged radicands of F3 and F4"},
      {"B0", MeasureKind::Bias, false, true,
       [](const Effectd& e) { return bias_0(e); },
       "midpoint displacement 2 mu - 1"},
      {"Ba2", MeasureKind::Bias, true, true,
       [](const Effectd& e) { return bias_a2(detail::as_qubit(e)); },
       "qubit closed form 2 a0 - 1"},
      {"B2d", MeasureKind::Bias, true, true,
       [](const Effectd& e) { return bias_2d(detail::as_qubit(e)); },
       "qubit two-outcome bias"},
      {"B3", MeasureKind::Bias, false, true,
       [](const Effectd& e) { return bias_3(e); },
       "sqrt(Mm) - sqrt((1-M)(1-m))"},
      {"B4", MeasureKind::Bias, false, true,
       [](const Effectd& e) { return bias_4(e); },
       "midpoint form with smallest eigenvalue offset"},
      {"B5", MeasureKind::Bias, false, true,
       [](const Effectd& e) { return bias_5(e); },
       "averaged radicands of B3 and B4"},
      {"B2fail", MeasureKind::BiasDiagnostic, false, false,
       [](const Effectd& e) { return failed_b2_discriminant(e); },
       "discriminant 1 - 2x + y of the failed quadratic bias"},
  };
  return table;
}

inline const MeasureInfo& find_measure(const std::string& id) {
  for (const MeasureInfo& m : measure_catalogue())
    if (m.id == id) return m;
  throw UnknownMeasureError("unknown measure '" + id + "'");
}

}  // namespace effects
