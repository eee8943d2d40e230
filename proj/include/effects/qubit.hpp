#pragma once

// Two-dimensional effects in Bloch form A = a0*1 + a.sigma, the closed-form
// fuzziness/bias functionals available there, and the exact joint-measurability
// decision for a pair of such effects.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "effects/core.hpp"
#include "effects/types.hpp"

namespace effects {

template <typename Real = double>
using Vector3 = Eigen::Matrix<Real, 3, 1>;

// Effect on C^2 stored as (a0, a): A = a0*1 + ax*sx + ay*sy + az*sz.
// Valid iff |a| <= min(a0, 1-a0), i.e. both eigenvalues a0 +- |a| in [0,1].
template <typename Real = double>
class QubitEffect {
 public:
  QubitEffect(Real a0, Vector3<Real> a, Real slack = static_cast<Real>(tol::eig))
      : a0_(a0), a_(std::move(a)) {
    const Real r = a_.norm();
    if (!(r <= std::min(a0_, Real(1) - a0_) + slack))
      throw SpectrumError("bloch vector length " + std::to_string(static_cast<double>(r)) +
                          " exceeds min(a0, 1-a0) for a0 = " +
                          std::to_string(static_cast<double>(a0_)));
  }

  Real a0() const { return a0_; }
  const Vector3<Real>& a() const { return a_; }
  Real radius() const { return a_.norm(); }

  QubitEffect complement() const { return QubitEffect(Real(1) - a0_, (-a_).eval()); }

 private:
  Real a0_;
  Vector3<Real> a_;
};

template <typename Real>
ComplexMatrix<Real> matrix_from_bloch(const QubitEffect<Real>& q) {
  using C = std::complex<Real>;
  ComplexMatrix<Real> m(2, 2);
  const Vector3<Real>& a = q.a();
  m(0, 0) = C(q.a0() + a(2), 0);
  m(0, 1) = C(a(0), -a(1));
  m(1, 0) = C(a(0), a(1));
  m(1, 1) = C(q.a0() - a(2), 0);
  return m;
}

// Inverse of matrix_from_bloch.  Throws unless the operator is a valid 2x2
// effect within `slack`.
template <typename Real>
QubitEffect<Real> bloch_from_matrix(const ComplexMatrix<Real>& m, Real slack = static_cast<Real>(tol::eig)) {
  if (m.rows() != 2 || m.cols() != 2)
    throw DimensionError("bloch decomposition needs a 2x2 operator");
  if (detail::max_hermiticity_defect(m) > static_cast<Real>(tol::herm))
    throw NotHermitianError("bloch decomposition needs a selfadjoint operator");
  Vector3<Real> a;
  a(0) = m(1, 0).real();
  a(1) = m(1, 0).imag();
  a(2) = Real(0.5) * (m(0, 0).real() - m(1, 1).real());
  const Real a0 = Real(0.5) * (m(0, 0).real() + m(1, 1).real());
  return QubitEffect<Real>(a0, a, slack);
}

template <typename Real>
QubitEffect<Real> bloch_from_effect(const Effect<Real>& e, Real slack = static_cast<Real>(tol::eig)) {
  return bloch_from_matrix<Real>(e.matrix(), slack);
}

// Qubit fuzziness sqrt(a0^2-|a|^2) + sqrt((1-a0)^2-|a|^2).  Equals 1 on
// trivial effects and 0 on nontrivial projections.
template <typename Real>
Real f2(const QubitEffect<Real>& q) {
  const Real r2 = q.a().squaredNorm();
  const Real yes = std::sqrt(std::max(q.a0() * q.a0() - r2, Real(0)));
  const Real no = std::sqrt(std::max((Real(1) - q.a0()) * (Real(1) - q.a0()) - r2, Real(0)));
  return yes + no;
}

// Companion bias sqrt(a0^2-|a|^2) - sqrt((1-a0)^2-|a|^2); f2*b2 = 2*a0 - 1.
template <typename Real>
Real b2(const QubitEffect<Real>& q) {
  const Real r2 = q.a().squaredNorm();
  const Real yes = std::sqrt(std::max(q.a0() * q.a0() - r2, Real(0)));
  const Real no = std::sqrt(std::max((Real(1) - q.a0()) * (Real(1) - q.a0()) - r2, Real(0)));
  return yes - no;
}

// A pair of qubit effects with the abbreviations entering the joint
// measurability inequality cached.
template <typename Real = double>
struct CoexistencePair {
  QubitEffect<Real> a;
  QubitEffect<Real> b;
  Real f;     // f2(A)^2 + f2(B)^2
  Real bias;  // b2(A)^2 + b2(B)^2
  Real x;     // 2*a0 - 1
  Real y;     // 2*b0 - 1
  Real lhs;
};

// Left-hand side of the joint measurability inequality
//   (F(2-B) + B(2-F))/2 + (xy - 4 a.b)^2 >= 1.
template <typename Real>
Real coexistence_lhs(const QubitEffect<Real>& qa, const QubitEffect<Real>& qb) {
  const Real fa = f2(qa), fb = f2(qb);
  const Real ba = b2(qa), bb = b2(qb);
  const Real f = fa * fa + fb * fb;
  const Real bias = ba * ba + bb * bb;
  const Real x = Real(2) * qa.a0() - Real(1);
  const Real y = Real(2) * qb.a0() - Real(1);
  const Real cross = x * y - Real(4) * qa.a().dot(qb.a());
  return Real(0.5) * (f * (Real(2) - bias) + bias * (Real(2) - f)) + cross * cross;
}

template <typename Real>
CoexistencePair<Real> make_coexistence_pair(const QubitEffect<Real>& qa, const QubitEffect<Real>& qb) {
  const Real fa = f2(qa), fb = f2(qb);
  const Real ba = b2(qa), bb = b2(qb);
  return {qa,
          qb,
          fa * fa + fb * fb,
          ba * ba + bb * bb,
          Real(2) * qa.a0() - Real(1),
          Real(2) * qb.a0() - Real(1),
          coexistence_lhs(qa, qb)};
}

enum class CoexistenceStatus { Coexistent, NotCoexistent, Marginal };

inline const char* to_string(CoexistenceStatus s) {
  switch (s) {
    case CoexistenceStatus::Coexistent: return "Coexistent";
    case CoexistenceStatus::NotCoexistent: return "NotCoexistent";
    default: return "Marginal";
  }
}

// Decision for one pair.  `witness` is a joint-observable corner G11 when one
// was constructed; it always satisfies the four positivity constraints within
// tol::feas.  `lhs` is always the raw inequality value.
template <typename Real = double>
struct CoexistenceVerdict {
  CoexistenceStatus status;
  Real lhs;
  std::optional<QubitEffect<Real>> witness;
};

namespace detail {

// Corner G11 = lambda*B for A within eps of the trivial effect lambda*1.  The
// four positivity constraints then hold up to the discarded Bloch part of A.
template <typename Real>
QubitEffect<Real> scaled_partner_witness(const QubitEffect<Real>& trivial_side,
                                         const QubitEffect<Real>& partner) {
  const Real lambda = trivial_side.a0();
  return QubitEffect<Real>(lambda * partner.a0(), (lambda * partner.a()).eval(),
                           static_cast<Real>(tol::feas));
}

// Corner G11 for a commuting pair (parallel or vanishing Bloch vectors):
// diagonalize along the common axis and take branchwise minima.
template <typename Real>
QubitEffect<Real> commuting_witness(const QubitEffect<Real>& qa, const QubitEffect<Real>& qb) {
  const Real ra = qa.radius();
  if (ra <= Real(0))
    return scaled_partner_witness(qa, qb);
  const Vector3<Real> axis = qa.a() / ra;
  const Real beta = qb.a().dot(axis);
  const Real g_plus = std::min(qa.a0() + ra, qb.a0() + beta);
  const Real g_minus = std::min(qa.a0() - ra, qb.a0() - beta);
  const Real g0 = (g_plus + g_minus) / Real(2);
  return QubitEffect<Real>(g0, (((g_plus - g_minus) / Real(2)) * axis).eval(),
                           static_cast<Real>(tol::feas));
}

}  // namespace detail

// Joint measurability decision.  Trivial and sharp inputs are settled by the
// classical facts directly (a trivial effect is compatible with everything; a
// nontrivial projection only with effects it commutes with); everything else
// goes through the inequality with a +-tol::marginal_band undecided zone
// around lhs = 1.
template <typename Real>
CoexistenceVerdict<Real> are_coexistent(const QubitEffect<Real>& qa, const QubitEffect<Real>& qb,
                                        Real band = static_cast<Real>(tol::marginal_band)) {
  const Real lhs = coexistence_lhs(qa, qb);
  const Real eps = static_cast<Real>(tol::member);

  const auto trivial = [eps](const QubitEffect<Real>& q) { return q.radius() <= eps; };
  const auto projection = [eps](const QubitEffect<Real>& q) {
    return std::abs(q.a0() - Real(0.5)) <= eps && std::abs(q.radius() - Real(0.5)) <= eps;
  };
  const Real cross = qa.a().cross(qb.a()).norm();
  const bool parallel = cross <= eps * std::max(Real(1), qa.radius() * qb.radius());

  if (trivial(qa))
    return {CoexistenceStatus::Coexistent, lhs, detail::scaled_partner_witness(qa, qb)};
  if (trivial(qb))
    return {CoexistenceStatus::Coexistent, lhs, detail::scaled_partner_witness(qb, qa)};
  if (projection(qa) || projection(qb)) {
    if (parallel)
      return {CoexistenceStatus::Coexistent, lhs, detail::commuting_witness(qa, qb)};
    return {CoexistenceStatus::NotCoexistent, lhs, std::nullopt};
  }
  if (lhs >= Real(1) + band)
    return {CoexistenceStatus::Coexistent, lhs, std::nullopt};
  if (lhs <= Real(1) - band)
    return {CoexistenceStatus::NotCoexistent, lhs, std::nullopt};
  return {CoexistenceStatus::Marginal, lhs, std::nullopt};
}

using QubitEffectd = QubitEffect<double>;
using CoexistenceVerdictd = CoexistenceVerdict<double>;

}  // namespace effects
