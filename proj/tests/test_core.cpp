#include "doctest.h"

#include <complex>
#include <vector>

#include "effects/core.hpp"
#include "effects/oracle.hpp"

using namespace effects;

namespace {

Effectd diag_effect(const std::vector<double>& values) {
  return oracle::effect_with_spectrum<double>(values);
}

ComplexMatrix<double> herm2x2() {
  ComplexMatrix<double> m(2, 2);
  m(0, 0) = {0.5, 0.0};
  m(0, 1) = {0.2, -0.1};
  m(1, 0) = {0.2, 0.1};
  m(1, 1) = {0.4, 0.0};
  return m;
}

}  // namespace

TEST_CASE("operator validation rejects malformed input") {
  ComplexMatrix<double> rect(2, 3);
  rect.setZero();
  CHECK_THROWS_AS(HermitianOperatord{rect}, DimensionError);

  ComplexMatrix<double> big(17, 17);
  big.setZero();
  CHECK_THROWS_AS(HermitianOperatord{big}, DimensionError);

  ComplexMatrix<double> skew(2, 2);
  skew.setZero();
  skew(0, 1) = {0.3, 0.0};
  CHECK_THROWS_AS(HermitianOperatord{skew}, NotHermitianError);
}

TEST_CASE("effect validation enforces the [0,1] spectrum window") {
  CHECK_THROWS_AS(diag_effect({-0.2, 0.5}), SpectrumError);
  CHECK_THROWS_AS(diag_effect({0.5, 1.2}), SpectrumError);

  // A hair below zero is inside the default slack and gets clamped.
  const Effectd e = diag_effect({-1e-12, 1.0});
  CHECK(e.eigenvalues()(0) >= 0.0);
  CHECK(e.eigenvalues()(0) < 1e-11);
  CHECK(e.eigenvalues()(1) == doctest::Approx(1.0));
  CHECK(e.eigenvalues()(1) <= 1.0);
}

TEST_CASE("decomposition reconstructs the operator") {
  const Effectd e = validate_effect<double>(herm2x2());
  const ComplexMatrix<double> rebuilt =
      e.eigenvectors() *
      e.eigenvalues().cast<std::complex<double>>().asDiagonal() *
      e.eigenvectors().adjoint();
  CHECK((rebuilt - e.matrix()).cwiseAbs().maxCoeff() < 1e-12);
  const ComplexMatrix<double> gram = e.eigenvectors().adjoint() * e.eigenvectors();
  CHECK((gram - ComplexMatrix<double>::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("spectral summary and ordering") {
  const Effectd e = diag_effect({0.9, 0.2});
  const SpectralSummary<double> s = spectral_summary(e);
  CHECK(s.min == doctest::Approx(0.2));
  CHECK(s.max == doctest::Approx(0.9));
  CHECK(s.width == doctest::Approx(0.7));
  CHECK(s.midpoint == doctest::Approx(0.55));
  CHECK(e.eigenvalues()(0) <= e.eigenvalues()(1));
}

TEST_CASE("complement flips the spectrum") {
  const Effectd e = diag_effect({0.2, 0.9});
  const Effectd c = complement(e);
  CHECK(c.eigenvalues()(0) == doctest::Approx(0.1));
  CHECK(c.eigenvalues()(1) == doctest::Approx(0.8));

  // Twice is the identity map up to one rounding step per entry.
  const Effectd e2 = validate_effect<double>(herm2x2());
  const Effectd back = complement(complement(e2));
  CHECK((back.matrix() - e2.matrix()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("product spectrum and dispersion") {
  SUBCASE("symmetric two-point spectrum has zero dispersion") {
    const Effectd e = diag_effect({0.25, 0.75});
    const RealVector<double> p = product_spectrum(e);
    CHECK(p(0) == doctest::Approx(0.1875));
    CHECK(p(1) == doctest::Approx(0.1875));
    CHECK(dispersion(e) == doctest::Approx(0.0));
  }
  SUBCASE("corner-plus-interior spectrum has dispersion 1/4") {
    CHECK(dispersion(diag_effect({0.0, 0.5, 1.0})) == doctest::Approx(0.25));
  }
}

TEST_CASE("distance to the trivial line") {
  const TrivialDistance<double> td = min_distance_to_trivial(diag_effect({0.2, 0.9}));
  CHECK(td.kappa_star == doctest::Approx(0.55));
  CHECK(td.distance == doctest::Approx(0.35));
}

TEST_CASE("norm characterization matches the direct spectrum test") {
  RealVector<double> good(2);
  good << 0.1, 0.8;
  CHECK(satisfies_effect_norm_bounds(good, 1e-9));

  RealVector<double> bad(2);
  bad << -0.1, 0.5;
  CHECK_FALSE(satisfies_effect_norm_bounds(bad, 1e-9));
}

TEST_CASE("states and the sequential yes-no probability") {
  ComplexMatrix<double> half = 0.5 * ComplexMatrix<double>::Identity(2, 2);
  const Stated t = validate_state<double>(half);
  const double p = luders_sequential_prob(t, diag_effect({0.25, 0.75}));
  CHECK(p == doctest::Approx(0.1875));

  SUBCASE("trace away from 1 is rejected") {
    CHECK_THROWS_AS(validate_state<double>((0.45 * ComplexMatrix<double>::Identity(2, 2)).eval()),
                    SpectrumError);
  }
  SUBCASE("negative eigenvalue is rejected") {
    ComplexMatrix<double> neg(2, 2);
    neg.setZero();
    neg(0, 0) = {1.2, 0.0};
    neg(1, 1) = {-0.2, 0.0};
    CHECK_THROWS_AS(validate_state<double>(neg), SpectrumError);
  }
  SUBCASE("dimension mismatch is rejected") {
    CHECK_THROWS_AS(luders_sequential_prob(t, diag_effect({0.1, 0.2, 0.3})), DimensionError);
  }
}

TEST_CASE("set classifiers") {
  CHECK(is_trivial(diag_effect({0.3, 0.3})));
  CHECK_FALSE(is_trivial(diag_effect({0.3, 0.4})));

  CHECK(is_nontrivial_projection(diag_effect({0.0, 1.0})));
  CHECK_FALSE(is_nontrivial_projection(diag_effect({1.0, 1.0})));  // identity
  CHECK_FALSE(is_nontrivial_projection(diag_effect({0.0, 0.0})));  // zero
  CHECK_FALSE(is_nontrivial_projection(diag_effect({0.0, 0.5, 1.0})));

  CHECK(is_identity_effect(diag_effect({1.0, 1.0})));
  CHECK(is_zero_effect(diag_effect({0.0, 0.0})));
  CHECK(is_unbiased(diag_effect({0.25, 0.75})));
  CHECK_FALSE(is_unbiased(diag_effect({0.2, 0.9})));
}
