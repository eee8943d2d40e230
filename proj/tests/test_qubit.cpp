#include "doctest.h"

#include <cmath>

#include "effects/oracle.hpp"
#include "effects/qubit.hpp"

using namespace effects;

TEST_CASE("bloch form validation and round trip") {
  CHECK_THROWS_AS(QubitEffectd(0.3, Vector3<double>(0.4, 0, 0)), SpectrumError);
  CHECK_NOTHROW(QubitEffectd(0.5, Vector3<double>(0.5, 0, 0)));

  const QubitEffectd q(0.6, Vector3<double>(0.1, -0.15, 0.05));
  const QubitEffectd back = bloch_from_matrix(matrix_from_bloch(q));
  CHECK(back.a0() == doctest::Approx(q.a0()).epsilon(1e-15));
  CHECK((back.a() - q.a()).norm() < 1e-15);

  CHECK_THROWS_AS(bloch_from_matrix(ComplexMatrix<double>::Zero(3, 3).eval()), DimensionError);
  ComplexMatrix<double> skew = ComplexMatrix<double>::Zero(2, 2);
  skew(0, 1) = {0.2, 0.0};
  CHECK_THROWS_AS(bloch_from_matrix(skew), NotHermitianError);
}

TEST_CASE("complement negates the bloch vector") {
  const QubitEffectd q(0.6, Vector3<double>(0, 0, 0.2));
  const QubitEffectd c = q.complement();
  CHECK(c.a0() == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(c.a()(2) == doctest::Approx(-0.2).epsilon(1e-15));
  CHECK(f2(c) == doctest::Approx(f2(q)).epsilon(1e-12));
  CHECK(b2(c) == doctest::Approx(-b2(q)).epsilon(1e-12));
}

TEST_CASE("joint measurability inequality on unbiased orthogonal pairs") {
  const auto pair_at = [](double r) {
    return std::pair<QubitEffectd, QubitEffectd>{
        QubitEffectd(0.5, Vector3<double>(r, 0, 0)),
        QubitEffectd(0.5, Vector3<double>(0, r, 0))};
  };

  SUBCASE("lhs follows the closed form 2 - 8 r^2") {
    for (double r : {0.1, 0.25, 0.36, 0.45}) {
      const auto [qa, qb] = pair_at(r);
      CHECK(coexistence_lhs(qa, qb) == doctest::Approx(2 - 8 * r * r).epsilon(1e-12));
      CHECK(coexistence_lhs(qa, qb) == doctest::Approx(coexistence_lhs(qb, qa)).epsilon(1e-15));
    }
  }
  SUBCASE("verdicts on the three regimes") {
    const auto [ca, cb] = pair_at(0.25);
    CHECK(are_coexistent(ca, cb).status == CoexistenceStatus::Coexistent);
    CHECK(are_coexistent(ca, cb).lhs == doctest::Approx(1.5).epsilon(1e-12));

    const auto [na, nb] = pair_at(0.36);
    CHECK(are_coexistent(na, nb).status == CoexistenceStatus::NotCoexistent);
    CHECK(are_coexistent(na, nb).lhs == doctest::Approx(0.9632).epsilon(1e-12));

    const auto [ma, mb] = pair_at(1.0 / (2.0 * std::sqrt(2.0)));
    CHECK(are_coexistent(ma, mb).status == CoexistenceStatus::Marginal);
  }
}

TEST_CASE("cached pair abbreviations agree with the direct evaluation") {
  const QubitEffectd qa(0.55, Vector3<double>(0.1, 0.2, 0.0));
  const QubitEffectd qb(0.45, Vector3<double>(0.0, 0.15, -0.2));
  const CoexistencePair<double> p = make_coexistence_pair(qa, qb);
  CHECK(p.f == doctest::Approx(f2(qa) * f2(qa) + f2(qb) * f2(qb)).epsilon(1e-14));
  CHECK(p.bias == doctest::Approx(b2(qa) * b2(qa) + b2(qb) * b2(qb)).epsilon(1e-14));
  CHECK(p.x == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(p.y == doctest::Approx(-0.1).epsilon(1e-12));
  CHECK(p.lhs == doctest::Approx(coexistence_lhs(qa, qb)).epsilon(1e-15));
}

TEST_CASE("a trivial effect coexists with anything, with a working witness") {
  const QubitEffectd partner(0.5, Vector3<double>(0, 0, 0.4));

  SUBCASE("exactly trivial") {
    const QubitEffectd triv(0.3, Vector3<double>(0, 0, 0));
    const CoexistenceVerdictd v = are_coexistent(triv, partner);
    CHECK(v.status == CoexistenceStatus::Coexistent);
    REQUIRE(v.witness.has_value());
    CHECK(oracle::corner_margin(triv, partner, v.witness->a0(), v.witness->a()) >= -tol::feas);
  }
  SUBCASE("trivial up to classifier slack, off the partner axis") {
    // Regression guard: the witness must not be built along the tiny residual
    // Bloch direction, which points nowhere near the partner's axis.
    const QubitEffectd nearly(0.5, Vector3<double>(1e-9, 0, 0));
    const CoexistenceVerdictd v = are_coexistent(nearly, partner);
    CHECK(v.status == CoexistenceStatus::Coexistent);
    REQUIRE(v.witness.has_value());
    CHECK(oracle::corner_margin(nearly, partner, v.witness->a0(), v.witness->a()) >= -tol::feas);
  }
  SUBCASE("trivial on the right-hand side") {
    const QubitEffectd triv(0.7, Vector3<double>(0, 0, 0));
    const CoexistenceVerdictd v = are_coexistent(partner, triv);
    CHECK(v.status == CoexistenceStatus::Coexistent);
    REQUIRE(v.witness.has_value());
    CHECK(oracle::corner_margin(partner, triv, v.witness->a0(), v.witness->a()) >= -tol::feas);
  }
}

TEST_CASE("a sharp effect coexists exactly with its own axis") {
  const QubitEffectd proj(0.5, Vector3<double>(0, 0, 0.5));

  SUBCASE("parallel partner") {
    const QubitEffectd along(0.5, Vector3<double>(0, 0, 0.3));
    const CoexistenceVerdictd v = are_coexistent(proj, along);
    CHECK(v.status == CoexistenceStatus::Coexistent);
    REQUIRE(v.witness.has_value());
    CHECK(oracle::corner_margin(proj, along, v.witness->a0(), v.witness->a()) >= -tol::feas);
  }
  SUBCASE("antiparallel partner counts as commuting too") {
    const QubitEffectd against(0.6, Vector3<double>(0, 0, -0.25));
    const CoexistenceVerdictd v = are_coexistent(proj, against);
    CHECK(v.status == CoexistenceStatus::Coexistent);
    REQUIRE(v.witness.has_value());
    CHECK(oracle::corner_margin(proj, against, v.witness->a0(), v.witness->a()) >= -tol::feas);
  }
  SUBCASE("tilted partner is rejected regardless of the inequality") {
    const QubitEffectd tilted(0.5, Vector3<double>(0.3, 0, 0));
    const CoexistenceVerdictd v = are_coexistent(proj, tilted);
    CHECK(v.status == CoexistenceStatus::NotCoexistent);
    CHECK_FALSE(v.witness.has_value());
  }
  SUBCASE("even at the exact inequality boundary") {
    // Parallel projection-partner pairs sit at lhs = 1; the classical facts,
    // not the band, must decide them.
    const QubitEffectd along(0.5, Vector3<double>(0, 0, 0.3));
    CHECK(coexistence_lhs(proj, along) == doctest::Approx(1.0).epsilon(1e-12));
  }
}
