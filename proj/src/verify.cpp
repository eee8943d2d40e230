#include "verify.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <sstream>
#include <utility>

#include "effects/axioms.hpp"
#include "effects/core.hpp"
#include "effects/io.hpp"
#include "effects/measures.hpp"
#include "effects/oracle.hpp"
#include "effects/qubit.hpp"

namespace effects::verify {

namespace {

// Collects pass/fail over many samples, keeping only the first failure text.
class Tracker {
 public:
  explicit Tracker(std::string name) { check_.name = std::move(name); }

  template <typename DetailFn>
  void require(bool ok, DetailFn&& detail) {
    ++check_.checked;
    if (!ok && check_.pass) {
      check_.pass = false;
      check_.detail = detail();
    }
  }

  void close(SuiteResult& r) { r.checks.push_back(check_); }

 private:
  Check check_;
};

std::string eig_text(const Effectd& e) {
  std::ostringstream os;
  os << "eigs=[";
  for (Eigen::Index i = 0; i < e.eigenvalues().size(); ++i) {
    if (i) os << ", ";
    os << io::format_double(e.eigenvalues()(i));
  }
  os << "]";
  return os.str();
}

std::string pair_text(const QubitEffectd& qa, const QubitEffectd& qb) {
  std::ostringstream os;
  os << "A=(" << io::format_double(qa.a0()) << ", [" << io::format_double(qa.a()(0)) << ", "
     << io::format_double(qa.a()(1)) << ", " << io::format_double(qa.a()(2)) << "]) B=("
     << io::format_double(qb.a0()) << ", [" << io::format_double(qb.a()(0)) << ", "
     << io::format_double(qb.a()(1)) << ", " << io::format_double(qb.a()(2)) << "])";
  return os.str();
}

// Smallest of max_i |lambda_i - kappa| over kappa in [0,1] by ternary search;
// the objective is convex piecewise linear, so this is an independent route
// to the distance-to-trivial quantities.
std::pair<double, double> ternary_min_distance(const Effectd& e) {
  const auto radius = [&](double kappa) {
    return (e.eigenvalues().array() - kappa).abs().maxCoeff();
  };
  double lo = 0, hi = 1;
  for (int it = 0; it < 200; ++it) {
    const double third = (hi - lo) / 3;
    if (radius(lo + third) <= radius(hi - third))
      hi -= third;
    else
      lo += third;
  }
  const double kappa = (lo + hi) / 2;
  return {kappa, radius(kappa)};
}

}  // namespace

SuiteResult run_axiom_suite(std::size_t samples, std::uint64_t seed,
                            const std::vector<int>& dims) {
  SuiteResult r{"axioms", {}};
  for (const char* id : {"S0", "S1", "S2", "F5", "B0", "B3", "B4", "B5"}) {
    for (const AxiomVerdict& v : verify_axioms(id, samples, seed, dims)) {
      Check c;
      c.name = std::string(id) + "." + to_string(v.axiom);
      c.pass = v.holds;
      c.checked = v.checked;
      if (!v.holds && v.counterexample) {
        const AxiomCounterexample& ce = *v.counterexample;
        c.detail = ce.note + "; value=" + io::format_double(ce.value) +
                   (ce.partner ? ", partner=" + io::format_double(ce.partner_value) : "") +
                   " on " + eig_text(ce.effect);
      }
      r.checks.push_back(std::move(c));
    }
  }
  return r;
}

SuiteResult run_identity_suite(std::size_t samples, std::uint64_t seed,
                               const std::vector<int>& dims) {
  SuiteResult r{"identities", {}};

  Tracker product_identity("product_complement_entrywise");
  Tracker width_norms("width_equals_norm_sum");
  Tracker disp_explicit("dispersion_explicit_form");
  Tracker disp_norms("dispersion_norm_sum");
  Tracker product_window("product_operator_window");
  Tracker product_norm_low("product_norm_lower_bound");
  Tracker comp_product_norm("complement_product_norm");
  Tracker minimizer("trivial_distance_minimizer");
  Tracker quad_identity("quadratic_term_identity");
  Tracker quad_window("quadratic_term_window");
  Tracker sandwich("radicand_sandwich");
  Tracker budget("width_bias_budget");

  for (int d : dims) {
    oracle::Rng rng = oracle::seeded_rng(seed, 1000 + static_cast<std::uint64_t>(d));
    const ComplexMatrix<double> one = ComplexMatrix<double>::Identity(d, d);
    for (std::size_t i = 0; i < samples; ++i) {
      const Effectd e = oracle::random_effect(d, rng);
      const SpectralSummary<double> s = spectral_summary(e);
      const auto fail = [&](double lhs, double rhs) {
        return [&, lhs, rhs] {
          return "lhs=" + io::format_double(lhs) + " rhs=" + io::format_double(rhs) +
                 " on " + eig_text(e);
        };
      };

      // Product with the complement, once entrywise and once spectrally.
      const ComplexMatrix<double> prod = e.matrix() * (one - e.matrix());
      const ComplexMatrix<double> shifted =
          0.25 * one - (e.matrix() - 0.5 * one) * (e.matrix() - 0.5 * one);
      const double entry_gap = (prod - shifted).cwiseAbs().maxCoeff();
      product_identity.require(entry_gap <= 1e-12, fail(entry_gap, 0));

      Eigen::SelfAdjointEigenSolver<ComplexMatrix<double>> ps(
          ((prod + prod.adjoint()) / 2.0).eval());
      const double p_min = ps.eigenvalues().minCoeff();
      const double p_max = ps.eigenvalues().maxCoeff();
      const double comp_p_norm = 1.0 - p_min;  // largest eigenvalue of 1 - AA'

      const Effectd comp = complement(e);
      const double na = spectral_norm(e.eigenvalues());
      const double nc = spectral_norm(comp.eigenvalues());
      width_norms.require(std::abs(s.width - (na + nc - 1)) <= 1e-9, fail(s.width, na + nc - 1));

      const double corner_sq =
          std::max((na - 0.5) * (na - 0.5), (nc - 0.5) * (nc - 0.5));
      const double disp = dispersion(e);
      disp_explicit.require(std::abs(disp - (corner_sq - (0.25 - p_max))) <= 1e-9,
                            fail(disp, corner_sq - (0.25 - p_max)));
      disp_norms.require(std::abs(disp - (p_max + comp_p_norm - 1)) <= 1e-9,
                         fail(disp, p_max + comp_p_norm - 1));

      product_window.require(p_min >= -1e-9 && p_max <= 0.25 + 1e-9, fail(p_min, p_max));
      product_norm_low.require(p_max >= 0.25 - corner_sq - 1e-9, fail(p_max, 0.25 - corner_sq));
      comp_product_norm.require(std::abs(comp_p_norm - (0.75 + corner_sq)) <= 1e-9,
                                fail(comp_p_norm, 0.75 + corner_sq));

      const auto [kappa, dist] = ternary_min_distance(e);
      const TrivialDistance<double> td = min_distance_to_trivial(e);
      minimizer.require(std::abs(2 * dist - s.width) <= 1e-8 &&
                            std::abs(dist - td.distance) <= 1e-8 &&
                            std::abs(kappa - td.kappa_star) <= 1e-7,
                        fail(2 * dist, s.width));

      const QuadraticTerms<double> t = quadratic_terms(e);
      const RealVector<double> pspec = product_spectrum(e);
      const double pmid = (pspec.maxCoeff() + pspec.minCoeff()) / 2;
      quad_identity.require(std::abs(t.y - (t.x - 2 * pmid)) <= 1e-9,
                            fail(t.y, t.x - 2 * pmid));
      quad_window.require(t.y >= -1e-9 && t.x * t.x - t.y >= -1e-9, fail(t.y, t.x * t.x));

      const double f3 = unsharpness_f3(e);
      const double f4 = unsharpness_f4(e);
      const double f5 = unsharpness_f5(e);
      sandwich.require(f3 <= f5 + 1e-9 && f5 <= f4 + 1e-9, fail(f3, f4));

      budget.require(s.width + std::abs(bias_0(e)) <= 1 + 1e-9,
                     fail(s.width + std::abs(bias_0(e)), 1));
    }
  }

  product_identity.close(r);
  width_norms.close(r);
  disp_explicit.close(r);
  disp_norms.close(r);
  product_window.close(r);
  product_norm_low.close(r);
  comp_product_norm.close(r);
  minimizer.close(r);
  quad_identity.close(r);
  quad_window.close(r);
  sandwich.close(r);
  budget.close(r);

  // Dimension-2 closed forms against the general spectral routes.
  Tracker q_sb("qubit_sharpness_b_closed_form");
  Tracker q_s2("qubit_sharpness_2_closed_form");
  Tracker q_b3("qubit_bias_3_closed_form");
  Tracker q_b0("qubit_bias_0_closed_form");
  Tracker q_fb("qubit_factor_product");
  Tracker q_pn("qubit_product_norm");
  Tracker q_cpn("qubit_complement_product_norm");

  oracle::Rng rng = oracle::seeded_rng(seed, 2);
  const ComplexMatrix<double> one2 = ComplexMatrix<double>::Identity(2, 2);
  for (std::size_t i = 0; i < samples; ++i) {
    const QubitEffectd q = oracle::random_qubit_effect(rng);
    const Effectd e = validate_effect(matrix_from_bloch(q));
    const auto fail = [&](double lhs, double rhs) {
      return [&, lhs, rhs] {
        return "lhs=" + io::format_double(lhs) + " rhs=" + io::format_double(rhs) + " on " +
               pair_text(q, q);
      };
    };

    q_sb.require(std::abs(sharpness_1(e) - sharpness_b2(q)) <= 1e-9,
                 fail(sharpness_1(e), sharpness_b2(q)));
    q_s2.require(std::abs(sharpness_2(e) - sharpness_c2(q)) <= 1e-9,
                 fail(sharpness_2(e), sharpness_c2(q)));
    q_b3.require(std::abs(bias_3(e) - bias_2d(q)) <= 1e-9, fail(bias_3(e), bias_2d(q)));
    q_b0.require(std::abs(bias_0(e) - (2 * q.a0() - 1)) <= 1e-9,
                 fail(bias_0(e), 2 * q.a0() - 1));
    q_fb.require(std::abs(f2(q) * b2(q) - (2 * q.a0() - 1)) <= 1e-9,
                 fail(f2(q) * b2(q), 2 * q.a0() - 1));

    const ComplexMatrix<double> prod = e.matrix() * (one2 - e.matrix());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix<double>> ps(
        ((prod + prod.adjoint()) / 2.0).eval());
    const double p_max = ps.eigenvalues().maxCoeff();
    const double p_min = ps.eigenvalues().minCoeff();
    const double na = q.a0() + q.radius();
    const double nc = 1 - q.a0() + q.radius();
    const double lo_sq = std::min((na - 0.5) * (na - 0.5), (nc - 0.5) * (nc - 0.5));
    const double hi_sq = std::max((na - 0.5) * (na - 0.5), (nc - 0.5) * (nc - 0.5));
    q_pn.require(std::abs(p_max - (0.25 - lo_sq)) <= 1e-9, fail(p_max, 0.25 - lo_sq));
    q_cpn.require(std::abs((1 - p_min) - (0.75 + hi_sq)) <= 1e-9,
                  fail(1 - p_min, 0.75 + hi_sq));
  }

  q_sb.close(r);
  q_s2.close(r);
  q_b3.close(r);
  q_b0.close(r);
  q_fb.close(r);
  q_pn.close(r);
  q_cpn.close(r);
  return r;
}

SuiteResult run_counterexample_suite() {
  SuiteResult r{"counterexamples", {}};
  const Effectd three = oracle::effect_with_spectrum<double>({0.0, 0.5, 1.0});
  const Effectd biased = oracle::effect_with_spectrum<double>({0.2, 0.5, 0.8});
  const Effectd symmetric = oracle::effect_with_spectrum<double>({0.2, 0.8});

  const auto add = [&](const char* name, bool ok, double got, double want) {
    Check c;
    c.name = name;
    c.pass = ok;
    c.checked = 1;
    if (!ok)
      c.detail = "got " + io::format_double(got) + ", wanted " + io::format_double(want);
    r.checks.push_back(std::move(c));
  };

  add("three_point_is_not_projection",
      !is_nontrivial_projection(three) && !is_trivial(three), 0, 0);
  add("Sa_saturates_on_three_point_spectrum", std::abs(sharpness_a(three) - 1) <= 1e-9,
      sharpness_a(three), 1);
  add("Sb_saturates_on_three_point_spectrum", std::abs(sharpness_b(three) - 1) <= 1e-9,
      sharpness_b(three), 1);
  add("F3_vanishes_on_three_point_spectrum", std::abs(unsharpness_f3(three)) <= 1e-9,
      unsharpness_f3(three), 0);
  add("F4_saturates_on_three_point_spectrum", std::abs(unsharpness_f4(three) - 1) <= 1e-9,
      unsharpness_f4(three), 1);

  const double disc = failed_b2_discriminant(biased);
  add("b2_discriminant_goes_negative", std::abs(disc - (-0.09)) <= 1e-9, disc, -0.09);
  const double disc2 = failed_b2_discriminant(symmetric);
  add("b2_discriminant_vanishes_on_symmetric_pair", std::abs(disc2) <= 1e-12, disc2, 0);

  return r;
}

SuiteResult run_oracle_suite(std::size_t pairs, std::uint64_t seed, int resolution,
                             int rounds) {
  SuiteResult r{"oracle", {}};
  Tracker agree("criterion_search_agreement");
  Tracker witness("feasible_witness_margins");
  Tracker sharp("sharp_nonparallel_rejection");

  oracle::Rng rng = oracle::seeded_rng(seed, 101);
  for (std::size_t i = 0; i < pairs; ++i) {
    const QubitEffectd qa = oracle::random_qubit_effect(rng);
    const QubitEffectd qb = oracle::random_qubit_effect(rng);
    const oracle::FeasibilityResult<double> res =
        oracle::joint_feasible_bruteforce(qa, qb, resolution, rounds);
    const double lhs = coexistence_lhs(qa, qb);

    if (res.feasible) {
      const bool has = res.witness.has_value();
      const double margin =
          has ? oracle::corner_margin(qa, qb, res.witness->a0(), res.witness->a())
              : -1.0;
      witness.require(has && margin >= -tol::feas, [&] {
        return "margin=" + io::format_double(margin) + " for " + pair_text(qa, qb);
      });
    }
    if (std::abs(lhs - 1) > tol::agreement_band) {
      agree.require(res.feasible == (lhs > 1), [&] {
        return "lhs=" + io::format_double(lhs) +
               " search margin=" + io::format_double(res.margin) + " for " +
               pair_text(qa, qb);
      });
    }
  }
  agree.close(r);
  witness.close(r);

  // A sharp nontrivial effect coexists only with effects along its own axis.
  oracle::Rng rng2 = oracle::seeded_rng(seed, 202);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::size_t made = 0;
  while (made < 100) {
    Vector3<double> dir;
    dir << normal(rng2), normal(rng2), normal(rng2);
    if (dir.norm() == 0) continue;
    dir /= dir.norm();
    const QubitEffectd proj(0.5, (0.5 * dir).eval());
    const QubitEffectd other = oracle::random_qubit_effect(rng2);
    if (other.radius() < 1e-3) continue;
    const double sine = dir.cross((other.a() / other.radius()).eval()).norm();
    if (sine < 1e-3) continue;
    const CoexistenceVerdictd v = are_coexistent(proj, other);
    sharp.require(v.status == CoexistenceStatus::NotCoexistent, [&] {
      return std::string("verdict=") + to_string(v.status) + " lhs=" +
             io::format_double(v.lhs) + " for " + pair_text(proj, other);
    });
    ++made;
  }
  sharp.close(r);
  return r;
}

}  // namespace effects::verify
