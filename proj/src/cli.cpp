#include "cli.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "effects/core.hpp"
#include "effects/io.hpp"
#include "effects/measures.hpp"
#include "effects/oracle.hpp"
#include "effects/qubit.hpp"
#include "effects/types.hpp"
#include "verify.hpp"

namespace effects::cli {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Degree trigonometry, exact at the quarter turns so that documented grid
// points like angle=90 produce exactly orthogonal Bloch vectors.
double cos_deg(double deg) {
  double m = std::fmod(deg, 360.0);
  if (m < 0) m += 360.0;
  if (m == 0.0) return 1.0;
  if (m == 90.0 || m == 270.0) return 0.0;
  if (m == 180.0) return -1.0;
  return std::cos(deg * kPi / 180.0);
}

double sin_deg(double deg) { return cos_deg(deg - 90.0); }

double parse_number(const std::string& text) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ParseError("'" + text + "' is not a number");
  }
  if (used != text.size()) throw ParseError("'" + text + "' is not a number");
  return v;
}

// A sweep parameter: a plain number or an inclusive lo:hi:step range.
struct Range {
  double lo = 0;
  double hi = 0;
  double step = 0;  // 0 means a single value
};

Range parse_range(const std::string& text) {
  const std::size_t c1 = text.find(':');
  if (c1 == std::string::npos) {
    const double v = parse_number(text);
    return {v, v, 0};
  }
  const std::size_t c2 = text.find(':', c1 + 1);
  if (c2 == std::string::npos || text.find(':', c2 + 1) != std::string::npos)
    throw ParseError("range '" + text + "' must look like lo:hi:step");
  Range r;
  r.lo = parse_number(text.substr(0, c1));
  r.hi = parse_number(text.substr(c1 + 1, c2 - c1 - 1));
  r.step = parse_number(text.substr(c2 + 1));
  if (!(r.step > 0)) throw ParseError("range step must be positive in '" + text + "'");
  if (r.hi < r.lo) throw ParseError("range end below start in '" + text + "'");
  return r;
}

std::vector<double> expand(const Range& r) {
  if (r.step == 0) return {r.lo};
  std::vector<double> out;
  const long count = static_cast<long>(std::floor((r.hi - r.lo) / r.step + 1e-9));
  out.reserve(static_cast<std::size_t>(count) + 1);
  for (long k = 0; k <= count; ++k) out.push_back(r.lo + static_cast<double>(k) * r.step);
  return out;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    if (ch == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::vector<int> parse_dims(const std::string& text) {
  std::vector<int> dims;
  for (const std::string& part : split_list(text)) {
    const double v = parse_number(part);
    const int d = static_cast<int>(v);
    if (v != d || d < 1) throw ParseError("bad dimension '" + part + "'");
    dims.push_back(d);
  }
  if (dims.empty()) throw ParseError("empty dimension list");
  return dims;
}

// ---- measure ------------------------------------------------------------

int cmd_measure(const std::string& file, const std::string& measures,
                const std::string& format, double tolv, std::ostream& out) {
  const Effectd e = validate_effect(io::load_operator(file), tolv);

  std::vector<const MeasureInfo*> chosen;
  if (measures.empty()) {
    for (const MeasureInfo& info : measure_catalogue()) {
      if (info.kind == MeasureKind::BiasDiagnostic) continue;
      if (info.qubit_only && e.dim() != 2) continue;
      chosen.push_back(&info);
    }
  } else {
    for (const std::string& id : split_list(measures)) chosen.push_back(&find_measure(id));
  }

  if (format == "json") {
    io::json rows = io::json::array();
    for (const MeasureInfo* info : chosen)
      rows.push_back({{"measure", info->id}, {"value", info->eval(e)}});
    io::json j{{"schema", 1}, {"command", "measure"}, {"dim", e.dim()}, {"rows", rows}};
    out << j.dump(2) << "\n";
  } else {
    out << "measure,dim,value\n";
    for (const MeasureInfo* info : chosen)
      out << io::join_csv({info->id, std::to_string(e.dim()), io::format_double(info->eval(e))})
          << "\n";
  }
  return 0;
}

// ---- spectrum -----------------------------------------------------------

int cmd_spectrum(const std::string& file, const std::string& format, double tolv,
                 std::ostream& out) {
  const Effectd e = validate_effect(io::load_operator(file), tolv);
  const SpectralSummary<double> s = spectral_summary(e);
  const RealVector<double> p = product_spectrum(e);
  const TrivialDistance<double> td = min_distance_to_trivial(e);

  if (format != "json") {
    out << "quantity,index,value\n";
    for (Eigen::Index i = 0; i < e.eigenvalues().size(); ++i)
      out << io::join_csv({"eigenvalue", std::to_string(i),
                           io::format_double(e.eigenvalues()(i))})
          << "\n";
    const auto scalar = [&](const char* name, double v) {
      out << io::join_csv({name, "", io::format_double(v)}) << "\n";
    };
    scalar("min", s.min);
    scalar("max", s.max);
    scalar("width", s.width);
    scalar("midpoint", s.midpoint);
    scalar("dispersion", dispersion(e));
    scalar("product_norm", p.maxCoeff());
    scalar("complement_product_norm", 1 - p.minCoeff());
    scalar("kappa", td.kappa_star);
    scalar("distance", td.distance);
    scalar("trivial", is_trivial(e) ? 1 : 0);
    scalar("nontrivial_projection", is_nontrivial_projection(e) ? 1 : 0);
    scalar("unbiased", is_unbiased(e) ? 1 : 0);
  } else {
    io::json eigs = io::json::array();
    for (Eigen::Index i = 0; i < e.eigenvalues().size(); ++i)
      eigs.push_back(e.eigenvalues()(i));
    io::json j{{"schema", 1},
               {"command", "spectrum"},
               {"dim", e.dim()},
               {"eigenvalues", eigs},
               {"summary",
                {{"min", s.min}, {"max", s.max}, {"width", s.width}, {"midpoint", s.midpoint}}},
               {"dispersion", dispersion(e)},
               {"product_norm", p.maxCoeff()},
               {"complement_product_norm", 1 - p.minCoeff()},
               {"trivial_distance", {{"kappa", td.kappa_star}, {"distance", td.distance}}},
               {"classification",
                {{"trivial", is_trivial(e)},
                 {"nontrivial_projection", is_nontrivial_projection(e)},
                 {"unbiased", is_unbiased(e)}}}};
    out << j.dump(2) << "\n";
  }
  return 0;
}

// ---- coexist ------------------------------------------------------------

int cmd_coexist(const std::string& file, const std::string& format, bool with_oracle,
                int resolution, int rounds, std::ostream& out) {
  const auto [qa, qb] = io::load_pair(file);
  const CoexistenceVerdictd v = are_coexistent(qa, qb);

  std::optional<oracle::FeasibilityResult<double>> search;
  if (with_oracle) search = oracle::joint_feasible_bruteforce(qa, qb, resolution, rounds);

  if (format != "json") {
    if (search) {
      out << "lhs,verdict,search_feasible,search_margin\n";
      out << io::join_csv({io::format_double(v.lhs), to_string(v.status),
                           search->feasible ? "true" : "false",
                           io::format_double(search->margin)})
          << "\n";
    } else {
      out << "lhs,verdict\n";
      out << io::join_csv({io::format_double(v.lhs), to_string(v.status)}) << "\n";
    }
  } else {
    io::json j{{"schema", 1},
               {"command", "coexist"},
               {"lhs", v.lhs},
               {"verdict", to_string(v.status)},
               {"witness", v.witness ? io::qubit_to_json(*v.witness) : io::json()}};
    if (search) {
      j["search"] = {{"feasible", search->feasible},
                     {"margin", search->margin},
                     {"witness",
                      search->witness ? io::qubit_to_json(*search->witness) : io::json()}};
    }
    out << j.dump(2) << "\n";
  }

  switch (v.status) {
    case CoexistenceStatus::Coexistent: return 0;
    case CoexistenceStatus::NotCoexistent: return 1;
    default: return 3;
  }
}

// ---- scan ---------------------------------------------------------------

int cmd_scan(const std::string& a0_text, const std::string& b0_text,
             const std::string& angle_text, const std::string& ra_text,
             const std::string& rb_text, const std::string& format, std::ostream& out) {
  const std::vector<double> a0s = expand(parse_range(a0_text));
  const std::vector<double> b0s = expand(parse_range(b0_text));
  const std::vector<double> angles = expand(parse_range(angle_text));
  const std::vector<double> ras = expand(parse_range(ra_text));
  const bool mirror = rb_text == "ra";
  const std::vector<double> rbs = mirror ? std::vector<double>{} : expand(parse_range(rb_text));

  io::json rows = io::json::array();
  const bool as_json = format == "json";
  if (!as_json) out << "a0,b0,angle_deg,ra,rb,lhs,verdict\n";

  for (double a0 : a0s) {
    for (double b0 : b0s) {
      for (double angle : angles) {
        const double ca = cos_deg(angle), sa = sin_deg(angle);
        for (double ra : ras) {
          const std::vector<double> mirror_cell = {ra};
          for (double rb : mirror ? mirror_cell : rbs) {
            const QubitEffectd qa(a0, Vector3<double>(ra, 0, 0));
            const QubitEffectd qb(b0, Vector3<double>(rb * ca, rb * sa, 0));
            const CoexistenceVerdictd v = are_coexistent(qa, qb);
            if (as_json) {
              rows.push_back({{"a0", a0},
                              {"b0", b0},
                              {"angle_deg", angle},
                              {"ra", ra},
                              {"rb", rb},
                              {"lhs", v.lhs},
                              {"verdict", to_string(v.status)}});
            } else {
              out << io::join_csv({io::format_double(a0), io::format_double(b0),
                                   io::format_double(angle), io::format_double(ra),
                                   io::format_double(rb), io::format_double(v.lhs),
                                   to_string(v.status)})
                  << "\n";
            }
          }
        }
      }
    }
  }
  if (as_json) {
    io::json j{{"schema", 1}, {"command", "scan"}, {"rows", rows}};
    out << j.dump(2) << "\n";
  }
  return 0;
}

// ---- verify -------------------------------------------------------------

int cmd_verify(const std::string& suite, std::size_t samples, std::uint64_t seed,
               const std::string& dims_text, int resolution, int rounds,
               const std::string& format, std::ostream& out) {
  const std::vector<int> dims = parse_dims(dims_text);

  verify::SuiteResult result;
  if (suite == "axioms") {
    result = verify::run_axiom_suite(samples, seed, dims);
  } else if (suite == "identities") {
    result = verify::run_identity_suite(samples, seed, dims);
  } else if (suite == "counterexamples") {
    result = verify::run_counterexample_suite();
  } else if (suite == "oracle") {
    result = verify::run_oracle_suite(samples, seed, resolution, rounds);
  } else {
    throw ParseError("unknown suite '" + suite +
                     "' (expected axioms, identities, counterexamples, or oracle)");
  }

  if (format == "json") {
    io::json checks = io::json::array();
    for (const verify::Check& c : result.checks)
      checks.push_back(
          {{"name", c.name}, {"pass", c.pass}, {"checked", c.checked}, {"detail", c.detail}});
    io::json j{{"schema", 1},
               {"command", "verify"},
               {"suite", result.suite},
               {"all_pass", result.all_pass()},
               {"checks", checks}};
    out << j.dump(2) << "\n";
  } else if (format == "csv") {
    out << "suite,check,pass,checked\n";
    for (const verify::Check& c : result.checks)
      out << io::join_csv({result.suite, c.name, c.pass ? "true" : "false",
                           std::to_string(c.checked)})
          << "\n";
  } else {
    std::size_t passed = 0;
    for (const verify::Check& c : result.checks) {
      passed += c.pass ? 1 : 0;
      out << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << " (" << c.checked << " checks)";
      if (!c.pass && !c.detail.empty()) out << ": " << c.detail;
      out << "\n";
    }
    out << result.suite << ": " << passed << "/" << result.checks.size()
        << " checks passed\n";
  }
  return result.all_pass() ? 0 : 1;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"sharpness, bias, and joint measurability of quantum effects"};
  app.require_subcommand(1);

  std::string out_path;
  std::string format;
  double tolv = tol::eig;
  std::uint64_t seed = 0;
  std::size_t samples = 10000;
  bool with_oracle = false;
  int resolution = 21;
  int rounds = 4;

  app.add_option("--out", out_path, "write output to this file instead of stdout");
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--tol", tolv, "effect validation slack")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", seed, "seed for the randomized suites (default 0)");
  app.add_option("--samples", samples, "sample count for the randomized suites");
  app.add_flag("--oracle", with_oracle, "append the independent grid search to coexist output");
  app.add_option("--resolution", resolution, "grid points per axis for the search")
      ->check(CLI::Range(2, 201));
  app.add_option("--rounds", rounds, "refinement rounds for the search")
      ->check(CLI::Range(0, 12));

  std::string op_file, pair_file, measures, suite;
  std::string a0_text = "0.5", b0_text = "0.5", angle_text = "90";
  std::string ra_text = "0:0.5:0.01", rb_text = "ra";

  CLI::App* c_measure = app.add_subcommand("measure", "evaluate measures on an operator file");
  c_measure->add_option("file", op_file, "operator JSON file")->required();
  c_measure->add_option("--measures", measures, "comma-separated measure ids (default: all applicable)");

  CLI::App* c_spectrum = app.add_subcommand("spectrum", "validate an operator and report spectral data");
  c_spectrum->add_option("file", op_file, "operator JSON file")->required();

  CLI::App* c_coexist = app.add_subcommand("coexist", "decide joint measurability of a qubit pair");
  c_coexist->add_option("file", pair_file, "pair JSON file with objects A and B")->required();

  CLI::App* c_scan = app.add_subcommand("scan", "sweep Bloch parameters and report the verdict per cell");
  c_scan->add_option("--a0", a0_text, "first height: value or lo:hi:step");
  c_scan->add_option("--b0", b0_text, "second height: value or lo:hi:step");
  c_scan->add_option("--angle", angle_text, "angle between Bloch vectors in degrees");
  c_scan->add_option("--ra", ra_text, "first Bloch radius: value or lo:hi:step");
  c_scan->add_option("--rb", rb_text, "second Bloch radius, or 'ra' to mirror the first");

  CLI::App* c_verify = app.add_subcommand("verify", "run a verification suite");
  c_verify->add_option("suite", suite, "axioms | identities | counterexamples | oracle")->required();
  std::string dims_text = "2,3,4,8";
  c_verify->add_option("--dims", dims_text, "comma-separated dimensions for the suites");

  for (CLI::App* sub : {c_measure, c_spectrum, c_coexist, c_scan, c_verify})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream help;
    const int code = app.exit(e, help, help);
    (code == 0 ? out : err) << help.str();
    return code == 0 ? 0 : 2;
  }

  std::ofstream out_file;
  std::ostream* sink = &out;
  if (!out_path.empty()) {
    out_file.open(out_path);
    if (!out_file) {
      err << "error: cannot open '" << out_path << "' for writing\n";
      return 2;
    }
    sink = &out_file;
  }

  try {
    if (*c_measure) return cmd_measure(op_file, measures, format, tolv, *sink);
    if (*c_spectrum) return cmd_spectrum(op_file, format, tolv, *sink);
    if (*c_coexist)
      return cmd_coexist(pair_file, format, with_oracle, resolution, rounds, *sink);
    if (*c_scan) return cmd_scan(a0_text, b0_text, angle_text, ra_text, rb_text, format, *sink);
    if (*c_verify)
      return cmd_verify(suite, samples, seed, dims_text, resolution, rounds, format, *sink);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace effects::cli
