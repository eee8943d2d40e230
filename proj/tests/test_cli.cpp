#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "effects/io.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv = {"effects"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code =
      effects::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class TempFile {
 public:
  explicit TempFile(const std::string& text) {
    static int counter = 0;
    path_ = (fs::temp_directory_path() /
             ("effects_cli_test_" + std::to_string(++counter) + ".json"))
                .string();
    std::ofstream out(path_);
    out << text;
  }
  ~TempFile() { std::remove(path_.c_str()); }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

std::vector<std::string> fields_of(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string cell;
  while (std::getline(in, cell, ',')) out.push_back(cell);
  return out;
}

// A value cell from the row whose first field is `key`, parsed as double.
double csv_value(const std::string& text, const std::string& key, std::size_t column) {
  for (const std::string& line : lines_of(text)) {
    const std::vector<std::string> f = fields_of(line);
    if (!f.empty() && f[0] == key) {
      REQUIRE(f.size() > column);
      return std::strtod(f[column].c_str(), nullptr);
    }
  }
  FAIL("row '" << key << "' not found");
  return 0;
}

const char* kThirdIdentity = R"({"dim": 3, "entries": [
  [[0.3, 0], [0, 0], [0, 0]],
  [[0, 0], [0.3, 0], [0, 0]],
  [[0, 0], [0, 0], [0.3, 0]]]})";

const char* kCornerInterior = R"({"dim": 3, "entries": [
  [[0, 0], [0, 0], [0, 0]],
  [[0, 0], [0.5, 0], [0, 0]],
  [[0, 0], [0, 0], [1, 0]]]})";

std::string pair_text(double ra, double rb) {
  return std::string(R"({"A": {"a0": 0.5, "a": [)") + std::to_string(ra) +
         R"(, 0, 0]}, "B": {"a0": 0.5, "a": [0, )" + std::to_string(rb) + ", 0]}}";
}

}  // namespace

TEST_CASE("measure command") {
  const TempFile op(kThirdIdentity);

  SUBCASE("explicit measure list in csv") {
    const RunResult r = run_cli({"measure", op.path(), "--measures", "B0,B5"});
    CHECK(r.code == 0);
    const std::vector<std::string> rows = lines_of(r.out);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0] == "measure,dim,value");
    CHECK(csv_value(r.out, "B0", 2) == doctest::Approx(-0.4).epsilon(1e-12));
    CHECK(csv_value(r.out, "B5", 2) == doctest::Approx(-0.4).epsilon(1e-12));
  }
  SUBCASE("default list skips qubit-only entries above dimension 2") {
    const RunResult r = run_cli({"measure", op.path()});
    CHECK(r.code == 0);
    CHECK(r.out.find("Sa,") != std::string::npos);
    CHECK(r.out.find("Sa2") == std::string::npos);
    CHECK(r.out.find("B2fail") == std::string::npos);
  }
  SUBCASE("qubit matrix gets the closed forms included") {
    const TempFile q(R"({"dim": 2, "entries": [[[0.75, 0], [0, 0]],
                                              [[0, 0], [0.25, 0]]]})");
    const RunResult r = run_cli({"measure", q.path()});
    CHECK(r.code == 0);
    CHECK(r.out.find("Sa2") != std::string::npos);
    CHECK(csv_value(r.out, "Sa2", 2) == doctest::Approx(0.5).epsilon(1e-9));
  }
  SUBCASE("unknown measure id fails before computing anything") {
    const RunResult r = run_cli({"measure", op.path(), "--measures", "S0,wat"});
    CHECK(r.code == 2);
    CHECK(r.err.find("unknown measure") != std::string::npos);
    CHECK(r.out.empty());
  }
  SUBCASE("json format carries the schema marker") {
    const RunResult r = run_cli({"measure", op.path(), "--format", "json",
                                 "--measures", "S0"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("schema").get<int>() == 1);
    CHECK(j.at("dim").get<int>() == 3);
    REQUIRE(j.at("rows").size() == 1);
    CHECK(j.at("rows").at(0).at("measure").get<std::string>() == "S0");
  }
}

TEST_CASE("spectrum command") {
  const TempFile op(kCornerInterior);
  const RunResult r = run_cli({"spectrum", op.path()});
  CHECK(r.code == 0);
  CHECK(lines_of(r.out)[0] == "quantity,index,value");
  CHECK(csv_value(r.out, "width", 2) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(csv_value(r.out, "dispersion", 2) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(csv_value(r.out, "kappa", 2) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(csv_value(r.out, "nontrivial_projection", 2) == 0.0);

  SUBCASE("json variant") {
    const RunResult j = run_cli({"spectrum", op.path(), "--format", "json"});
    CHECK(j.code == 0);
    const auto doc = nlohmann::json::parse(j.out);
    CHECK(doc.at("summary").at("width").get<double>() == doctest::Approx(1.0));
    CHECK(doc.at("classification").at("nontrivial_projection").get<bool>() == false);
  }
  SUBCASE("an invalid operator is refused with exit 2") {
    const TempFile bad(R"({"dim": 1, "entries": [[[1.5, 0]]]})");
    const RunResult b = run_cli({"spectrum", bad.path()});
    CHECK(b.code == 2);
    CHECK(b.err.find("error:") != std::string::npos);
  }
}

TEST_CASE("coexist command exit codes") {
  SUBCASE("compatible pair") {
    const TempFile f(pair_text(0.25, 0.25));
    const RunResult r = run_cli({"coexist", f.path()});
    CHECK(r.code == 0);
    const std::vector<std::string> rows = lines_of(r.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == "lhs,verdict");
    const std::vector<std::string> f1 = fields_of(rows[1]);
    CHECK(std::strtod(f1[0].c_str(), nullptr) == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(f1[1] == "Coexistent");
  }
  SUBCASE("incompatible pair") {
    const TempFile f(pair_text(0.36, 0.36));
    const RunResult r = run_cli({"coexist", f.path()});
    CHECK(r.code == 1);
    CHECK(r.out.find("NotCoexistent") != std::string::npos);
  }
  SUBCASE("marginal pair") {
    const TempFile f(R"({"A": {"a0": 0.5, "a": [0.35355339059327373, 0, 0]},
                         "B": {"a0": 0.5, "a": [0, 0.35355339059327373, 0]}})");
    const RunResult r = run_cli({"coexist", f.path()});
    CHECK(r.code == 3);
    CHECK(r.out.find("Marginal") != std::string::npos);
  }
  SUBCASE("search appendix with --oracle") {
    const TempFile f(pair_text(0.25, 0.25));
    const RunResult r = run_cli({"coexist", f.path(), "--oracle"});
    CHECK(r.code == 0);
    CHECK(lines_of(r.out)[0] == "lhs,verdict,search_feasible,search_margin");
    CHECK(r.out.find("true") != std::string::npos);
  }
  SUBCASE("json with witness on a trivial side") {
    const TempFile f(R"({"A": {"a0": 0.3, "a": [0, 0, 0]},
                         "B": {"a0": 0.5, "a": [0, 0.4, 0]}})");
    const RunResult r = run_cli({"coexist", f.path(), "--format", "json"});
    CHECK(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc.at("verdict").get<std::string>() == "Coexistent");
    CHECK_FALSE(doc.at("witness").is_null());
  }
}

TEST_CASE("scan command") {
  SUBCASE("small sweep, mirrored radii") {
    const RunResult r = run_cli({"scan", "--ra", "0:0.1:0.05"});
    CHECK(r.code == 0);
    const std::vector<std::string> rows = lines_of(r.out);
    REQUIRE(rows.size() == 4);  // header + 3 radii
    CHECK(rows[0] == "a0,b0,angle_deg,ra,rb,lhs,verdict");
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const std::vector<std::string> f = fields_of(rows[i]);
      REQUIRE(f.size() == 7);
      CHECK(f[3] == f[4]);  // rb mirrors ra
      CHECK(f[6] == "Coexistent");
    }
  }
  SUBCASE("independent rb grid") {
    const RunResult r = run_cli({"scan", "--ra", "0.1:0.2:0.1", "--rb", "0:0.1:0.1"});
    CHECK(r.code == 0);
    CHECK(lines_of(r.out).size() == 5);  // header + 2*2 cells
  }
  SUBCASE("byte-identical repetition") {
    const RunResult a = run_cli({"scan", "--ra", "0:0.4:0.01"});
    const RunResult b = run_cli({"scan", "--ra", "0:0.4:0.01"});
    CHECK(a.out == b.out);
  }
  SUBCASE("malformed range") {
    const RunResult r = run_cli({"scan", "--ra", "0:0.5:-0.1"});
    CHECK(r.code == 2);
    CHECK(r.err.find("step") != std::string::npos);
  }
  SUBCASE("out-of-domain grid point") {
    const RunResult r = run_cli({"scan", "--a0", "0.2", "--ra", "0.4"});
    CHECK(r.code == 2);
  }
}

TEST_CASE("verify command") {
  SUBCASE("counterexample suite passes and reports per check") {
    const RunResult r = run_cli({"verify", "counterexamples"});
    CHECK(r.code == 0);
    CHECK(r.out.find("[PASS]") != std::string::npos);
    CHECK(r.out.find("[FAIL]") == std::string::npos);
    CHECK(r.out.find("counterexamples: 7/7 checks passed") != std::string::npos);
  }
  SUBCASE("identity suite at reduced size") {
    const RunResult r = run_cli({"verify", "identities", "--samples", "40",
                                 "--dims", "2,3"});
    CHECK(r.code == 0);
  }
  SUBCASE("csv listing") {
    const RunResult r = run_cli({"verify", "counterexamples", "--format", "csv"});
    CHECK(r.code == 0);
    CHECK(lines_of(r.out)[0] == "suite,check,pass,checked");
    CHECK(r.out.find("b2_discriminant_goes_negative,true,1") != std::string::npos);
  }
  SUBCASE("unknown suite") {
    const RunResult r = run_cli({"verify", "nope"});
    CHECK(r.code == 2);
    CHECK(r.err.find("unknown suite") != std::string::npos);
  }
}

TEST_CASE("top-level plumbing") {
  SUBCASE("help exits 0 and lands on stdout") {
    const RunResult r = run_cli({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("measure") != std::string::npos);
  }
  SUBCASE("a subcommand is required") {
    const RunResult r = run_cli({});
    CHECK(r.code == 2);
  }
  SUBCASE("missing input file") {
    const RunResult r = run_cli({"spectrum", "/nonexistent/effects_nowhere.json"});
    CHECK(r.code == 2);
    CHECK(r.err.find("cannot read") != std::string::npos);
  }
  SUBCASE("--out writes the report to a file") {
    const TempFile op(kThirdIdentity);
    const std::string dest =
        (fs::temp_directory_path() / "effects_cli_out_test.csv").string();
    const RunResult r = run_cli({"measure", op.path(), "--measures", "S0",
                                 "--out", dest});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(dest);
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    CHECK(header == "measure,dim,value");
    in.close();
    std::remove(dest.c_str());
  }
}
