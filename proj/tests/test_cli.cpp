#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "qsep/io.hpp"

using qsep::io::json;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
  static int counter = 0;
  const fs::path dir = fs::temp_directory_path() / "qsep_cli_test";
  fs::create_directories(dir);
  const fs::path out_path = dir / ("out" + std::to_string(counter) + ".txt");
  const fs::path err_path = dir / ("err" + std::to_string(counter) + ".txt");
  ++counter;

  const std::string cmd = env_prefix + std::string(QSEP_CLI_PATH) + " " + args +
                          " >" + out_path.string() + " 2>" + err_path.string();
  const int status = std::system(cmd.c_str());
  RunResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = slurp(out_path);
  result.err = slurp(err_path);
  return result;
}

fs::path write_file(const std::string& name, const json& content) {
  const fs::path dir = fs::temp_directory_path() / "qsep_cli_test";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream out(p);
  out << content.dump(2);
  return p;
}

json ghz_file() {
  const double s2 = 1.0 / std::sqrt(2.0);
  return {{"dims", {2, 2, 2}},
          {"label", "ghz"},
          {"amplitudes",
           {{{"index", {0, 0, 0}}, {"re", s2}}, {{"index", {1, 1, 1}}, {"re", s2}}}}};
}

json worked_mixed_file() {
  const double s2 = 1.0 / std::sqrt(2.0);
  json plus = {{"dims", {2, 2, 2}},
               {"amplitudes",
                {{{"index", {0, 0, 0}}, {"re", s2}}, {{"index", {0, 1, 1}}, {"re", s2}}}}};
  json minus = plus;
  minus["amplitudes"][1]["re"] = -s2;
  return {{"eigen",
           {{{"weight", 0.5}, {"state", plus}}, {{"weight", 0.5}, {"state", minus}}}}};
}

json corollary_mixed_file() {
  const double s2 = 1.0 / std::sqrt(2.0);
  const json e1 = {{"dims", {2, 2, 2}},
                   {"amplitudes", {{{"index", {0, 0, 1}}, {"re", 1.0}}}}};
  const json ghz = {{"dims", {2, 2, 2}},
                    {"amplitudes",
                     {{{"index", {0, 0, 0}}, {"re", s2}}, {{"index", {1, 1, 1}}, {"re", s2}}}}};
  return {{"eigen",
           {{{"weight", 0.3}, {"state", e1}}, {{"weight", 0.7}, {"state", ghz}}}}};
}

}  // namespace

TEST_CASE("concurrence command reports the GHZ value") {
  const fs::path input = write_file("ghz.json", ghz_file());
  const RunResult r = run_cli("--format machine concurrence --input " + input.string());
  REQUIRE(r.exit_code == 0);
  const json report = json::parse(r.out);
  CHECK(std::abs(report["concurrence"].get<double>() - std::sqrt(3.0)) <= 1e-7);
  CHECK(report["separable"] == false);
  CHECK(report["invariants"]["i_ts"].size() == 3);
  CHECK(report["input"]["digest"].get<std::string>().size() == 16);
}

TEST_CASE("concurrence of a product state is zero") {
  const json product = {{"dims", {2, 2, 2}},
                        {"amplitudes", {{{"index", {1, 0, 1}}, {"re", 1.0}}}}};
  const fs::path input = write_file("product.json", product);
  const RunResult r = run_cli("--format machine concurrence --input " + input.string());
  REQUIRE(r.exit_code == 0);
  const json report = json::parse(r.out);
  CHECK(report["concurrence"].get<double>() <= 1e-12);
  CHECK(report["separable"] == true);
}

TEST_CASE("malformed input exits with code 2 and a diagnostic") {
  const json bad = {{"dims", {2, 2, 2}},
                    {"amplitudes", {{{"index", {0, 0, 5}}, {"re", 1.0}}}}};
  const fs::path input = write_file("bad.json", bad);
  const RunResult r = run_cli("concurrence --input " + input.string());
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("index[2]") != std::string::npos);

  const RunResult missing = run_cli("concurrence --input /nonexistent/x.json");
  CHECK(missing.exit_code == 2);
}

TEST_CASE("check command on the worked example") {
  const fs::path input = write_file("worked.json", worked_mixed_file());
  const RunResult r = run_cli("--format machine check --input " + input.string() +
                              " --self-check");
  REQUIRE(r.exit_code == 0);
  const json report = json::parse(r.out);
  CHECK(report["verdict"]["status"] == "separable");
  const auto& dec = report["verdict"]["decomposition"];
  CHECK(std::abs(dec["p_prime"].get<double>() - 0.5) <= 1e-9);

  // The recovered product vectors are |000> and |011> up to phase: one
  // amplitude of modulus one each.
  for (const char* key : {"e1_prime", "e2_prime"}) {
    const auto& amps = dec[key]["amplitudes"];
    double largest = 0.0;
    for (const auto& a : amps) {
      largest = std::max(largest, std::hypot(a["re"].get<double>(),
                                             a.value("im", 0.0)));
    }
    CHECK(std::abs(largest - 1.0) <= 1e-9);
  }
  CHECK(report["self_check"]["oracle_e1_prime_separable"] == true);
  CHECK(report["self_check"]["oracle_e2_prime_separable"] == true);
}

TEST_CASE("check command on an entangled mixture") {
  const fs::path input = write_file("corollary.json", corollary_mixed_file());
  const RunResult r = run_cli("--format machine check --input " + input.string());
  REQUIRE(r.exit_code == 0);
  const json report = json::parse(r.out);
  CHECK(report["verdict"]["status"] == "entangled");
  CHECK(report["verdict"]["witness"].contains("condition"));
  CHECK(report["concurrences"]["ratio_consistent"] == false);
}

TEST_CASE("rank violations exit with code 4") {
  // A rank-3 diagonal density matrix in dense form.
  json dense = json::array();
  const int n = 8;
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      double v = 0.0;
      if (r == c && r < 3) v = (r == 0) ? 0.5 : (r == 1 ? 0.3 : 0.2);
      dense.push_back({v, 0.0});
    }
  }
  const json j = {{"dims", {2, 2, 2}}, {"dense", dense}};
  const fs::path input = write_file("rank3.json", j);
  const RunResult r = run_cli("check --input " + input.string());
  CHECK(r.exit_code == 4);
  CHECK(r.err.find("rank") != std::string::npos);
}

TEST_CASE("decompose writes a file that mixes back to the input") {
  const fs::path input = write_file("worked2.json", worked_mixed_file());
  const fs::path output = fs::temp_directory_path() / "qsep_cli_test" / "dec.json";
  const RunResult r = run_cli("decompose --input " + input.string() + " --output " +
                              output.string());
  REQUIRE(r.exit_code == 0);

  const json dec = json::parse(slurp(output));
  REQUIRE(dec["decomposition"].size() == 2);
  const auto s1 = qsep::io::parse_state(dec["decomposition"][0]["state"]);
  const auto s2 = qsep::io::parse_state(dec["decomposition"][1]["state"]);
  const double w1 = dec["decomposition"][0]["weight"].get<double>();
  const double w2 = dec["decomposition"][1]["weight"].get<double>();
  CHECK(w1 + w2 == doctest::Approx(1.0).epsilon(1e-12));

  const std::pair<double, qsep::PureState> parts[] = {{w1, s1.state}, {w2, s2.state}};
  const qsep::DensityMatrix rebuilt = qsep::mixture(parts);

  const auto original = qsep::io::read_mixed_file(input.string());
  const qsep::DensityMatrix target = original.eigen->to_density_matrix();
  CHECK((rebuilt.entries() - target.entries()).norm() <= 1e-8);
}

TEST_CASE("decompose refuses entangled input with exit 5") {
  const fs::path input = write_file("corollary2.json", corollary_mixed_file());
  const fs::path output = fs::temp_directory_path() / "qsep_cli_test" / "never.json";
  const RunResult r = run_cli("decompose --input " + input.string() + " --output " +
                              output.string());
  CHECK(r.exit_code == 5);
  CHECK(r.err.find("entangled") != std::string::npos);
}

TEST_CASE("machine reports are byte-identical across runs") {
  const fs::path input = write_file("worked3.json", worked_mixed_file());
  const std::string args = "--format machine check --input " + input.string();
  const RunResult a = run_cli(args);
  const RunResult b = run_cli(args);
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);

  const std::string sample_args =
      "--format machine sample --dims 2,2,3 --mode generic --trials 5 --seed 42";
  const RunResult c = run_cli(sample_args);
  const RunResult d = run_cli(sample_args);
  REQUIRE(c.exit_code == 0);
  CHECK(c.out == d.out);
}

TEST_CASE("sample modes agree with their ground truth") {
  const RunResult mix = run_cli(
      "--format machine sample --dims 2,2,2 --mode product-mix --trials 15 --seed 3");
  REQUIRE(mix.exit_code == 0);
  const json mix_report = json::parse(mix.out);
  CHECK(mix_report["summary"]["separable"] == 15);
  CHECK(mix_report["summary"]["ground_truth_agreement"].get<double>() == 1.0);

  const fs::path records =
      fs::temp_directory_path() / "qsep_cli_test" / "records.json";
  const RunResult cor = run_cli(
      "--format machine sample --dims 2,2,3 --mode corollary --trials 15 --seed 5 "
      "--p 0.3 --output " + records.string());
  REQUIRE(cor.exit_code == 0);
  const json cor_report = json::parse(cor.out);
  CHECK(cor_report["summary"]["entangled"] == 15);
  CHECK(cor_report["summary"]["ground_truth_agreement"].get<double>() == 1.0);

  const json full = json::parse(slurp(records));
  REQUIRE(full["trials"].size() == 15);
  CHECK(full["trials"][0]["trial"] == 0);
  CHECK(full["trials"][14]["verdict"] == "entangled");
}

TEST_CASE("QSEP_TOL environment variable") {
  const fs::path input = write_file("ghz_env.json", ghz_file());
  const RunResult ok =
      run_cli("--format machine concurrence --input " + input.string(),
              "QSEP_TOL=1e-7 ");
  CHECK(ok.exit_code == 0);
  CHECK(json::parse(ok.out)["tolerances"]["rel"].get<double>() == 1e-7);

  const RunResult bad = run_cli("concurrence --input " + input.string(),
                                "QSEP_TOL=not-a-number ");
  CHECK(bad.exit_code == 2);
}

TEST_CASE("paper indices flag shifts file indices") {
  const double s2 = 1.0 / std::sqrt(2.0);
  const json j = {{"dims", {2, 2, 2}},
                  {"amplitudes",
                   {{{"index", {1, 1, 1}}, {"re", s2}}, {{"index", {2, 2, 2}}, {"re", s2}}}}};
  const fs::path input = write_file("ghz_paper.json", j);
  const RunResult r = run_cli("--format machine --paper-indices concurrence --input " +
                              input.string());
  REQUIRE(r.exit_code == 0);
  CHECK(std::abs(json::parse(r.out)["concurrence"].get<double>() - std::sqrt(3.0)) <= 1e-7);
}
