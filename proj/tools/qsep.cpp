// Command-line front end: separability analysis of rank-two mixed states and
// concurrence reports for pure states, over JSON state files.

#include <CLI11.hpp>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "qsep/criteria.hpp"
#include "qsep/errors.hpp"
#include "qsep/invariants.hpp"
#include "qsep/io.hpp"
#include "qsep/oracle.hpp"
#include "qsep/random.hpp"
#include "qsep/version.hpp"

namespace {

using qsep::Complex;
using qsep::io::json;

// Exit codes, stable contract:
//   0 success, 2 malformed input, 3 internal consistency failure,
//   4 rank violation, 5 decomposition requested on an entangled state.
constexpr int kExitOk = 0;
constexpr int kExitBadInput = 2;
constexpr int kExitInternal = 3;
constexpr int kExitRank = 4;
constexpr int kExitEntangled = 5;

struct GlobalOptions {
  double rel_tol = qsep::tol::kRel;
  double rank_tol = qsep::tol::kRank;
  std::string format = "text";
  bool paper_indices = false;
};

std::string num(double x) { return json(x).dump(); }

json tool_block() {
  json j;
  j["name"] = qsep::kToolName;
  j["version"] = qsep::kVersion;
  return j;
}

json input_block(const std::string& path, const qsep::DimensionProfile& profile,
                 const std::string& form, const std::string& label) {
  json j;
  j["path"] = path;
  j["digest"] = qsep::io::file_digest(path);
  j["dims"] = profile.dims();
  j["form"] = form;
  if (!label.empty()) j["label"] = label;
  return j;
}

json tolerance_block(const GlobalOptions& opt) {
  json j;
  j["rel"] = opt.rel_tol;
  j["rank"] = opt.rank_tol;
  return j;
}

void emit(const GlobalOptions& opt, const json& report,
          const std::function<void(std::ostream&)>& text_writer) {
  if (opt.format == "machine") {
    std::cout << report.dump(2) << "\n";
  } else {
    text_writer(std::cout);
  }
}

int cmd_concurrence(const GlobalOptions& opt, const std::string& input) {
  const auto loaded = qsep::io::read_state_file(input, opt.paper_indices);
  const qsep::PureState& state = loaded.state;

  const auto [c_minors, c_invariants] = qsep::concurrence_both_paths(state);
  const double c = qsep::generalized_concurrence(state);  // throws on mismatch
  const qsep::InvariantSet invariants = qsep::compute_invariants(state);
  const bool separable = qsep::pure_is_separable(state);

  json report;
  report["tool"] = tool_block();
  report["input"] = input_block(input, state.profile(), "state", loaded.label);
  report["tolerances"] = tolerance_block(opt);
  report["concurrence"] = c;
  report["concurrence_paths"] = {{"minor_sum", c_minors}, {"invariants", c_invariants}};
  report["separable"] = separable;
  report["invariants"] = qsep::io::invariants_to_json(invariants);

  emit(opt, report, [&](std::ostream& out) {
    out << "input: " << input << " (dims " << state.profile().to_string() << ")\n";
    out << "concurrence: " << num(c) << "\n";
    out << "pure state separable: " << (separable ? "yes" : "no") << "\n";
    out << "I0 = " << num(invariants.i0) << "\n";
    for (const auto& [cls, value] : invariants.i_ts) {
      out << "I_TS " << cls.to_string() << " = " << num(value) << "\n";
    }
  });
  return kExitOk;
}

struct MixedAnalysis {
  qsep::RankTwoState rho;
  std::string form;
  std::string label;
  double eigen_reconstruction = 0.0;  // dense form only
};

MixedAnalysis load_rank_two(const std::string& input, const GlobalOptions& opt) {
  auto loaded = qsep::io::read_mixed_file(input, opt.paper_indices);
  if (loaded.eigen) {
    return {*std::move(loaded.eigen), "eigen", loaded.label, 0.0};
  }
  const qsep::DensityMatrix& dense = *loaded.dense;
  qsep::RankTwoState rho = qsep::rank2_eigendecompose(dense, opt.rank_tol);
  const double residual =
      (rho.to_density_matrix().entries() - dense.entries()).norm();
  return {std::move(rho), "dense", loaded.label, residual};
}

int cmd_check(const GlobalOptions& opt, const std::string& input, bool self_check) {
  const MixedAnalysis mixed = load_rank_two(input, opt);
  const qsep::RankTwoState& rho = mixed.rho;

  const qsep::SeparabilityVerdict verdict = qsep::decide(rho, opt.rel_tol);
  const auto [c1, c2] = qsep::family_concurrences(rho);
  const bool ratio_consistent = !qsep::concurrence_ratio_screen(rho, opt.rel_tol);

  json report;
  report["tool"] = tool_block();
  report["input"] = input_block(input, rho.profile(), mixed.form, mixed.label);
  report["tolerances"] = tolerance_block(opt);
  report["eigenvalues"] = {{"p", rho.p()}, {"q", rho.q()}};
  report["verdict"] = qsep::io::verdict_to_json(verdict, rho.profile());
  report["concurrences"] = {
      {"c1", c1}, {"c2", c2}, {"ratio_consistent", ratio_consistent}};
  report["invariants"] = {
      {"e1", qsep::io::invariants_to_json(qsep::compute_invariants(rho.e1()))},
      {"e2", qsep::io::invariants_to_json(qsep::compute_invariants(rho.e2()))}};

  if (self_check) {
    json checks;
    checks["input_reconstruction_residual"] = mixed.eigen_reconstruction;
    const auto [m1, i1] = qsep::concurrence_both_paths(rho.e1());
    const auto [m2, i2] = qsep::concurrence_both_paths(rho.e2());
    checks["concurrence_path_gap_e1"] = std::abs(m1 - i1);
    checks["concurrence_path_gap_e2"] = std::abs(m2 - i2);
    if (verdict.separable()) {
      const qsep::Decomposition& dec = *verdict.decomposition;
      checks["oracle_e1_prime_separable"] =
          qsep::oracle::pure_separable(dec.e1_prime.tensor());
      checks["oracle_e2_prime_separable"] =
          qsep::oracle::pure_separable(dec.e2_prime.tensor());
      checks["reconstruction_residual"] = dec.reconstruction_residual;
    }
    report["self_check"] = std::move(checks);
  }

  emit(opt, report, [&](std::ostream& out) {
    out << "input: " << input << " (dims " << rho.profile().to_string() << ", "
        << mixed.form << " form)\n";
    out << "eigenvalues: p = " << num(rho.p()) << ", q = " << num(rho.q()) << "\n";
    if (verdict.separable()) {
      const qsep::Decomposition& dec = *verdict.decomposition;
      out << "verdict: separable\n";
      if (dec.mu1) {
        out << "  mu1 = " << num(dec.mu1->real()) << (dec.mu1->imag() < 0 ? " - " : " + ")
            << num(std::abs(dec.mu1->imag())) << "i\n";
        out << "  mu2 = " << num(dec.mu2->real()) << (dec.mu2->imag() < 0 ? " - " : " + ")
            << num(std::abs(dec.mu2->imag())) << "i\n";
        out << "  theta = " << num(dec.theta) << "\n";
      } else {
        out << "  (eigenvectors are already product states)\n";
      }
      out << "  p' = " << num(dec.p_prime) << "\n";
      out << "  reconstruction residual = " << num(dec.reconstruction_residual) << "\n";
    } else {
      out << "verdict: entangled\n";
      out << "  witness: " << verdict.witness_name() << "\n";
      if (verdict.witness_family) {
        out << "  family: " << verdict.witness_family->to_string(rho.profile()) << "\n";
      }
    }
    out << "concurrences: C(1) = " << num(c1) << ", C(2) = " << num(c2)
        << (ratio_consistent ? " (ratio consistent)" : " (ratio violated)") << "\n";
    if (self_check) {
      out << "self-check: " << report["self_check"].dump() << "\n";
    }
  });
  return kExitOk;
}

int cmd_decompose(const GlobalOptions& opt, const std::string& input,
                  const std::string& output) {
  const MixedAnalysis mixed = load_rank_two(input, opt);
  const qsep::SeparabilityVerdict verdict = qsep::decide(mixed.rho, opt.rel_tol);
  if (!verdict.separable()) {
    std::cerr << "state is entangled (witness: " << verdict.witness_name()
              << "); no separable decomposition exists\n";
    return kExitEntangled;
  }
  const qsep::Decomposition& dec = *verdict.decomposition;

  json out;
  out["tool"] = tool_block();
  out["input"] = input_block(input, mixed.rho.profile(), mixed.form, mixed.label);
  out["decomposition"] = json::array(
      {json{{"weight", dec.p_prime}, {"state", qsep::io::state_to_json(dec.e1_prime)}},
       json{{"weight", 1.0 - dec.p_prime},
            {"state", qsep::io::state_to_json(dec.e2_prime)}}});
  out["reconstruction_residual"] = dec.reconstruction_residual;
  qsep::io::write_text_file(output, out.dump(2) + "\n");

  std::cout << "wrote decomposition to " << output << " (p' = " << num(dec.p_prime)
            << ", residual = " << num(dec.reconstruction_residual) << ")\n";
  return kExitOk;
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  std::uint64_t x = a + 0x9e3779b97f4a7c15ull * (b + 1) + 0x632be59bd9b4e019ull * (c + 1);
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ull;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebull;
  x ^= x >> 31;
  return x;
}

double uniform_in(std::uint64_t seed, double lo, double hi) {
  std::mt19937_64 rng(seed);
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int cmd_sample(const GlobalOptions& opt, const std::string& dims_arg, int trials,
               std::uint64_t seed, const std::string& mode, double p_fixed,
               const std::string& output) {
  std::vector<int> dims;
  {
    std::stringstream ss(dims_arg);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        dims.push_back(std::stoi(item));
      } catch (const std::exception&) {
        throw qsep::ParseError("--dims: cannot parse '" + item + "'");
      }
    }
  }
  const qsep::DimensionProfile profile = [&] {
    try {
      return qsep::DimensionProfile(dims);
    } catch (const qsep::Error& e) {
      throw qsep::ParseError(std::string("--dims: ") + e.what());
    }
  }();

  int separable_count = 0, entangled_count = 0, agree_count = 0;
  bool has_ground_truth = (mode != "generic");
  json records = json::array();

  for (int trial = 0; trial < trials; ++trial) {
    std::optional<qsep::RankTwoState> rho;
    std::optional<bool> truth_separable;
    double p_used = 0.0;

    if (mode == "product-mix") {
      // Two random product states, generally nonorthogonal, routed through
      // the dense matrix and its eigendecomposition.
      for (std::uint64_t attempt = 0;; ++attempt) {
        const auto s1 = qsep::random_product_state(profile, mix_seed(seed, trial, attempt * 4));
        const auto s2 =
            qsep::random_product_state(profile, mix_seed(seed, trial, attempt * 4 + 1));
        const double weight = uniform_in(mix_seed(seed, trial, attempt * 4 + 2), 0.1, 0.9);
        try {
          const qsep::DensityMatrix dense = qsep::oracle::build_separable_rank2(s1, s2, weight);
          rho.emplace(qsep::rank2_eigendecompose(dense, opt.rank_tol));
          break;
        } catch (const qsep::IdenticalStates&) {
          continue;  // measure-zero collision, redraw
        } catch (const qsep::RankOne&) {
          continue;  // near-identical pair; redraw
        }
      }
      p_used = rho->p();
      truth_separable = true;
    } else if (mode == "corollary") {
      const qsep::PureState e2 = qsep::maximally_entangled_state(profile);
      std::optional<qsep::PureState> e1;
      for (std::uint64_t attempt = 0;; ++attempt) {
        const auto draw = qsep::random_pure_state(profile, mix_seed(seed, trial, 16 + attempt));
        const Complex overlap = qsep::inner_product(e2, draw);
        std::vector<Complex> amps(draw.dim());
        for (std::size_t i = 0; i < draw.dim(); ++i) {
          amps[i] = draw.amp(i) - overlap * e2.amp(i);
        }
        qsep::CoefficientTensor t(profile, std::move(amps));
        if (t.squared_norm() < 1e-8) continue;
        e1.emplace(qsep::make_pure_state(t));
        break;
      }
      p_used = p_fixed > 0.0 ? p_fixed
                             : uniform_in(mix_seed(seed, trial, 23), 0.01, 0.49);
      rho.emplace(p_used, *e1, e2);
      if (p_used < 0.5) {
        truth_separable = false;
      } else {
        has_ground_truth = false;  // no claim is made for p >= 1/2
      }
    } else if (mode == "generic") {
      // Random orthonormal pair via projection.
      const auto v1 = qsep::random_pure_state(profile, mix_seed(seed, trial, 31));
      std::optional<qsep::PureState> v2;
      for (std::uint64_t attempt = 0;; ++attempt) {
        const auto draw = qsep::random_pure_state(profile, mix_seed(seed, trial, 37 + attempt));
        const Complex overlap = qsep::inner_product(v1, draw);
        std::vector<Complex> amps(draw.dim());
        for (std::size_t i = 0; i < draw.dim(); ++i) {
          amps[i] = draw.amp(i) - overlap * v1.amp(i);
        }
        qsep::CoefficientTensor t(profile, std::move(amps));
        if (t.squared_norm() < 1e-8) continue;
        v2.emplace(qsep::make_pure_state(t));
        break;
      }
      p_used = p_fixed > 0.0 ? p_fixed
                             : uniform_in(mix_seed(seed, trial, 41), 0.05, 0.95);
      rho.emplace(p_used, v1, *v2);
    } else {
      throw qsep::ParseError("--mode must be product-mix, corollary or generic");
    }

    const qsep::SeparabilityVerdict verdict = qsep::decide(*rho, opt.rel_tol);
    if (verdict.separable()) {
      ++separable_count;
    } else {
      ++entangled_count;
    }

    json record;
    record["trial"] = trial;
    record["p"] = p_used;
    record["verdict"] = verdict.separable() ? "separable" : "entangled";
    if (!verdict.separable()) record["witness"] = verdict.witness_name();
    if (truth_separable.has_value()) {
      const bool agrees = verdict.separable() == *truth_separable;
      record["ground_truth"] = *truth_separable ? "separable" : "entangled";
      record["agrees"] = agrees;
      if (agrees) ++agree_count;
    }
    records.push_back(std::move(record));
  }

  json summary;
  summary["mode"] = mode;
  summary["dims"] = profile.dims();
  summary["trials"] = trials;
  summary["seed"] = seed;
  summary["separable"] = separable_count;
  summary["entangled"] = entangled_count;
  if (has_ground_truth) {
    summary["ground_truth_agreement"] =
        trials > 0 ? static_cast<double>(agree_count) / trials : 1.0;
  }

  json report;
  report["tool"] = tool_block();
  report["tolerances"] = tolerance_block(opt);
  report["summary"] = summary;

  if (!output.empty()) {
    json full = report;
    full["trials"] = records;
    qsep::io::write_text_file(output, full.dump(2) + "\n");
  }

  emit(opt, report, [&](std::ostream& out) {
    out << "mode: " << mode << ", dims " << profile.to_string() << ", trials "
        << trials << ", seed " << seed << "\n";
    out << "separable: " << separable_count << ", entangled: " << entangled_count
        << "\n";
    if (has_ground_truth) {
      out << "ground-truth agreement: " << agree_count << "/" << trials << "\n";
    }
    if (!output.empty()) out << "per-trial records written to " << output << "\n";
  });
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Separability analysis for rank-two mixed states on multipartite "
               "quantum systems with unequal dimensions"};
  app.require_subcommand(1);

  GlobalOptions opt;
  if (const char* env = std::getenv("QSEP_TOL")) {
    try {
      opt.rel_tol = std::stod(env);
    } catch (const std::exception&) {
      std::cerr << "QSEP_TOL is not a number: " << env << "\n";
      return kExitBadInput;
    }
  }
  app.add_option("--tol", opt.rel_tol, "Relative tolerance for the criteria")
      ->check(CLI::PositiveNumber);
  app.add_option("--rank-tol", opt.rank_tol,
                 "Rank test tolerance, relative to the largest eigenvalue")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", opt.format, "Output format")
      ->check(CLI::IsMember({"text", "machine"}));
  app.add_flag("--paper-indices", opt.paper_indices,
               "Treat indices in input files as 1-based");

  std::string input, output, dims_arg = "2,2,2", mode = "product-mix";
  bool self_check = false;
  int trials = 10;
  std::uint64_t seed = 1;
  double p_fixed = -1.0;

  auto* concurrence =
      app.add_subcommand("concurrence", "Invariants and generalized concurrence "
                                        "of a pure state");
  concurrence->add_option("--input", input, "State file")->required();

  auto* check = app.add_subcommand("check", "Decide separability of a rank-two "
                                            "mixed state");
  check->add_option("--input", input, "Mixed-state file")->required();
  check->add_flag("--self-check", self_check,
                  "Run oracle cross-validation and include residuals");

  auto* decompose =
      app.add_subcommand("decompose", "Write the separable decomposition");
  decompose->add_option("--input", input, "Mixed-state file")->required();
  decompose->add_option("--output", output, "Decomposition file")->required();

  auto* sample = app.add_subcommand("sample", "Batch verdicts on sampled states");
  sample->add_option("--dims", dims_arg, "Comma-separated mode dimensions");
  sample->add_option("--trials", trials, "Number of trials")
      ->check(CLI::NonNegativeNumber);
  sample->add_option("--seed", seed, "Base seed");
  sample->add_option("--mode", mode, "Sampling mode")
      ->check(CLI::IsMember({"product-mix", "corollary", "generic"}));
  sample->add_option("--p", p_fixed,
                     "Fixed eigenvalue of E1 (corollary and generic modes)");
  sample->add_option("--output", output, "Per-trial record file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (concurrence->parsed()) return cmd_concurrence(opt, input);
    if (check->parsed()) return cmd_check(opt, input, self_check);
    if (decompose->parsed()) return cmd_decompose(opt, input, output);
    if (sample->parsed()) return cmd_sample(opt, dims_arg, trials, seed, mode,
                                            p_fixed, output);
  } catch (const qsep::FormulaMismatch& e) {
    std::cerr << "internal consistency failure: " << e.what() << "\n";
    return kExitInternal;
  } catch (const qsep::InternalError& e) {
    std::cerr << "internal consistency failure: " << e.what() << "\n";
    return kExitInternal;
  } catch (const qsep::NotRankTwo& e) {
    std::cerr << "rank violation: " << e.what() << "\n";
    return kExitRank;
  } catch (const qsep::RankOne& e) {
    std::cerr << "rank violation: " << e.what() << "\n";
    return kExitRank;
  } catch (const qsep::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return kExitOk;
}
