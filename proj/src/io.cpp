#include "qsep/io.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

#include "qsep/errors.hpp"

namespace qsep::io {

namespace {

std::vector<int> parse_dims(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) {
    throw ParseError(where + ": \"dims\" must be a nonempty array of integers");
  }
  std::vector<int> dims;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const auto& entry = j[k];
    if (!entry.is_number_integer()) {
      throw ParseError(where + ".dims[" + std::to_string(k) + "]: not an integer");
    }
    dims.push_back(entry.get<int>());
  }
  return dims;
}

json complex_to_json(const Complex& c) { return json{c.real(), c.imag()}; }

json amplitudes_to_json(const PureState& state) {
  json amps = json::array();
  for (std::size_t linear = 0; linear < state.dim(); ++linear) {
    const Complex a = state.amp(linear);
    if (a == Complex{0.0, 0.0}) continue;
    json entry;
    entry["index"] = state.profile().multi_index(linear);
    entry["re"] = a.real();
    entry["im"] = a.imag();
    amps.push_back(std::move(entry));
  }
  return amps;
}

}  // namespace

LoadedState parse_state(const json& j, bool paper_indices) {
  if (!j.is_object()) throw ParseError("state: expected an object");
  if (!j.contains("dims")) throw ParseError("state: missing \"dims\"");
  DimensionProfile profile = [&] {
    try {
      return DimensionProfile(parse_dims(j.at("dims"), "state"));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(std::string("state.dims: ") + e.what());
    }
  }();

  if (!j.contains("amplitudes") || !j.at("amplitudes").is_array()) {
    throw ParseError("state: missing \"amplitudes\" array");
  }
  CoefficientTensor tensor(profile);
  std::vector<bool> seen(profile.total_dim(), false);
  const auto& amps = j.at("amplitudes");
  for (std::size_t n = 0; n < amps.size(); ++n) {
    const std::string where = "state.amplitudes[" + std::to_string(n) + "]";
    const auto& entry = amps[n];
    if (!entry.is_object() || !entry.contains("index")) {
      throw ParseError(where + ": expected {\"index\", \"re\", \"im\"}");
    }
    const auto& idx = entry.at("index");
    if (!idx.is_array() || idx.size() != static_cast<std::size_t>(profile.mode_count())) {
      throw ParseError(where + ".index: expected " +
                       std::to_string(profile.mode_count()) + " entries");
    }
    std::vector<int> multi;
    for (std::size_t k = 0; k < idx.size(); ++k) {
      if (!idx[k].is_number_integer()) {
        throw ParseError(where + ".index[" + std::to_string(k) + "]: not an integer");
      }
      int value = idx[k].get<int>();
      if (paper_indices) value -= 1;
      if (value < 0 || value >= profile.dim(static_cast<int>(k))) {
        throw ParseError(where + ".index[" + std::to_string(k) + "]: value " +
                         std::to_string(idx[k].get<int>()) +
                         " out of range for mode dimension " +
                         std::to_string(profile.dim(static_cast<int>(k))) +
                         (paper_indices ? " (1-based)" : " (0-based)"));
      }
      multi.push_back(value);
    }
    const std::size_t linear = profile.linear_index(multi);
    if (seen[linear]) {
      throw ParseError(where + ": duplicate index");
    }
    seen[linear] = true;
    const double re = entry.value("re", 0.0);
    const double im = entry.value("im", 0.0);
    tensor.set_amp(linear, Complex{re, im});
  }

  LoadedState out{[&] {
                    try {
                      return make_pure_state(tensor);
                    } catch (const AllZeroTensor& e) {
                      throw ParseError(std::string("state.amplitudes: ") + e.what());
                    }
                  }(),
                  j.value("label", std::string{})};
  return out;
}

LoadedState read_state_file(const std::string& path, bool paper_indices) {
  json j;
  try {
    j = json::parse(read_text_file(path));
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  return parse_state(j, paper_indices);
}

json state_to_json(const PureState& state, const std::string& label) {
  json out;
  out["dims"] = state.profile().dims();
  out["amplitudes"] = amplitudes_to_json(state);
  if (!label.empty()) out["label"] = label;
  return out;
}

LoadedMixed parse_mixed(const json& j, bool paper_indices) {
  if (!j.is_object()) throw ParseError("mixed state: expected an object");
  LoadedMixed out;
  out.label = j.value("label", std::string{});

  if (j.contains("eigen")) {
    const auto& eigen = j.at("eigen");
    if (!eigen.is_array() || eigen.size() != 2) {
      throw ParseError("mixed.eigen: expected exactly two {weight, state} entries");
    }
    double weights[2];
    std::optional<PureState> states[2];
    for (std::size_t k = 0; k < 2; ++k) {
      const std::string where = "mixed.eigen[" + std::to_string(k) + "]";
      const auto& entry = eigen[k];
      if (!entry.is_object() || !entry.contains("weight") || !entry.contains("state")) {
        throw ParseError(where + ": expected {\"weight\", \"state\"}");
      }
      if (!entry.at("weight").is_number()) {
        throw ParseError(where + ".weight: not a number");
      }
      weights[k] = entry.at("weight").get<double>();
      states[k] = parse_state(entry.at("state"), paper_indices).state;
    }
    if (std::abs(weights[0] + weights[1] - 1.0) > tol::kWeightSum) {
      throw ParseError("mixed.eigen: weights sum to " +
                       std::to_string(weights[0] + weights[1]) + ", expected 1");
    }
    if (!(weights[0] > 0.0 && weights[0] < 1.0)) {
      throw ParseError("mixed.eigen: weights must lie strictly inside (0, 1)");
    }
    try {
      out.eigen.emplace(weights[0], *states[0], *states[1]);
    } catch (const NotOrthogonal& e) {
      throw ParseError(std::string("mixed.eigen: eigenvectors are not orthogonal (") +
                       e.what() + "); provide the dense form instead");
    } catch (const Error& e) {
      throw ParseError(std::string("mixed.eigen: ") + e.what());
    }
    return out;
  }

  if (j.contains("dense")) {
    if (!j.contains("dims")) throw ParseError("mixed: dense form needs \"dims\"");
    DimensionProfile profile = [&] {
      try {
        return DimensionProfile(parse_dims(j.at("dims"), "mixed"));
      } catch (const Error& e) {
        throw ParseError(std::string("mixed.dims: ") + e.what());
      }
    }();
    const auto n = static_cast<Eigen::Index>(profile.total_dim());
    const auto& dense = j.at("dense");
    if (!dense.is_array() ||
        dense.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
      throw ParseError("mixed.dense: expected " + std::to_string(n * n) +
                       " [re, im] entries (row-major)");
    }
    Eigen::MatrixXcd m(n, n);
    for (std::size_t idx = 0; idx < dense.size(); ++idx) {
      const auto& cell = dense[idx];
      if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() ||
          !cell[1].is_number()) {
        throw ParseError("mixed.dense[" + std::to_string(idx) +
                         "]: expected [re, im]");
      }
      m(static_cast<Eigen::Index>(idx) / n, static_cast<Eigen::Index>(idx) % n) =
          Complex{cell[0].get<double>(), cell[1].get<double>()};
    }
    try {
      out.dense.emplace(profile, std::move(m));
    } catch (const Error& e) {
      throw ParseError(std::string("mixed.dense: ") + e.what());
    }
    return out;
  }

  throw ParseError("mixed state: expected either \"eigen\" or \"dense\" form");
}

LoadedMixed read_mixed_file(const std::string& path, bool paper_indices) {
  json j;
  try {
    j = json::parse(read_text_file(path));
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  return parse_mixed(j, paper_indices);
}

json verdict_to_json(const SeparabilityVerdict& verdict,
                     const DimensionProfile& profile) {
  json out;
  out["status"] = verdict.separable() ? "separable" : "entangled";
  if (verdict.separable()) {
    const Decomposition& dec = *verdict.decomposition;
    json d;
    d["mu1"] = dec.mu1 ? complex_to_json(*dec.mu1) : json();
    d["mu2"] = dec.mu2 ? complex_to_json(*dec.mu2) : json();
    d["theta"] = dec.theta;
    d["p_prime"] = dec.p_prime;
    d["e1_prime"] = state_to_json(dec.e1_prime);
    d["e2_prime"] = state_to_json(dec.e2_prime);
    d["reconstruction_residual"] = dec.reconstruction_residual;
    out["decomposition"] = std::move(d);
  } else {
    json w;
    w["condition"] = verdict.witness_name();
    if (verdict.witness_family) {
      w["family"] = verdict.witness_family->to_string(profile);
    }
    if (verdict.witness_family2) {
      w["reference_family"] = verdict.witness_family2->to_string(profile);
    }
    w["value"] = verdict.witness_value;
    out["witness"] = std::move(w);
  }
  return out;
}

json invariants_to_json(const InvariantSet& invariants) {
  json out;
  out["i0"] = invariants.i0;
  json list = json::array();
  for (const auto& [cls, value] : invariants.i_ts) {
    json entry;
    entry["subset"] = cls.to_string();
    entry["value"] = value;
    list.push_back(std::move(entry));
  }
  out["i_ts"] = std::move(list);
  return out;
}

std::string file_digest(const std::string& path) {
  const std::string bytes = read_text_file(path);
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ull;
  }
  std::ostringstream out;
  out << std::hex;
  for (int shift = 60; shift >= 0; shift -= 4) out << ((hash >> shift) & 0xf);
  return out.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << content;
}

}  // namespace qsep::io
