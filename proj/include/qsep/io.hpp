#pragma once

#include <json.hpp>
#include <optional>
#include <string>

#include "qsep/criteria.hpp"
#include "qsep/invariants.hpp"
#include "qsep/states.hpp"

namespace qsep::io {

using nlohmann::json;

/// A parsed state file: {"dims": [...], "amplitudes": [{"index", "re", "im"}],
/// "label"?}  Amplitudes omitted from the file are zero. With
/// `paper_indices`, indices in the file are 1-based.
struct LoadedState {
  PureState state;
  std::string label;
};

LoadedState parse_state(const json& j, bool paper_indices = false);
LoadedState read_state_file(const std::string& path, bool paper_indices = false);

/// Serializes dims plus the nonzero amplitudes (0-based indices).
json state_to_json(const PureState& state, const std::string& label = "");

/// A parsed mixed-state file, either spectral form
///   {"eigen": [{"weight", "state"}, {"weight", "state"}]}
/// (two orthonormal eigenvectors) or dense form
///   {"dims": [...], "dense": [[re, im], ...]}  (row-major, total_dim^2 rows).
struct LoadedMixed {
  std::optional<RankTwoState> eigen;
  std::optional<DensityMatrix> dense;
  std::string label;
};

LoadedMixed parse_mixed(const json& j, bool paper_indices = false);
LoadedMixed read_mixed_file(const std::string& path, bool paper_indices = false);

json verdict_to_json(const SeparabilityVerdict& verdict,
                     const DimensionProfile& profile);
json invariants_to_json(const InvariantSet& invariants);

/// FNV-1a 64-bit digest of the file bytes, as 16 hex digits.
std::string file_digest(const std::string& path);

/// Reads a whole file; throws ParseError when it cannot be opened.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace qsep::io
