#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qsep/profile.hpp"

namespace qsep {

/// One nonempty proper subset T of the modes, with complement S. The class
/// {T, S} is represented canonically by the subset containing mode 0, so a
/// profile with M modes has exactly 2^(M-1) - 1 classes.
class BipartitionClass {
 public:
  BipartitionClass(std::uint32_t mask, int mode_count);

  std::uint32_t mask() const { return mask_; }
  int mode_count() const { return mode_count_; }
  bool contains(int mode) const { return (mask_ >> mode) & 1u; }
  std::uint32_t complement_mask() const {
    return ~mask_ & ((1u << mode_count_) - 1u);
  }

  std::string to_string() const;  // e.g. "{0,2}"

  bool operator==(const BipartitionClass&) const = default;

  /// All canonical classes in increasing mask order.
  static std::vector<BipartitionClass> enumerate(int mode_count);
  /// Folds an arbitrary nonempty proper subset onto its canonical
  /// representative (the one containing mode 0).
  static BipartitionClass canonicalize(std::uint32_t mask, int mode_count);

 private:
  std::uint32_t mask_;
  int mode_count_;
};

/// Fast hybrid-index construction for one bipartition class on one profile:
/// mix(u, v) is the linear index whose digits on modes in T come from u and
/// on modes in S from v.
class IndexMixer {
 public:
  IndexMixer(const DimensionProfile& profile, const BipartitionClass& cls);

  std::size_t mix(std::size_t u, std::size_t v) const {
    return t_offset_[u] + s_offset_[v];
  }
  /// True when u and v agree on all of T or on all of S; the minor of such a
  /// pair vanishes identically.
  bool trivial_pair(std::size_t u, std::size_t v) const {
    return t_offset_[u] == t_offset_[v] || s_offset_[u] == s_offset_[v];
  }

 private:
  std::vector<std::size_t> t_offset_, s_offset_;
};

}  // namespace qsep
