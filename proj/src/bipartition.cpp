#include "qsep/bipartition.hpp"

#include <sstream>

#include "qsep/errors.hpp"

namespace qsep {

BipartitionClass::BipartitionClass(std::uint32_t mask, int mode_count)
    : mask_(mask), mode_count_(mode_count) {
  const std::uint32_t full = (1u << mode_count) - 1u;
  if (mode_count < 2 || mode_count > 30) {
    throw DimensionMismatch("unsupported mode count " + std::to_string(mode_count));
  }
  if (mask == 0u || mask == full || (mask & ~full) != 0u) {
    throw Error("bipartition subset must be nonempty and proper");
  }
  if ((mask & 1u) == 0u) {
    throw Error("canonical bipartition subset must contain mode 0");
  }
}

std::string BipartitionClass::to_string() const {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (int k = 0; k < mode_count_; ++k) {
    if (!contains(k)) continue;
    if (!first) out << ',';
    out << k;
    first = false;
  }
  out << '}';
  return out.str();
}

std::vector<BipartitionClass> BipartitionClass::enumerate(int mode_count) {
  const std::uint32_t full = (1u << mode_count) - 1u;
  std::vector<BipartitionClass> classes;
  classes.reserve((1u << (mode_count - 1)) - 1u);
  for (std::uint32_t mask = 1u; mask < full; mask += 2u) {
    classes.emplace_back(mask, mode_count);
  }
  return classes;
}

BipartitionClass BipartitionClass::canonicalize(std::uint32_t mask, int mode_count) {
  const std::uint32_t full = (1u << mode_count) - 1u;
  if (mask == 0u || mask == full || (mask & ~full) != 0u) {
    throw Error("bipartition subset must be nonempty and proper");
  }
  if ((mask & 1u) == 0u) mask = ~mask & full;
  return BipartitionClass(mask, mode_count);
}

IndexMixer::IndexMixer(const DimensionProfile& profile, const BipartitionClass& cls) {
  if (cls.mode_count() != profile.mode_count()) {
    throw DimensionMismatch("bipartition and profile mode counts differ");
  }
  const std::size_t total = profile.total_dim();
  t_offset_.resize(total);
  s_offset_.resize(total);
  for (std::size_t linear = 0; linear < total; ++linear) {
    std::size_t t = 0, s = 0;
    for (int k = 0; k < profile.mode_count(); ++k) {
      const std::size_t part =
          static_cast<std::size_t>(profile.digit(linear, k)) * profile.stride(k);
      if (cls.contains(k)) {
        t += part;
      } else {
        s += part;
      }
    }
    t_offset_[linear] = t;
    s_offset_[linear] = s;
  }
}

}  // namespace qsep
