#ifndef NOTATION_GENERATE_HPP_
#define NOTATION_GENERATE_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "notation/value.hpp"

namespace notation {

enum class GenShape {
  kMixed,           // arbitrary trees
  kDelimiterHeavy,  // mixed trees with strings/keys drawn mostly from the delimiter pool
  kTabular,         // an array of >= 3 objects sharing one signature, scalar cells
};

struct GenProfile {
  int max_depth = 4;                // <= 8; 0 yields a scalar
  std::size_t max_array_len = 6;    // <= 64
  std::size_t max_key_len = 12;     // <= 16
  std::size_t max_object_size = 6;
  GenShape shape = GenShape::kMixed;

  static GenProfile mixed() { return {}; }
  static GenProfile delimiter_heavy();
  static GenProfile tabular();
  static GenProfile scalar();

  // Accepts "default", "mixed", "delimiter", "tabular", "scalar".
  static GenProfile by_name(std::string_view name);
};

// Pure function of (seed, profile). Throws std::invalid_argument when the
// profile exceeds its bounds.
Value generate(std::uint64_t seed, const GenProfile& profile);

}  // namespace notation

#endif  // NOTATION_GENERATE_HPP_
