#ifndef NOTATION_ROUNDTRIP_HPP_
#define NOTATION_ROUNDTRIP_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "notation/format.hpp"
#include "notation/generate.hpp"

namespace notation {

struct Counterexample {
  std::uint64_t seed = 0;
  Format format = Format::kJson;
  std::string json;     // minimal JSON of the generated value
  std::string message;  // decode error or "value mismatch"
};

struct RoundtripSummary {
  std::size_t count = 0;
  std::size_t failures = 0;
  std::optional<Counterexample> first;  // lowest failing seed
};

// Checks one value through JSON, TOON and TRON. Empty when all three agree.
std::optional<Counterexample> check_roundtrip(const Value& v, std::uint64_t seed);

// Values are generate(first_seed + i, profile) for i in [0, count).
RoundtripSummary roundtrip_serial(std::uint64_t first_seed, std::size_t count,
                                  const GenProfile& profile);
// OpenMP version; same result as the serial one.
RoundtripSummary roundtrip_parallel(std::uint64_t first_seed, std::size_t count,
                                    const GenProfile& profile);

}  // namespace notation

#endif  // NOTATION_ROUNDTRIP_HPP_
