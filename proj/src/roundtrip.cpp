#include "notation/roundtrip.hpp"

#include <exception>
#include <vector>

#include "notation/json.hpp"

namespace notation {

std::optional<Counterexample> check_roundtrip(const Value& v, std::uint64_t seed) {
  for (Format f : {Format::kJson, Format::kToon, Format::kTron}) {
    std::string message;
    try {
      const Value back = decode_as(encode_as(v, f), f, f == Format::kToon && !v.is_object());
      if (equals(back, v, true)) continue;
      message = "value mismatch";
    } catch (const std::exception& e) {
      message = e.what();
    }
    return Counterexample{seed, f, encode_json(v), std::move(message)};
  }
  return std::nullopt;
}

RoundtripSummary roundtrip_serial(std::uint64_t first_seed, std::size_t count,
                                  const GenProfile& profile) {
  RoundtripSummary s;
  s.count = count;
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t seed = first_seed + i;
    if (auto cx = check_roundtrip(generate(seed, profile), seed)) {
      ++s.failures;
      if (!s.first) s.first = std::move(cx);
    }
  }
  return s;
}

RoundtripSummary roundtrip_parallel(std::uint64_t first_seed, std::size_t count,
                                    const GenProfile& profile) {
  std::vector<char> failed(count, 0);
  const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic, 64)
  for (long long i = 0; i < n; ++i) {
    const std::uint64_t seed = first_seed + static_cast<std::uint64_t>(i);
    failed[i] = check_roundtrip(generate(seed, profile), seed).has_value();
  }
  RoundtripSummary s;
  s.count = count;
  for (std::size_t i = 0; i < count; ++i) {
    if (!failed[i]) continue;
    ++s.failures;
    if (!s.first) {
      const std::uint64_t seed = first_seed + i;
      s.first = check_roundtrip(generate(seed, profile), seed);
    }
  }
  return s;
}

}  // namespace notation
