// Shared helpers for the unit tests and the acceptance binary.
#ifndef NOTATION_TESTS_SUPPORT_HPP_
#define NOTATION_TESTS_SUPPORT_HPP_

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "notation/agent.hpp"
#include "notation/value.hpp"

#ifndef NOTATION_FIXTURES_DIR
#error "NOTATION_FIXTURES_DIR must be defined by the build"
#endif

namespace notation::testing {

inline std::string fixture_path(const std::string& name) {
  return std::string(NOTATION_FIXTURES_DIR) + "/" + name;
}

inline std::string read_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name), std::ios::binary);
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// The hiking sample, built by hand so it does not depend on any decoder.
inline Value hikes_sample() {
  auto hike = [](int id, const char* name, const char* km) {
    return Value(Object{{"id", Value(id)}, {"name", Value(name)}, {"distanceKm", Value::number(km)}});
  };
  return Value(Object{
      {"context", Value(Object{{"task", Value("Our favorite hikes")},
                               {"location", Value("Boulder")},
                               {"season", Value("spring_2025")}})},
      {"friends", Value(Array{Value("ana"), Value("luis"), Value("sam")})},
      {"hikes", Value(Array{hike(1, "Blue Lake Trail", "7.5"), hike(2, "Ridge Overlook", "9.2"),
                            hike(3, "Wildflower Loop", "5.1")})},
  });
}

// Undoes display wrapping of a TRON listing. The class block is kept as is.
// In the body, a line break inside a string literal stood for a space and any
// other line break is dropped.
inline std::string unwrap_tron_display(const std::string& text) {
  const std::size_t split = text.find("\n\n");
  if (split == std::string::npos) throw std::invalid_argument("no class block separator");
  std::string out = text.substr(0, split + 2);
  bool in_string = false;
  for (std::size_t i = split + 2; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '\n') {
      if (in_string) out += ' ';
      continue;
    }
    out += c;
    if (in_string && c == '\\' && i + 1 < text.size()) {
      out += text[++i];
    } else if (c == '"') {
      in_string = !in_string;
    }
  }
  return out;
}

inline std::vector<ToolSchema> trail_catalog() { return parse_catalog(read_fixture("agent/catalog.json")); }
inline TableExecutor trail_executor() { return parse_executor(read_fixture("agent/executor.json")); }
inline Trace trail_trace() { return trace_from_records(parse_trace_records(read_fixture("agent/trace.jsonl"))); }

}  // namespace notation::testing

#endif  // NOTATION_TESTS_SUPPORT_HPP_
