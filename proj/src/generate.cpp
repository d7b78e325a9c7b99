#include "notation/generate.hpp"

#include <array>
#include <random>
#include <stdexcept>

namespace notation {

namespace {

// Strings that stress every codec's delimiter handling.
constexpr std::array<std::string_view, 34> kDelimiterPool = {
    "",
    "a,b",
    "x:y",
    "key: value",
    "say \"hi\"",
    "(paren)",
    "A(1,2)",
    "line\nbreak",
    "tab\there",
    "cr\rhere",
    "42",
    "007",
    "3.14",
    "-1",
    "1e5",
    "true",
    "false",
    "null",
    " lead",
    "trail ",
    "- dash",
    "-",
    "[x]",
    "{y}",
    "back\\slash",
    "class A: x",
    "---",
    "#hash",
    "caf\xc3\xa9",
    "\xe6\x97\xa5\xe6\x9c\xac",
    "Blue Lake Trail",
    "a\"b,c:d",
    "value",
    "\x01\x1f",
};

constexpr std::array<std::string_view, 12> kDelimiterKeys = {
    "a,b", "x:y", "", "with space", "-dash", "[k]", "q\"uote", "class",
    "A", "value", "{k}", "n\nl",
};

constexpr std::array<std::string_view, 14> kNumberPool = {
    "0",   "-0",    "7",    "-42",   "7.5",  "9.2",  "-0.25",
    "1e5", "2.5E-3", "1.0", "100",   "3",    "123456789012345678901234567890",
    "5.1",
};

// Code points used for random text. Multi-byte entries keep output valid UTF-8.
constexpr std::array<std::string_view, 30> kAlphabet = {
    "a", "b", "c", "x", "y", "z", "A", "Q", "0", "1", "9", " ", ",", ":",
    "\"", "(", ")", "{", "}", "[", "]", "-", "\n", "\\", "_", ".",
    "\xc3\xa9", "\xe6\x97\xa5", "\t", "#",
};

constexpr std::array<std::string_view, 16> kKeyAlphabet = {
    "a", "b", "c", "d", "e", "n", "m", "i", "d", "K", "_", "0", "1", "x", "y", "z",
};

constexpr std::array<std::string_view, 10> kShortWords = {
    "ana", "luis", "sam", "Boulder", "spring", "ok", "red", "blue", "x1", "lake",
};

class Gen {
 public:
  Gen(std::uint64_t seed, const GenProfile& p) : rng_(seed), p_(p) {}

  // Uniform in [0, n). libstdc++ distributions are not portable, so draw
  // directly from the engine.
  std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(rng_() % n); }
  bool chance(unsigned percent) { return below(100) < percent; }

  Value value(int depth) {
    if (depth >= p_.max_depth) return scalar();
    switch (below(depth == 0 ? 4 : 5)) {
      case 0:
        return array(depth);
      case 1:
      case 2:
        return object(depth);
      case 3:
        return depth == 0 ? object(depth) : scalar();
      default:
        return scalar();
    }
  }

  Value scalar() {
    switch (below(6)) {
      case 0:
        return Value();
      case 1:
        return Value(chance(50));
      case 2:
        return Value::number(kNumberPool[below(kNumberPool.size())]);
      default:
        return Value(text());
    }
  }

  std::string text() {
    const bool delimited = p_.shape == GenShape::kDelimiterHeavy ? chance(70) : chance(25);
    if (delimited) return std::string(kDelimiterPool[below(kDelimiterPool.size())]);
    std::string out;
    const std::size_t len = below(12);
    for (std::size_t i = 0; i < len; ++i) out += kAlphabet[below(kAlphabet.size())];
    return out;
  }

  std::string key() {
    const bool delimited = p_.shape == GenShape::kDelimiterHeavy ? chance(40) : chance(10);
    if (delimited) return std::string(kDelimiterKeys[below(kDelimiterKeys.size())]);
    std::string out;
    const std::size_t len = 1 + below(p_.max_key_len);
    for (std::size_t i = 0; i < len; ++i) out += kKeyAlphabet[below(kKeyAlphabet.size())];
    return out;
  }

  std::vector<std::string> distinct_keys(std::size_t n) {
    std::vector<std::string> keys;
    while (keys.size() < n) {
      std::string k = key();
      bool dup = false;
      for (const auto& existing : keys) dup = dup || existing == k;
      if (!dup) keys.push_back(std::move(k));
    }
    return keys;
  }

  Value array(int depth) {
    // Sometimes emit a uniform run of objects so tables and classes appear.
    // The objects sit one level below the array, so this needs spare depth.
    if (depth + 1 < p_.max_depth && chance(30)) return uniform_objects(depth, 2 + below(p_.max_array_len > 2 ? p_.max_array_len - 1 : 1));
    Array a;
    const std::size_t len = below(p_.max_array_len + 1);
    const bool primitive = chance(50);
    for (std::size_t i = 0; i < len; ++i) a.push_back(primitive ? scalar() : value(depth + 1));
    return Value(std::move(a));
  }

  Value object(int depth) {
    Object o;
    const std::size_t n = below(p_.max_object_size + 1);
    for (auto& k : distinct_keys(n)) o.insert(std::move(k), value(depth + 1));
    return Value(std::move(o));
  }

  Value uniform_objects(int depth, std::size_t rows) {
    const auto keys = distinct_keys(1 + below(p_.max_object_size));
    const bool nested = depth + 1 < p_.max_depth && chance(25);
    Array a;
    for (std::size_t r = 0; r < rows; ++r) {
      Object o;
      for (const auto& k : keys) o.insert(k, nested ? value(depth + 2) : scalar());
      a.push_back(Value(std::move(o)));
    }
    return Value(std::move(a));
  }

  Value short_cell() {
    switch (below(4)) {
      case 0:
        return Value(static_cast<std::int64_t>(below(1000)));
      case 1:
        return Value(chance(50));
      case 2:
        return Value::number(kNumberPool[below(kNumberPool.size())]);
      default:
        return Value(std::string(kShortWords[below(kShortWords.size())]));
    }
  }

  Value table() {
    const std::size_t rows = 3 + below(p_.max_array_len > 3 ? p_.max_array_len - 2 : 1);
    const std::size_t cols = 2 + below(p_.max_object_size > 2 ? p_.max_object_size - 1 : 1);
    const auto keys = distinct_keys(cols);
    Array a;
    for (std::size_t r = 0; r < rows; ++r) {
      Object o;
      for (const auto& k : keys) o.insert(k, short_cell());
      a.push_back(Value(std::move(o)));
    }
    return Value(std::move(a));
  }

 private:
  std::mt19937_64 rng_;
  GenProfile p_;
};

}  // namespace

GenProfile GenProfile::delimiter_heavy() {
  GenProfile p;
  p.shape = GenShape::kDelimiterHeavy;
  return p;
}

GenProfile GenProfile::tabular() {
  GenProfile p;
  p.shape = GenShape::kTabular;
  p.max_array_len = 12;
  p.max_key_len = 8;
  p.max_object_size = 5;
  return p;
}

GenProfile GenProfile::scalar() {
  GenProfile p;
  p.max_depth = 0;
  return p;
}

GenProfile GenProfile::by_name(std::string_view name) {
  if (name == "default" || name == "mixed") return mixed();
  if (name == "delimiter" || name == "delimiter-heavy" || name == "delimiter_heavy") {
    return delimiter_heavy();
  }
  if (name == "tabular") return tabular();
  if (name == "scalar") return scalar();
  throw std::invalid_argument("unknown generator profile: " + std::string(name));
}

Value generate(std::uint64_t seed, const GenProfile& profile) {
  if (profile.max_depth < 0 || profile.max_depth > 8 || profile.max_array_len > 64 ||
      profile.max_key_len < 1 || profile.max_key_len > 16) {
    throw std::invalid_argument("generator profile out of bounds");
  }
  Gen g(seed, profile);
  if (profile.shape == GenShape::kTabular) return g.table();
  return g.value(0);
}

}  // namespace notation
