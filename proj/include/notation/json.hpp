#ifndef NOTATION_JSON_HPP_
#define NOTATION_JSON_HPP_

#include <cstddef>
#include <string>
#include <string_view>

#include "notation/errors.hpp"
#include "notation/value.hpp"

namespace notation {

struct JsonStyle {
  enum class Spacing { kMinimal, kPretty };
  Spacing spacing = Spacing::kMinimal;
  int indent_width = 2;

  static JsonStyle minimal() { return {}; }
  static JsonStyle pretty(int indent = 2) { return {Spacing::kPretty, indent}; }
};

std::string encode_json(const Value& v, JsonStyle style = JsonStyle::minimal());

// Strict: one value, optional surrounding whitespace, nothing else.
// Throws SyntaxError or DuplicateKey.
Value decode_json(std::string_view text);

namespace json_detail {

// Quoted JSON string literal. Quotes, backslashes and control characters are
// the only escapes; non-ASCII is emitted raw.
void append_quoted(std::string& out, std::string_view s);
std::string quoted(std::string_view s);

// Parses a string literal starting at text[pos] == '"'; advances pos past the
// closing quote. Offsets in errors are relative to `text` plus `base`.
std::string read_quoted(std::string_view text, std::size_t& pos, std::size_t base = 0);

// Scans the longest number literal at pos; returns its length (0 if none).
std::size_t scan_number(std::string_view text, std::size_t pos);

bool valid_utf8(std::string_view s);

}  // namespace json_detail

}  // namespace notation

#endif  // NOTATION_JSON_HPP_
