#ifndef NOTATION_TOON_HPP_
#define NOTATION_TOON_HPP_

#include <cstddef>
#include <string>
#include <string_view>

#include "notation/errors.hpp"
#include "notation/value.hpp"

namespace notation {

// Key under which a non-object root is wrapped.
inline constexpr std::string_view kToonRootKey = "value";

struct ToonGrammarConfig {
  int indent_width = 2;
  std::size_t table_min_rows = 2;
  bool blank_line_between_top_level = true;
  // Set when the document is a wrapped non-object root. The decoder then
  // requires exactly one `value` field and returns its content.
  bool root_wrapped = false;

  // Throws std::invalid_argument on indent_width < 1 or table_min_rows < 2.
  void validate() const;

  // Default config with root_wrapped set iff `v` needs wrapping.
  static ToonGrammarConfig for_value(const Value& v);
};

enum class ArrayLayout { kPrimitiveInline, kUniformTable, kItemList };

struct ArrayClass {
  ArrayLayout layout = ArrayLayout::kItemList;
  StructSignature fields;  // set for kUniformTable
};

ArrayClass classify_array(const Array& a, const ToonGrammarConfig& cfg = {});

// Output has no trailing newline. Non-object roots are wrapped as
// `value: <encoding>`.
std::string encode_toon(const Value& v, const ToonGrammarConfig& cfg = {});

// Strict decoder. Throws SyntaxError, LengthMismatch, ArityMismatch,
// IndentError or DuplicateKey. Line numbers in errors are 1-based.
Value decode_toon(std::string_view text, const ToonGrammarConfig& cfg = {});

namespace toon_detail {
// True when a string scalar must be quoted to decode back as the same string.
bool scalar_needs_quotes(std::string_view s);
bool key_needs_quotes(std::string_view s);
}  // namespace toon_detail

}  // namespace notation

#endif  // NOTATION_TOON_HPP_
