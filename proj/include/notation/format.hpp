#ifndef NOTATION_FORMAT_HPP_
#define NOTATION_FORMAT_HPP_

#include <optional>
#include <string>
#include <string_view>

#include "notation/value.hpp"

namespace notation {

enum class Format { kJson, kToon, kTron };

std::string_view format_name(Format f);  // "json", "toon", "tron"
std::string_view format_display_name(Format f);  // "JSON", "TOON", "TRON"
std::optional<Format> parse_format(std::string_view name);

// Canonical single-document encodings: minimal JSON, default TOON (with the
// root wrapped when needed), default TRON.
std::string encode_as(const Value& v, Format f);

// Inverse of encode_as for object roots. For TOON, `toon_root_wrapped`
// selects the wrapped-root reading.
Value decode_as(std::string_view text, Format f, bool toon_root_wrapped = false);

}  // namespace notation

#endif  // NOTATION_FORMAT_HPP_
