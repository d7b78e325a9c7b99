#include "notation/format.hpp"

#include "notation/json.hpp"
#include "notation/toon.hpp"
#include "notation/tron.hpp"

namespace notation {

std::string_view format_name(Format f) {
  switch (f) {
    case Format::kJson:
      return "json";
    case Format::kToon:
      return "toon";
    case Format::kTron:
      return "tron";
  }
  return "json";
}

std::string_view format_display_name(Format f) {
  switch (f) {
    case Format::kJson:
      return "JSON";
    case Format::kToon:
      return "TOON";
    case Format::kTron:
      return "TRON";
  }
  return "JSON";
}

std::optional<Format> parse_format(std::string_view name) {
  std::string lower;
  for (char c : name) lower += static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c);
  if (lower == "json") return Format::kJson;
  if (lower == "toon") return Format::kToon;
  if (lower == "tron") return Format::kTron;
  return std::nullopt;
}

std::string encode_as(const Value& v, Format f) {
  switch (f) {
    case Format::kJson:
      return encode_json(v);
    case Format::kToon:
      return encode_toon(v, ToonGrammarConfig::for_value(v));
    case Format::kTron:
      return encode_tron(v);
  }
  return encode_json(v);
}

Value decode_as(std::string_view text, Format f, bool toon_root_wrapped) {
  switch (f) {
    case Format::kJson:
      return decode_json(text);
    case Format::kToon: {
      ToonGrammarConfig cfg;
      cfg.root_wrapped = toon_root_wrapped;
      return decode_toon(text, cfg);
    }
    case Format::kTron:
      return decode_tron(text);
  }
  return decode_json(text);
}

}  // namespace notation
