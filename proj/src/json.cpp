#include "notation/json.hpp"

#include <cstdint>

namespace notation {

namespace json_detail {

namespace {

constexpr char kHex[] = "0123456789abcdef";

bool is_digit(char c) { return c >= '0' && c <= '9'; }

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

}  // namespace

void append_quoted(std::string& out, std::string_view s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\b':
        out += "\\b";
        break;
      case '\f':
        out += "\\f";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\r':
        out += "\\r";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          out += "\\u00";
          out += kHex[(c >> 4) & 0xF];
          out += kHex[c & 0xF];
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

std::string quoted(std::string_view s) {
  std::string out;
  append_quoted(out, s);
  return out;
}

bool valid_utf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t extra = 0;
    std::uint32_t cp = 0;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      extra = 1;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      extra = 2;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      extra = 3;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + extra >= s.size()) return false;
    for (std::size_t k = 1; k <= extra; ++k) {
      const auto cc = static_cast<unsigned char>(s[i + k]);
      if ((cc & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    // Overlong forms, surrogates, out-of-range.
    if ((extra == 1 && cp < 0x80) || (extra == 2 && cp < 0x800) ||
        (extra == 3 && cp < 0x10000) || cp > 0x10FFFF ||
        (cp >= 0xD800 && cp <= 0xDFFF)) {
      return false;
    }
    i += extra + 1;
  }
  return true;
}

std::string read_quoted(std::string_view text, std::size_t& pos, std::size_t base) {
  if (pos >= text.size() || text[pos] != '"') {
    throw SyntaxError(base + pos, "expected '\"'");
  }
  const std::size_t start = pos;
  ++pos;
  std::string out;
  while (true) {
    if (pos >= text.size()) throw SyntaxError(base + start, "unterminated string");
    const char c = text[pos];
    if (c == '"') {
      ++pos;
      break;
    }
    if (static_cast<unsigned char>(c) < 0x20) {
      throw SyntaxError(base + pos, "raw control character in string");
    }
    if (c != '\\') {
      out += c;
      ++pos;
      continue;
    }
    if (pos + 1 >= text.size()) throw SyntaxError(base + pos, "unterminated escape");
    const char e = text[pos + 1];
    pos += 2;
    switch (e) {
      case '"':
        out += '"';
        break;
      case '\\':
        out += '\\';
        break;
      case '/':
        out += '/';
        break;
      case 'b':
        out += '\b';
        break;
      case 'f':
        out += '\f';
        break;
      case 'n':
        out += '\n';
        break;
      case 'r':
        out += '\r';
        break;
      case 't':
        out += '\t';
        break;
      case 'u': {
        auto read4 = [&](std::size_t at) -> std::uint32_t {
          if (at + 4 > text.size()) throw SyntaxError(base + at, "short \\u escape");
          std::uint32_t v = 0;
          for (std::size_t k = 0; k < 4; ++k) {
            const int h = hex_value(text[at + k]);
            if (h < 0) throw SyntaxError(base + at + k, "bad hex digit");
            v = (v << 4) | static_cast<std::uint32_t>(h);
          }
          return v;
        };
        std::uint32_t cp = read4(pos);
        pos += 4;
        if (cp >= 0xD800 && cp <= 0xDBFF) {
          if (pos + 1 >= text.size() || text[pos] != '\\' || text[pos + 1] != 'u') {
            throw SyntaxError(base + pos, "unpaired high surrogate");
          }
          const std::uint32_t lo = read4(pos + 2);
          if (lo < 0xDC00 || lo > 0xDFFF) throw SyntaxError(base + pos, "bad low surrogate");
          pos += 6;
          cp = 0x10000 + ((cp - 0xD800) << 10) + (lo - 0xDC00);
        } else if (cp >= 0xDC00 && cp <= 0xDFFF) {
          throw SyntaxError(base + pos, "unpaired low surrogate");
        }
        append_utf8(out, cp);
        break;
      }
      default:
        throw SyntaxError(base + pos - 1, "bad escape");
    }
  }
  if (!valid_utf8(out)) throw SyntaxError(base + start, "invalid UTF-8 in string");
  return out;
}

std::size_t scan_number(std::string_view t, std::size_t pos) {
  std::size_t i = pos;
  const std::size_t n = t.size();
  if (i < n && t[i] == '-') ++i;
  if (i >= n) return 0;
  if (t[i] == '0') {
    ++i;
  } else if (is_digit(t[i])) {
    while (i < n && is_digit(t[i])) ++i;
  } else {
    return 0;
  }
  if (i + 1 < n && t[i] == '.' && is_digit(t[i + 1])) {
    i += 1;
    while (i < n && is_digit(t[i])) ++i;
  }
  if (i < n && (t[i] == 'e' || t[i] == 'E')) {
    std::size_t j = i + 1;
    if (j < n && (t[j] == '+' || t[j] == '-')) ++j;
    if (j < n && is_digit(t[j])) {
      while (j < n && is_digit(t[j])) ++j;
      i = j;
    }
  }
  return i - pos;
}

}  // namespace json_detail

namespace {

void encode_into(std::string& out, const Value& v, const JsonStyle& style, int depth) {
  const bool pretty = style.spacing == JsonStyle::Spacing::kPretty;
  auto newline = [&](int d) {
    out += '\n';
    out.append(static_cast<std::size_t>(d * style.indent_width), ' ');
  };
  switch (v.kind()) {
    case Kind::kNull:
      out += "null";
      return;
    case Kind::kBool:
      out += v.as_bool() ? "true" : "false";
      return;
    case Kind::kNumber:
      out += v.as_number().literal();
      return;
    case Kind::kText:
      json_detail::append_quoted(out, v.as_text());
      return;
    case Kind::kArray: {
      const auto& a = v.as_array();
      out += '[';
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (i > 0) out += ',';
        if (pretty) newline(depth + 1);
        encode_into(out, a[i], style, depth + 1);
      }
      if (pretty && !a.empty()) newline(depth);
      out += ']';
      return;
    }
    case Kind::kObject: {
      const auto& o = v.as_object();
      out += '{';
      bool first = true;
      for (const auto& [k, child] : o) {
        if (!first) out += ',';
        first = false;
        if (pretty) newline(depth + 1);
        json_detail::append_quoted(out, k);
        out += pretty ? ": " : ":";
        encode_into(out, child, style, depth + 1);
      }
      if (pretty && !o.empty()) newline(depth);
      out += '}';
      return;
    }
  }
}

class Reader {
 public:
  explicit Reader(std::string_view text) : t_(text) {}

  Value document() {
    skip_ws();
    Value v = value(0);
    skip_ws();
    if (pos_ != t_.size()) throw SyntaxError(pos_, "trailing content after JSON value");
    return v;
  }

 private:
  static constexpr int kMaxDepth = 512;

  void skip_ws() {
    while (pos_ < t_.size() &&
           (t_[pos_] == ' ' || t_[pos_] == '\t' || t_[pos_] == '\n' || t_[pos_] == '\r')) {
      ++pos_;
    }
  }

  void expect_literal(std::string_view lit) {
    if (t_.substr(pos_, lit.size()) != lit) throw SyntaxError(pos_, "invalid literal");
    pos_ += lit.size();
  }

  Value value(int depth) {
    if (depth > kMaxDepth) throw SyntaxError(pos_, "nesting too deep");
    if (pos_ >= t_.size()) throw SyntaxError(pos_, "unexpected end of input");
    const char c = t_[pos_];
    switch (c) {
      case '{':
        return object(depth);
      case '[':
        return array(depth);
      case '"':
        return Value(json_detail::read_quoted(t_, pos_));
      case 't':
        expect_literal("true");
        return Value(true);
      case 'f':
        expect_literal("false");
        return Value(false);
      case 'n':
        expect_literal("null");
        return Value();
      default:
        break;
    }
    const std::size_t len = json_detail::scan_number(t_, pos_);
    if (len == 0) throw SyntaxError(pos_, std::string("unexpected character '") + c + "'");
    auto n = Number::parse(t_.substr(pos_, len));
    if (!n) throw SyntaxError(pos_, "malformed number");
    pos_ += len;
    // Literals like "1." or "01" leave a digit/dot/exponent behind.
    if (pos_ < t_.size() && (t_[pos_] == '.' || t_[pos_] == 'e' || t_[pos_] == 'E' ||
                             (t_[pos_] >= '0' && t_[pos_] <= '9'))) {
      throw SyntaxError(pos_, "malformed number");
    }
    return Value(*std::move(n));
  }

  Value array(int depth) {
    ++pos_;
    Array a;
    skip_ws();
    if (pos_ < t_.size() && t_[pos_] == ']') {
      ++pos_;
      return Value(std::move(a));
    }
    while (true) {
      skip_ws();
      a.push_back(value(depth + 1));
      skip_ws();
      if (pos_ >= t_.size()) throw SyntaxError(pos_, "unterminated array");
      if (t_[pos_] == ',') {
        ++pos_;
        continue;
      }
      if (t_[pos_] == ']') {
        ++pos_;
        return Value(std::move(a));
      }
      throw SyntaxError(pos_, "expected ',' or ']'");
    }
  }

  Value object(int depth) {
    ++pos_;
    Object o;
    skip_ws();
    if (pos_ < t_.size() && t_[pos_] == '}') {
      ++pos_;
      return Value(std::move(o));
    }
    while (true) {
      skip_ws();
      const std::size_t key_pos = pos_;
      if (pos_ >= t_.size() || t_[pos_] != '"') throw SyntaxError(pos_, "expected object key");
      std::string key = json_detail::read_quoted(t_, pos_);
      skip_ws();
      if (pos_ >= t_.size() || t_[pos_] != ':') throw SyntaxError(pos_, "expected ':'");
      ++pos_;
      skip_ws();
      Value child = value(depth + 1);
      if (o.contains(key)) throw DuplicateKey(std::move(key), key_pos);
      o.insert(std::move(key), std::move(child));
      skip_ws();
      if (pos_ >= t_.size()) throw SyntaxError(pos_, "unterminated object");
      if (t_[pos_] == ',') {
        ++pos_;
        continue;
      }
      if (t_[pos_] == '}') {
        ++pos_;
        return Value(std::move(o));
      }
      throw SyntaxError(pos_, "expected ',' or '}'");
    }
  }

  std::string_view t_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string encode_json(const Value& v, JsonStyle style) {
  std::string out;
  encode_into(out, v, style, 0);
  return out;
}

Value decode_json(std::string_view text) { return Reader(text).document(); }

}  // namespace notation
