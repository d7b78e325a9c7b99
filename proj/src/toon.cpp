#include "notation/toon.hpp"

#include <stdexcept>
#include <vector>

#include "notation/json.hpp"

namespace notation {

namespace toon_detail {

namespace {

bool has_control(std::string_view s) {
  for (char c : s) {
    if (static_cast<unsigned char>(c) < 0x20 || c == 0x7f) return true;
  }
  return false;
}

bool edge_space(std::string_view s) {
  auto ws = [](char c) { return c == ' ' || c == '\t'; };
  return !s.empty() && (ws(s.front()) || ws(s.back()));
}

}  // namespace

bool scalar_needs_quotes(std::string_view s) {
  if (s.empty() || s == "true" || s == "false" || s == "null" || Number::is_literal(s)) {
    return true;
  }
  return s.find_first_of(",:\"[]{}") != std::string_view::npos || has_control(s) ||
         edge_space(s);
}

bool key_needs_quotes(std::string_view s) {
  if (s.empty() || s.front() == '-') return true;
  return s.find_first_of(",:\"[]{}") != std::string_view::npos || has_control(s) ||
         edge_space(s);
}

}  // namespace toon_detail

using toon_detail::key_needs_quotes;
using toon_detail::scalar_needs_quotes;

void ToonGrammarConfig::validate() const {
  if (indent_width < 1) throw std::invalid_argument("indent_width must be >= 1");
  if (table_min_rows < 2) throw std::invalid_argument("table_min_rows must be >= 2");
}

ToonGrammarConfig ToonGrammarConfig::for_value(const Value& v) {
  ToonGrammarConfig cfg;
  cfg.root_wrapped = !v.is_object();
  return cfg;
}

ArrayClass classify_array(const Array& a, const ToonGrammarConfig& cfg) {
  bool all_scalar = true;
  for (const auto& e : a) all_scalar = all_scalar && e.is_scalar();
  if (all_scalar) return {ArrayLayout::kPrimitiveInline, {}};

  if (a.size() < cfg.table_min_rows || !a.front().is_object() || a.front().as_object().empty()) {
    return {ArrayLayout::kItemList, {}};
  }
  const auto sig = *signature(a.front());
  for (const auto& e : a) {
    if (!e.is_object()) return {ArrayLayout::kItemList, {}};
    const auto& o = e.as_object();
    if (o.size() != sig.keys.size()) return {ArrayLayout::kItemList, {}};
    std::size_t i = 0;
    for (const auto& [k, v] : o) {
      if (k != sig.keys[i++]) return {ArrayLayout::kItemList, {}};
      if (!v.is_scalar()) return {ArrayLayout::kItemList, {}};
      if (v.is_text() && v.as_text().empty()) return {ArrayLayout::kItemList, {}};
    }
  }
  return {ArrayLayout::kUniformTable, sig};
}

namespace {

// ---------------------------------------------------------------- encoder

class Encoder {
 public:
  explicit Encoder(const ToonGrammarConfig& cfg) : cfg_(cfg) {}

  std::string run(const Value& v) {
    if (v.is_object()) {
      fields(v.as_object(), 0, true);
    } else {
      Object wrapper;
      wrapper.insert(std::string(kToonRootKey), v);
      fields(wrapper, 0, true);
    }
    return std::move(out_);
  }

 private:
  void begin_line(int depth) {
    if (!first_line_) out_ += '\n';
    first_line_ = false;
    out_.append(static_cast<std::size_t>(depth * cfg_.indent_width), ' ');
  }

  static std::string key_token(std::string_view k) {
    return key_needs_quotes(k) ? json_detail::quoted(k) : std::string(k);
  }

  static std::string scalar_token(const Value& v) {
    switch (v.kind()) {
      case Kind::kNull:
        return "null";
      case Kind::kBool:
        return v.as_bool() ? "true" : "false";
      case Kind::kNumber:
        return v.as_number().literal();
      case Kind::kText:
        return scalar_needs_quotes(v.as_text()) ? json_detail::quoted(v.as_text())
                                                : v.as_text();
      default:
        throw std::logic_error("scalar_token on container");
    }
  }

  void fields(const Object& o, int depth, bool top_level) {
    bool first = true;
    for (const auto& [k, v] : o) {
      if (top_level && !first && cfg_.blank_line_between_top_level) out_ += '\n';
      first = false;
      begin_line(depth);
      out_ += key_token(k);
      if (v.is_scalar()) {
        out_ += ": ";
        out_ += scalar_token(v);
      } else if (v.is_object()) {
        out_ += ':';
        fields(v.as_object(), depth + 1, false);
      } else {
        array(v.as_array(), depth);
      }
    }
  }

  // Emits `[N]...:` after whatever head is already on the current line.
  void array(const Array& a, int depth) {
    out_ += '[';
    out_ += std::to_string(a.size());
    out_ += ']';
    const ArrayClass cls = classify_array(a, cfg_);
    switch (cls.layout) {
      case ArrayLayout::kPrimitiveInline: {
        out_ += ':';
        for (std::size_t i = 0; i < a.size(); ++i) {
          out_ += i == 0 ? ' ' : ',';
          out_ += scalar_token(a[i]);
        }
        return;
      }
      case ArrayLayout::kUniformTable: {
        out_ += '{';
        for (std::size_t i = 0; i < cls.fields.keys.size(); ++i) {
          if (i > 0) out_ += ',';
          out_ += key_token(cls.fields.keys[i]);
        }
        out_ += "}:";
        for (const auto& row : a) {
          begin_line(depth + 1);
          bool first = true;
          for (const auto& [k, cell] : row.as_object()) {
            if (!first) out_ += ',';
            first = false;
            out_ += scalar_token(cell);
          }
        }
        return;
      }
      case ArrayLayout::kItemList: {
        out_ += ':';
        for (const auto& item : a) list_item(item, depth + 1);
        return;
      }
    }
  }

  void list_item(const Value& v, int depth) {
    begin_line(depth);
    if (v.is_scalar()) {
      out_ += "- ";
      out_ += scalar_token(v);
    } else if (v.is_array()) {
      out_ += "- ";
      array(v.as_array(), depth);
    } else {
      out_ += '-';
      fields(v.as_object(), depth + 1, false);
    }
  }

  const ToonGrammarConfig& cfg_;
  std::string out_;
  bool first_line_ = true;
};

// ---------------------------------------------------------------- decoder

struct Line {
  std::size_t number = 0;  // 1-based
  int depth = 0;
  std::string_view content;
};

struct Header {
  std::size_t length = 0;
  bool has_fields = false;
  std::vector<std::string> fields;
};

class Decoder {
 public:
  Decoder(std::string_view text, const ToonGrammarConfig& cfg) : cfg_(cfg) { split(text); }

  Value run() {
    Object root = object_fields(0);
    if (i_ != lines_.size()) {
      throw IndentError(lines_[i_].number, "unexpected indentation");
    }
    if (!cfg_.root_wrapped) return Value(std::move(root));
    if (root.size() != 1 || root.begin()->first != kToonRootKey) {
      throw SyntaxError(1, "wrapped root must hold exactly one `value` field");
    }
    return root.begin()->second;
  }

 private:
  void split(std::string_view text) {
    if (!text.empty() && text.back() == '\n') text.remove_suffix(1);
    if (text.empty()) return;
    std::size_t number = 0;
    std::size_t start = 0;
    bool pending_blank = false;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      std::string_view raw = text.substr(start, end - start);
      ++number;
      start = end + 1;
      if (raw.empty()) {
        // Blank lines only separate top-level entries.
        if (lines_.empty() || pending_blank) throw SyntaxError(number, "unexpected blank line");
        pending_blank = true;
        if (end == text.size()) throw SyntaxError(number, "trailing blank line");
        continue;
      }
      std::size_t spaces = 0;
      while (spaces < raw.size() && raw[spaces] == ' ') ++spaces;
      if (spaces < raw.size() && raw[spaces] == '\t') {
        throw IndentError(number, "tab in indentation");
      }
      if (spaces == raw.size()) throw IndentError(number, "whitespace-only line");
      if (spaces % static_cast<std::size_t>(cfg_.indent_width) != 0) {
        throw IndentError(number, "indent is not a multiple of " +
                                      std::to_string(cfg_.indent_width));
      }
      const int depth = static_cast<int>(spaces / static_cast<std::size_t>(cfg_.indent_width));
      if (pending_blank && depth != 0) {
        throw SyntaxError(number, "blank line inside a nested block");
      }
      pending_blank = false;
      lines_.push_back({number, depth, raw.substr(spaces)});
      if (end == text.size()) break;
    }
  }

  bool at_depth(int depth) const { return i_ < lines_.size() && lines_[i_].depth == depth; }

  void reject_deeper(int depth) const {
    if (i_ < lines_.size() && lines_[i_].depth > depth) {
      throw IndentError(lines_[i_].number, "unexpected indentation");
    }
  }

  Object object_fields(int depth) {
    Object o;
    while (true) {
      reject_deeper(depth);
      if (!at_depth(depth)) break;
      const Line line = lines_[i_++];
      std::size_t pos = 0;
      std::string key = key_token(line, pos, ":[{");
      Value v = field_value(line, pos, depth);
      if (!o.insert(key, std::move(v))) throw DuplicateKey(std::move(key), line.number);
    }
    return o;
  }

  // Parses what follows a key (or a bare `- ` in list items): an optional
  // array header, then the colon with either an inline remainder or a nested block.
  Value field_value(const Line& line, std::size_t pos, int depth) {
    const std::string_view c = line.content;
    if (pos < c.size() && c[pos] == '[') {
      const Header h = header(line, pos);
      return array_body(line, h, c.substr(pos), depth);
    }
    if (pos >= c.size() || c[pos] != ':') throw SyntaxError(line.number, "expected ':'");
    ++pos;
    if (pos == c.size()) return Value(object_fields(depth + 1));
    if (c[pos] != ' ') throw SyntaxError(line.number, "expected ' ' after ':'");
    Value v = scalar(c.substr(pos + 1), line.number, false);
    reject_deeper(depth);
    return v;
  }

  // Consumes `[N]` and an optional `{f1,...}` plus the trailing ':'.
  Header header(const Line& line, std::size_t& pos) {
    const std::string_view c = line.content;
    Header h;
    ++pos;
    const std::size_t digits_start = pos;
    while (pos < c.size() && c[pos] >= '0' && c[pos] <= '9') ++pos;
    const std::string_view digits = c.substr(digits_start, pos - digits_start);
    if (digits.empty() || (digits.size() > 1 && digits[0] == '0') || digits.size() > 9) {
      throw SyntaxError(line.number, "malformed length marker");
    }
    h.length = std::stoul(std::string(digits));
    if (pos >= c.size() || c[pos] != ']') throw SyntaxError(line.number, "expected ']'");
    ++pos;
    if (pos < c.size() && c[pos] == '{') {
      h.has_fields = true;
      ++pos;
      while (true) {
        std::string f = key_token(line, pos, ",}");
        for (const auto& existing : h.fields) {
          if (existing == f) throw DuplicateKey(f, line.number);
        }
        h.fields.push_back(std::move(f));
        if (pos < c.size() && c[pos] == ',') {
          ++pos;
          continue;
        }
        if (pos < c.size() && c[pos] == '}') {
          ++pos;
          break;
        }
        throw SyntaxError(line.number, "unterminated field list");
      }
    }
    if (pos >= c.size() || c[pos] != ':') throw SyntaxError(line.number, "expected ':' after array header");
    ++pos;
    return h;
  }

  // `remainder` is the line content after the header's ':'.
  Value array_body(const Line& line, const Header& h, std::string_view remainder, int depth) {
    if (h.has_fields) {
      if (!remainder.empty()) throw SyntaxError(line.number, "table header must end the line");
      return table_rows(h, depth + 1);
    }
    if (!remainder.empty()) {
      if (remainder[0] != ' ') throw SyntaxError(line.number, "expected ' ' after ':'");
      Array a;
      for (auto cell : split_cells(remainder.substr(1), line.number)) {
        a.push_back(scalar(cell, line.number, false));
      }
      if (a.size() != h.length) throw LengthMismatch(h.length, a.size());
      reject_deeper(depth);
      return Value(std::move(a));
    }
    Array items = list_items(depth + 1);
    if (items.size() != h.length) throw LengthMismatch(h.length, items.size());
    return Value(std::move(items));
  }

  Value table_rows(const Header& h, int depth) {
    Array rows;
    while (true) {
      reject_deeper(depth);
      if (!at_depth(depth)) break;
      const Line& line = lines_[i_++];
      const auto cells = split_cells(line.content, line.number);
      if (cells.size() != h.fields.size()) {
        throw ArityMismatch("row at line " + std::to_string(line.number), h.fields.size(),
                            cells.size());
      }
      Object o;
      for (std::size_t k = 0; k < cells.size(); ++k) {
        o.insert(h.fields[k], scalar(cells[k], line.number, true));
      }
      rows.push_back(Value(std::move(o)));
    }
    if (rows.size() != h.length) throw LengthMismatch(h.length, rows.size());
    return Value(std::move(rows));
  }

  Array list_items(int depth) {
    Array items;
    while (true) {
      reject_deeper(depth);
      if (!at_depth(depth)) break;
      const Line line = lines_[i_++];
      const std::string_view c = line.content;
      if (c == "-") {
        items.push_back(Value(object_fields(depth + 1)));
        continue;
      }
      if (c.size() < 2 || c[0] != '-' || c[1] != ' ') {
        throw SyntaxError(line.number, "expected list item");
      }
      if (c.size() > 2 && c[2] == '[') {
        std::size_t pos = 2;
        const Header h = header(line, pos);
        items.push_back(array_body(line, h, c.substr(pos), depth));
        continue;
      }
      items.push_back(scalar(c.substr(2), line.number, false));
      reject_deeper(depth);
    }
    return items;
  }

  // Reads a key starting at pos, stopping at any of `stops`.
  std::string key_token(const Line& line, std::size_t& pos, std::string_view stops) {
    const std::string_view c = line.content;
    if (pos < c.size() && c[pos] == '"') {
      return json_detail::read_quoted(c, pos);
    }
    const std::size_t start = pos;
    while (pos < c.size() && stops.find(c[pos]) == std::string_view::npos) ++pos;
    std::string_view k = c.substr(start, pos - start);
    if (key_needs_quotes(k)) throw SyntaxError(line.number, "key requires quotes");
    return std::string(k);
  }

  static std::vector<std::string_view> split_cells(std::string_view s, std::size_t line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    bool in_quotes = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const char ch = s[i];
      if (in_quotes) {
        if (ch == '\\') {
          ++i;
        } else if (ch == '"') {
          in_quotes = false;
        }
      } else if (ch == '"') {
        in_quotes = true;
      } else if (ch == ',') {
        cells.push_back(s.substr(start, i - start));
        start = i + 1;
      }
    }
    if (in_quotes) throw SyntaxError(line, "unterminated string");
    cells.push_back(s.substr(start));
    return cells;
  }

  static Value scalar(std::string_view tok, std::size_t line, bool table_cell) {
    if (tok.empty()) throw SyntaxError(line, "empty value");
    if (tok.front() == '"') {
      std::size_t pos = 0;
      std::string s = json_detail::read_quoted(tok, pos);
      if (pos != tok.size()) throw SyntaxError(line, "content after closing quote");
      if (table_cell && s.empty()) throw SyntaxError(line, "empty string in table cell");
      return Value(std::move(s));
    }
    if (tok == "true") return Value(true);
    if (tok == "false") return Value(false);
    if (tok == "null") return Value();
    if (auto n = Number::parse(tok)) return Value(*std::move(n));
    if (scalar_needs_quotes(tok)) throw SyntaxError(line, "string requires quotes");
    if (!json_detail::valid_utf8(tok)) throw SyntaxError(line, "invalid UTF-8");
    return Value(std::string(tok));
  }

  const ToonGrammarConfig& cfg_;
  std::vector<Line> lines_;
  std::size_t i_ = 0;
};

}  // namespace

std::string encode_toon(const Value& v, const ToonGrammarConfig& cfg) {
  cfg.validate();
  return Encoder(cfg).run(v);
}

Value decode_toon(std::string_view text, const ToonGrammarConfig& cfg) {
  cfg.validate();
  return Decoder(text, cfg).run();
}

}  // namespace notation
