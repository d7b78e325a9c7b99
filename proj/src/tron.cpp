#include "notation/tron.hpp"

#include <stdexcept>

#include "notation/json.hpp"

namespace notation {

void ClassTable::add(ClassDef def) {
  if (def.fields.keys.empty()) throw std::invalid_argument("class without fields");
  if (by_name_.contains(def.name)) throw DuplicateClass(def.name);
  if (by_signature_.contains(def.fields)) {
    throw std::invalid_argument("signature already classed as " +
                                defs_[by_signature_.at(def.fields)].name);
  }
  by_name_.emplace(def.name, defs_.size());
  by_signature_.emplace(def.fields, defs_.size());
  defs_.push_back(std::move(def));
}

const ClassDef* ClassTable::find(const StructSignature& sig) const {
  auto it = by_signature_.find(sig);
  return it == by_signature_.end() ? nullptr : &defs_[it->second];
}

const ClassDef* ClassTable::find_name(std::string_view name) const {
  auto it = by_name_.find(name);
  return it == by_name_.end() ? nullptr : &defs_[it->second];
}

std::string class_name(std::size_t index) {
  std::string out;
  std::size_t n = index + 1;
  while (n > 0) {
    --n;
    out.insert(out.begin(), static_cast<char>('A' + n % 26));
    n /= 26;
  }
  return out;
}

namespace {

void count_signatures(const Value& v, std::map<StructSignature, std::size_t>& counts,
                      std::vector<StructSignature>& order) {
  if (v.is_array()) {
    for (const auto& e : v.as_array()) count_signatures(e, counts, order);
    return;
  }
  if (!v.is_object()) return;
  const auto& o = v.as_object();
  if (!o.empty()) {
    StructSignature sig{o.keys()};
    auto [it, inserted] = counts.try_emplace(sig, 0);
    if (inserted) order.push_back(sig);
    ++it->second;
  }
  for (const auto& [k, child] : o) count_signatures(child, counts, order);
}

bool bare_field(std::string_view f) {
  if (f.empty()) return false;
  for (char c : f) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '_' || c == '$' || c == '-' || c == '.';
    if (!ok) return false;
  }
  return true;
}

void append_class_block(std::string& out, const ClassTable& table) {
  for (const auto& def : table.defs()) {
    out += "class ";
    out += def.name;
    out += ": ";
    for (std::size_t i = 0; i < def.fields.keys.size(); ++i) {
      if (i > 0) out += ',';
      const auto& f = def.fields.keys[i];
      if (bare_field(f)) {
        out += f;
      } else {
        json_detail::append_quoted(out, f);
      }
    }
    out += '\n';
  }
  if (!table.empty()) out += '\n';
}

void append_body(std::string& out, const Value& v, const ClassTable& table) {
  switch (v.kind()) {
    case Kind::kNull:
    case Kind::kBool:
    case Kind::kNumber:
    case Kind::kText:
      out += encode_json(v);
      return;
    case Kind::kArray: {
      out += '[';
      bool first = true;
      for (const auto& e : v.as_array()) {
        if (!first) out += ',';
        first = false;
        append_body(out, e, table);
      }
      out += ']';
      return;
    }
    case Kind::kObject: {
      const auto& o = v.as_object();
      const ClassDef* def = o.empty() ? nullptr : table.find(StructSignature{o.keys()});
      if (def != nullptr) {
        out += def->name;
        out += '(';
        bool first = true;
        for (const auto& [k, child] : o) {
          if (!first) out += ',';
          first = false;
          append_body(out, child, table);
        }
        out += ')';
        return;
      }
      out += '{';
      bool first = true;
      for (const auto& [k, child] : o) {
        if (!first) out += ',';
        first = false;
        json_detail::append_quoted(out, k);
        out += ':';
        append_body(out, child, table);
      }
      out += '}';
      return;
    }
  }
}

// ---------------------------------------------------------------- decoder

class BodyReader {
 public:
  BodyReader(std::string_view text, std::size_t base, const ClassTable& table)
      : t_(text), base_(base), table_(table) {}

  Value document() {
    Value v = value(0);
    if (pos_ != t_.size()) fail("trailing content after TRON body");
    return v;
  }

 private:
  static constexpr int kMaxDepth = 512;

  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(base_ + pos_, msg); }

  void expect(char c) {
    if (pos_ >= t_.size() || t_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void literal(std::string_view lit) {
    if (t_.substr(pos_, lit.size()) != lit) fail("invalid literal");
    pos_ += lit.size();
  }

  Value value(int depth) {
    if (depth > kMaxDepth) fail("nesting too deep");
    if (pos_ >= t_.size()) fail("unexpected end of body");
    const char c = t_[pos_];
    if (c >= 'A' && c <= 'Z') return instance(depth);
    switch (c) {
      case '{':
        return object(depth);
      case '[':
        return array(depth);
      case '"':
        return Value(json_detail::read_quoted(t_, pos_, base_));
      case 't':
        literal("true");
        return Value(true);
      case 'f':
        literal("false");
        return Value(false);
      case 'n':
        literal("null");
        return Value();
      default:
        break;
    }
    const std::size_t len = json_detail::scan_number(t_, pos_);
    if (len == 0) fail(std::string("unexpected character '") + c + "'");
    auto n = Number::parse(t_.substr(pos_, len));
    pos_ += len;
    if (!n || (pos_ < t_.size() && (t_[pos_] == '.' || t_[pos_] == 'e' || t_[pos_] == 'E' ||
                                    (t_[pos_] >= '0' && t_[pos_] <= '9')))) {
      fail("malformed number");
    }
    return Value(*std::move(n));
  }

  Value instance(int depth) {
    const std::size_t start = pos_;
    while (pos_ < t_.size() && t_[pos_] >= 'A' && t_[pos_] <= 'Z') ++pos_;
    const std::string name(t_.substr(start, pos_ - start));
    const ClassDef* def = table_.find_name(name);
    if (def == nullptr) throw UnknownClass(name);
    expect('(');
    Array args;
    if (pos_ < t_.size() && t_[pos_] == ')') {
      ++pos_;
    } else {
      while (true) {
        args.push_back(value(depth + 1));
        if (pos_ < t_.size() && t_[pos_] == ',') {
          ++pos_;
          continue;
        }
        expect(')');
        break;
      }
    }
    if (args.size() != def->fields.keys.size()) {
      throw ArityMismatch(name, def->fields.keys.size(), args.size());
    }
    Object o;
    for (std::size_t i = 0; i < args.size(); ++i) o.insert(def->fields.keys[i], std::move(args[i]));
    return Value(std::move(o));
  }

  Value array(int depth) {
    ++pos_;
    Array a;
    if (pos_ < t_.size() && t_[pos_] == ']') {
      ++pos_;
      return Value(std::move(a));
    }
    while (true) {
      a.push_back(value(depth + 1));
      if (pos_ < t_.size() && t_[pos_] == ',') {
        ++pos_;
        continue;
      }
      expect(']');
      return Value(std::move(a));
    }
  }

  Value object(int depth) {
    ++pos_;
    Object o;
    if (pos_ < t_.size() && t_[pos_] == '}') {
      ++pos_;
      return Value(std::move(o));
    }
    while (true) {
      const std::size_t key_pos = pos_;
      if (pos_ >= t_.size() || t_[pos_] != '"') fail("expected object key");
      std::string key = json_detail::read_quoted(t_, pos_, base_);
      expect(':');
      Value child = value(depth + 1);
      if (!o.insert(key, std::move(child))) throw DuplicateKey(std::move(key), base_ + key_pos);
      if (pos_ < t_.size() && t_[pos_] == ',') {
        ++pos_;
        continue;
      }
      expect('}');
      return Value(std::move(o));
    }
  }

  std::string_view t_;
  std::size_t base_;
  const ClassTable& table_;
  std::size_t pos_ = 0;
};

// Parses `class <Name>: f1,f2,...` into the table.
void parse_class_line(std::string_view line, std::size_t base, ClassTable& table) {
  std::size_t pos = 6;  // past "class "
  const std::size_t name_start = pos;
  while (pos < line.size() && line[pos] >= 'A' && line[pos] <= 'Z') ++pos;
  if (pos == name_start) throw SyntaxError(base + pos, "expected class name");
  std::string name(line.substr(name_start, pos - name_start));
  if (line.substr(pos, 2) != ": ") throw SyntaxError(base + pos, "expected ': ' after class name");
  pos += 2;
  StructSignature sig;
  while (true) {
    std::string field;
    if (pos < line.size() && line[pos] == '"') {
      field = json_detail::read_quoted(line, pos, base);
    } else {
      const std::size_t start = pos;
      while (pos < line.size() && line[pos] != ',') ++pos;
      field = std::string(line.substr(start, pos - start));
      if (!bare_field(field)) throw SyntaxError(base + start, "malformed field name");
    }
    for (const auto& existing : sig.keys) {
      if (existing == field) throw DuplicateKey(field, base + pos);
    }
    sig.keys.push_back(std::move(field));
    if (pos == line.size()) break;
    if (line[pos] != ',') throw SyntaxError(base + pos, "expected ',' in field list");
    ++pos;
  }
  if (table.find_name(name) != nullptr) throw DuplicateClass(name);
  if (table.find(sig) != nullptr) {
    throw SyntaxError(base, "class " + name + " repeats the signature of " + table.find(sig)->name);
  }
  table.add({std::move(name), std::move(sig)});
}

std::vector<Value> decode_document(std::string_view text) {
  if (!text.empty() && text.back() == '\n') text.remove_suffix(1);
  if (text.empty()) throw SyntaxError(0, "empty TRON document");
  std::vector<std::pair<std::size_t, std::string_view>> lines;
  std::size_t start = 0;
  while (true) {
    const std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) {
      lines.emplace_back(start, text.substr(start));
      break;
    }
    lines.emplace_back(start, text.substr(start, end - start));
    start = end + 1;
  }

  ClassTable table;
  std::size_t i = 0;
  while (i < lines.size() && lines[i].second.starts_with("class ")) {
    parse_class_line(lines[i].second, lines[i].first, table);
    ++i;
  }
  if (i > 0) {
    if (i >= lines.size() || !lines[i].second.empty()) {
      throw SyntaxError(i < lines.size() ? lines[i].first : text.size(),
                        "expected blank line after class block");
    }
    ++i;
  }
  if (i >= lines.size()) throw SyntaxError(text.size(), "missing TRON body");

  std::vector<Value> out;
  for (; i < lines.size(); ++i) {
    const auto [offset, line] = lines[i];
    if (line.empty()) throw SyntaxError(offset, "empty body line");
    out.push_back(BodyReader(line, offset, table).document());
  }
  return out;
}

}  // namespace

ClassTable extract_classes(std::span<const Value> roots, std::size_t min_occurrences) {
  if (min_occurrences == 0) throw std::invalid_argument("min_occurrences must be >= 1");
  std::map<StructSignature, std::size_t> counts;
  std::vector<StructSignature> order;
  for (const auto& root : roots) count_signatures(root, counts, order);
  ClassTable table;
  for (auto& sig : order) {
    if (counts.at(sig) >= min_occurrences) {
      table.add({class_name(table.size()), std::move(sig)});
    }
  }
  return table;
}

std::size_t tron_class_block_bytes(const ClassTable& table) {
  std::string out;
  append_class_block(out, table);
  return out.size();
}

std::string encode_tron(const Value& v, const TronOptions& opts) {
  return encode_tron_batch(std::span<const Value>(&v, 1), opts);
}

std::string encode_tron_batch(std::span<const Value> roots, const TronOptions& opts) {
  if (roots.empty()) throw std::invalid_argument("encode_tron_batch needs at least one root");
  const ClassTable table = extract_classes(roots, opts.min_occurrences);
  std::string out;
  append_class_block(out, table);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (i > 0) out += '\n';
    append_body(out, roots[i], table);
  }
  return out;
}

Value decode_tron(std::string_view text) {
  auto roots = decode_document(text);
  if (roots.size() != 1) throw SyntaxError(0, "expected exactly one TRON body");
  return std::move(roots.front());
}

std::vector<Value> decode_tron_batch(std::string_view text) { return decode_document(text); }

}  // namespace notation
