#include "notation/value.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace notation {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

}  // namespace

Number::Number(std::int64_t v) : literal_(std::to_string(v)) {}

bool Number::is_literal(std::string_view t) {
  std::size_t i = 0;
  const std::size_t n = t.size();
  if (i < n && t[i] == '-') ++i;
  if (i >= n) return false;
  if (t[i] == '0') {
    ++i;
  } else if (is_digit(t[i])) {
    while (i < n && is_digit(t[i])) ++i;
  } else {
    return false;
  }
  if (i < n && t[i] == '.') {
    ++i;
    if (i >= n || !is_digit(t[i])) return false;
    while (i < n && is_digit(t[i])) ++i;
  }
  if (i < n && (t[i] == 'e' || t[i] == 'E')) {
    ++i;
    if (i < n && (t[i] == '+' || t[i] == '-')) ++i;
    if (i >= n || !is_digit(t[i])) return false;
    while (i < n && is_digit(t[i])) ++i;
  }
  return i == n;
}

std::optional<Number> Number::parse(std::string_view text) {
  if (!is_literal(text)) return std::nullopt;
  return Number(std::string(text), 0);
}

bool Number::is_integer() const {
  return literal_.find_first_of(".eE") == std::string::npos;
}

Object::Object(std::initializer_list<Member> members) {
  for (const auto& m : members) {
    if (!insert(m.first, m.second)) {
      throw std::invalid_argument("duplicate object key: " + m.first);
    }
  }
}

bool Object::insert(std::string key, Value value) {
  if (find(key) != nullptr) return false;
  members_.emplace_back(std::move(key), std::move(value));
  return true;
}

const Value* Object::find(std::string_view key) const {
  for (const auto& [k, v] : members_) {
    if (k == key) return &v;
  }
  return nullptr;
}

Value* Object::find(std::string_view key) {
  for (auto& [k, v] : members_) {
    if (k == key) return &v;
  }
  return nullptr;
}

std::vector<std::string> Object::keys() const {
  std::vector<std::string> out;
  out.reserve(members_.size());
  for (const auto& m : members_) out.push_back(m.first);
  return out;
}

bool Object::rename(std::string_view from, std::string to) {
  if (from == to) return contains(from);
  if (contains(to)) return false;
  for (auto& m : members_) {
    if (m.first == from) {
      m.first = std::move(to);
      return true;
    }
  }
  return false;
}

Value Value::number(std::string_view literal) {
  auto n = Number::parse(literal);
  if (!n) throw std::invalid_argument("bad number literal: " + std::string(literal));
  return Value(*std::move(n));
}

bool equals(const Value& a, const Value& b, bool key_order_sensitive) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Kind::kNull:
      return true;
    case Kind::kBool:
      return a.as_bool() == b.as_bool();
    case Kind::kNumber:
      return a.as_number() == b.as_number();
    case Kind::kText:
      return a.as_text() == b.as_text();
    case Kind::kArray: {
      const auto& x = a.as_array();
      const auto& y = b.as_array();
      if (x.size() != y.size()) return false;
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (!equals(x[i], y[i], key_order_sensitive)) return false;
      }
      return true;
    }
    case Kind::kObject: {
      const auto& x = a.as_object();
      const auto& y = b.as_object();
      if (x.size() != y.size()) return false;
      if (key_order_sensitive) {
        auto yi = y.begin();
        for (const auto& [k, v] : x) {
          if (k != yi->first || !equals(v, yi->second, true)) return false;
          ++yi;
        }
        return true;
      }
      for (const auto& [k, v] : x) {
        const Value* other = y.find(k);
        if (other == nullptr || !equals(v, *other, false)) return false;
      }
      return true;
    }
  }
  return false;
}

std::optional<StructSignature> signature(const Value& v) {
  if (!v.is_object()) return std::nullopt;
  return StructSignature{v.as_object().keys()};
}

}  // namespace notation
