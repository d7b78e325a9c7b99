#ifndef NOTATION_VALUE_HPP_
#define NOTATION_VALUE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace notation {

struct Null {
  friend bool operator==(Null, Null) { return true; }
};

// Exact decimal literal in JSON number grammar. The literal text is kept
// verbatim so "7.5" and "7.50" stay distinct through every codec.
class Number {
 public:
  Number() : literal_("0") {}
  explicit Number(std::int64_t v);

  // Returns nullopt unless `text` matches -?(0|[1-9]\d*)(\.\d+)?([eE][+-]?\d+)?
  static std::optional<Number> parse(std::string_view text);
  static bool is_literal(std::string_view text);

  const std::string& literal() const { return literal_; }
  bool is_integer() const;

  friend bool operator==(const Number& a, const Number& b) {
    return a.literal_ == b.literal_;
  }

 private:
  explicit Number(std::string literal, int) : literal_(std::move(literal)) {}
  std::string literal_;
};

class Value;

// Insertion-ordered key/value pairs. Keys are unique.
class Object {
 public:
  using Member = std::pair<std::string, Value>;
  using const_iterator = std::vector<Member>::const_iterator;

  Object() = default;
  Object(std::initializer_list<Member> members);

  // Returns false (and leaves the object untouched) if the key exists.
  bool insert(std::string key, Value value);
  const Value* find(std::string_view key) const;
  Value* find(std::string_view key);
  bool contains(std::string_view key) const { return find(key) != nullptr; }

  std::size_t size() const;
  bool empty() const;
  const_iterator begin() const;
  const_iterator end() const;
  const std::vector<Member>& members() const { return members_; }
  std::vector<std::string> keys() const;

  // Renames `from` to `to` in place. Returns false if `from` is absent or `to`
  // already exists.
  bool rename(std::string_view from, std::string to);

 private:
  std::vector<Member> members_;
};

using Array = std::vector<Value>;

enum class Kind { kNull, kBool, kNumber, kText, kArray, kObject };

class Value {
 public:
  Value() : data_(Null{}) {}
  Value(Null) : data_(Null{}) {}
  Value(bool b) : data_(b) {}
  Value(Number n) : data_(std::move(n)) {}
  Value(int v) : data_(Number(static_cast<std::int64_t>(v))) {}
  Value(std::int64_t v) : data_(Number(v)) {}
  Value(std::string s) : data_(std::move(s)) {}
  Value(const char* s) : data_(std::string(s)) {}
  Value(Array a) : data_(std::move(a)) {}
  Value(Object o) : data_(std::move(o)) {}

  // Number from a literal; throws std::invalid_argument on a bad literal.
  static Value number(std::string_view literal);

  Kind kind() const { return static_cast<Kind>(data_.index()); }
  bool is_null() const { return kind() == Kind::kNull; }
  bool is_bool() const { return kind() == Kind::kBool; }
  bool is_number() const { return kind() == Kind::kNumber; }
  bool is_text() const { return kind() == Kind::kText; }
  bool is_array() const { return kind() == Kind::kArray; }
  bool is_object() const { return kind() == Kind::kObject; }
  bool is_scalar() const { return !is_array() && !is_object(); }

  bool as_bool() const { return std::get<bool>(data_); }
  const Number& as_number() const { return std::get<Number>(data_); }
  const std::string& as_text() const { return std::get<std::string>(data_); }
  const Array& as_array() const { return std::get<Array>(data_); }
  Array& as_array() { return std::get<Array>(data_); }
  const Object& as_object() const { return std::get<Object>(data_); }
  Object& as_object() { return std::get<Object>(data_); }

 private:
  std::variant<Null, bool, Number, std::string, Array, Object> data_;
};

inline std::size_t Object::size() const { return members_.size(); }
inline bool Object::empty() const { return members_.empty(); }
inline Object::const_iterator Object::begin() const { return members_.begin(); }
inline Object::const_iterator Object::end() const { return members_.end(); }

// Structural equality. With key_order_sensitive unset, objects compare as
// key sets; arrays are always ordered.
bool equals(const Value& a, const Value& b, bool key_order_sensitive = true);

// The "same structure" test: an object's keys in order.
struct StructSignature {
  std::vector<std::string> keys;

  friend bool operator==(const StructSignature&, const StructSignature&) = default;
  friend auto operator<=>(const StructSignature&, const StructSignature&) = default;
};

std::optional<StructSignature> signature(const Value& v);

}  // namespace notation

#endif  // NOTATION_VALUE_HPP_
