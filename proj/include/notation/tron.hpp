#ifndef NOTATION_TRON_HPP_
#define NOTATION_TRON_HPP_

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "notation/errors.hpp"
#include "notation/value.hpp"

namespace notation {

struct ClassDef {
  std::string name;
  StructSignature fields;
};

// One class per distinct signature, in first-discovery order.
class ClassTable {
 public:
  // Throws DuplicateClass on a repeated name and std::invalid_argument on an
  // empty field list or a signature that is already present.
  void add(ClassDef def);

  const ClassDef* find(const StructSignature& sig) const;
  const ClassDef* find_name(std::string_view name) const;

  const std::vector<ClassDef>& defs() const { return defs_; }
  std::size_t size() const { return defs_.size(); }
  bool empty() const { return defs_.empty(); }

 private:
  std::vector<ClassDef> defs_;
  std::map<StructSignature, std::size_t> by_signature_;
  std::map<std::string, std::size_t, std::less<>> by_name_;
};

// A, B, ..., Z, AA, AB, ...
std::string class_name(std::size_t index);

struct TronOptions {
  // A signature is classed once it occurs this many times. 1 classes every
  // object and exists to measure header overhead.
  std::size_t min_occurrences = 2;
};

// Counts every non-empty object at any depth across `roots` in depth-first,
// field order. Throws std::invalid_argument when min_occurrences is 0.
ClassTable extract_classes(std::span<const Value> roots, std::size_t min_occurrences = 2);

std::string encode_tron(const Value& v, const TronOptions& opts = {});
std::string encode_tron_batch(std::span<const Value> roots, const TronOptions& opts = {});

// Strict decoders. Throw SyntaxError, UnknownClass, ArityMismatch,
// DuplicateClass or DuplicateKey.
Value decode_tron(std::string_view text);
std::vector<Value> decode_tron_batch(std::string_view text);

// Byte length of the class block including its separating blank line.
std::size_t tron_class_block_bytes(const ClassTable& table);

}  // namespace notation

#endif  // NOTATION_TRON_HPP_
