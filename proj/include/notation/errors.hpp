#ifndef NOTATION_ERRORS_HPP_
#define NOTATION_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace notation {

// Base of every decode-time failure. `kind()` is a stable identifier used by
// the CLI diagnostics and by envelope failure attribution.
class DecodeError : public std::runtime_error {
 public:
  DecodeError(std::string kind, const std::string& message)
      : std::runtime_error(kind + ": " + message), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

// `position` is a byte offset for JSON/TRON and a 1-based line for TOON.
class SyntaxError : public DecodeError {
 public:
  SyntaxError(std::size_t position, const std::string& message)
      : DecodeError("SyntaxError",
                    "at " + std::to_string(position) + ": " + message),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class DuplicateKey : public DecodeError {
 public:
  DuplicateKey(std::string key, std::size_t position)
      : DecodeError("DuplicateKey", "key \"" + key + "\" at " +
                                        std::to_string(position)),
        key_(std::move(key)),
        position_(position) {}
  const std::string& key() const { return key_; }
  std::size_t position() const { return position_; }

 private:
  std::string key_;
  std::size_t position_;
};

class LengthMismatch : public DecodeError {
 public:
  LengthMismatch(std::size_t declared, std::size_t actual)
      : DecodeError("LengthMismatch", "declared " + std::to_string(declared) +
                                          ", found " + std::to_string(actual)),
        declared_(declared),
        actual_(actual) {}
  std::size_t declared() const { return declared_; }
  std::size_t actual() const { return actual_; }

 private:
  std::size_t declared_;
  std::size_t actual_;
};

// TOON table rows use `context` = row line; TRON instances use the class name.
class ArityMismatch : public DecodeError {
 public:
  ArityMismatch(std::string context, std::size_t expected, std::size_t actual)
      : DecodeError("ArityMismatch", context + ": expected " +
                                         std::to_string(expected) + ", got " +
                                         std::to_string(actual)),
        context_(std::move(context)),
        expected_(expected),
        actual_(actual) {}
  const std::string& context() const { return context_; }
  std::size_t expected() const { return expected_; }
  std::size_t actual() const { return actual_; }

 private:
  std::string context_;
  std::size_t expected_;
  std::size_t actual_;
};

class IndentError : public DecodeError {
 public:
  IndentError(std::size_t line, const std::string& message)
      : DecodeError("IndentError",
                    "line " + std::to_string(line) + ": " + message),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class UnknownClass : public DecodeError {
 public:
  explicit UnknownClass(std::string name)
      : DecodeError("UnknownClass", name), name_(std::move(name)) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class DuplicateClass : public DecodeError {
 public:
  explicit DuplicateClass(std::string name)
      : DecodeError("DuplicateClass", name), name_(std::move(name)) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

}  // namespace notation

#endif  // NOTATION_ERRORS_HPP_
