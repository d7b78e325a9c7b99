#ifndef NOTATION_TOKENIZER_HPP_
#define NOTATION_TOKENIZER_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace notation {

class VocabLoadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Byte-level BPE over a ranked merge list (the vocab.json + merges.txt
// interchange layout). Bytes are mapped to printable code points before
// lookup, as in the GPT-2 family of vocabularies.
class BpeVocab {
 public:
  // Throws VocabLoadError on unreadable files, malformed JSON, malformed merge
  // lines, or merges whose parts or result are missing from the vocabulary.
  static BpeVocab load(const std::string& vocab_path, const std::string& merges_path);
  static BpeVocab from_text(std::string_view vocab_json, std::string_view merges_text);

  // Token strings (in the mapped alphabet) for `text`.
  std::vector<std::string> encode(std::string_view text) const;
  std::size_t count(std::string_view text) const;

  std::size_t vocab_size() const { return vocab_.size(); }
  std::size_t merge_count() const { return ranks_.size(); }

  // Splits text into the chunks merges are applied within.
  static std::vector<std::string_view> pretokenize(std::string_view text);
  // UTF-8 form of the printable code point standing for byte `b`.
  static const std::string& byte_symbol(unsigned char b);

 private:
  std::vector<std::string> merge_chunk(std::string_view chunk) const;

  std::unordered_map<std::string, std::int64_t> vocab_;
  std::map<std::pair<std::string, std::string>, std::size_t> ranks_;
};

enum class TokenizerKind { kByteCount, kWordRegex, kBpeVocab };

// Immutable after construction; counting is pure.
class Tokenizer {
 public:
  static Tokenizer byte_count() { return Tokenizer(TokenizerKind::kByteCount, nullptr); }
  static Tokenizer word_regex() { return Tokenizer(TokenizerKind::kWordRegex, nullptr); }
  static Tokenizer bpe(std::shared_ptr<const BpeVocab> vocab);

  TokenizerKind kind() const { return kind_; }
  std::string_view name() const;
  std::size_t count(std::string_view text) const;

 private:
  Tokenizer(TokenizerKind kind, std::shared_ptr<const BpeVocab> vocab)
      : kind_(kind), vocab_(std::move(vocab)) {}

  TokenizerKind kind_;
  std::shared_ptr<const BpeVocab> vocab_;
};

inline std::size_t count_tokens(std::string_view text, const Tokenizer& tok) {
  return tok.count(text);
}

// Word characters are ASCII alphanumerics, '_' and any non-ASCII byte; each
// maximal run is one token, every other non-space byte is one token.
std::size_t count_word_tokens(std::string_view text);

}  // namespace notation

#endif  // NOTATION_TOKENIZER_HPP_
