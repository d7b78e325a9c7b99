#include "notation/tokenizer.hpp"

#include <array>
#include <fstream>
#include <limits>
#include <sstream>

#include "notation/json.hpp"

namespace notation {

namespace {

bool is_space(unsigned char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }
bool is_alpha(unsigned char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c >= 0x80; }
bool is_num(unsigned char c) { return c >= '0' && c <= '9'; }
bool is_word(unsigned char c) { return is_alpha(c) || is_num(c) || c == '_'; }

std::string code_point_utf8(std::uint32_t cp) {
  std::string out;
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
  return out;
}

// Printable bytes map to themselves; the rest map to 256 + n in order.
const std::array<std::string, 256>& byte_table() {
  static const std::array<std::string, 256> table = [] {
    std::array<std::string, 256> t;
    std::uint32_t extra = 0;
    for (std::uint32_t b = 0; b < 256; ++b) {
      const bool printable = (b >= '!' && b <= '~') || (b >= 0xA1 && b <= 0xAC) || (b >= 0xAE);
      t[b] = code_point_utf8(printable ? b : 256 + extra++);
    }
    return t;
  }();
  return table;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw VocabLoadError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Number of UTF-8 code points; mapped symbols are one code point per byte.
std::size_t code_points(std::string_view s) {
  std::size_t n = 0;
  for (char c : s) n += (static_cast<unsigned char>(c) & 0xC0) != 0x80;
  return n;
}

}  // namespace

const std::string& BpeVocab::byte_symbol(unsigned char b) { return byte_table()[b]; }

std::vector<std::string_view> BpeVocab::pretokenize(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  const std::size_t n = text.size();
  auto u = [&](std::size_t k) { return static_cast<unsigned char>(text[k]); };
  auto run = [&](std::size_t start, auto pred) {
    std::size_t j = start;
    while (j < n && pred(u(j))) ++j;
    return j;
  };
  auto other = [](unsigned char c) { return !is_space(c) && !is_alpha(c) && !is_num(c); };
  while (i < n) {
    // Contractions: 's 't 'm 'd 're 've 'll
    if (text[i] == '\'' && i + 1 < n) {
      const std::string_view rest = text.substr(i + 1, 2);
      if (rest.starts_with("re") || rest.starts_with("ve") || rest.starts_with("ll")) {
        out.push_back(text.substr(i, 3));
        i += 3;
        continue;
      }
      const char c = text[i + 1];
      if (c == 's' || c == 't' || c == 'm' || c == 'd') {
        out.push_back(text.substr(i, 2));
        i += 2;
        continue;
      }
    }
    std::size_t start = i;
    std::size_t j = i;
    if (text[j] == ' ' && j + 1 < n && !is_space(u(j + 1))) ++j;
    const unsigned char c = u(j);
    if (is_alpha(c)) {
      j = run(j, is_alpha);
    } else if (is_num(c)) {
      j = run(j, is_num);
    } else if (other(c)) {
      j = run(j, other);
    } else {
      // Whitespace: leave the last space of a run for the next word.
      j = run(start, is_space);
      if (j < n && j - start > 1) --j;
    }
    out.push_back(text.substr(start, j - start));
    i = j;
  }
  return out;
}

BpeVocab BpeVocab::load(const std::string& vocab_path, const std::string& merges_path) {
  return from_text(read_file(vocab_path), read_file(merges_path));
}

BpeVocab BpeVocab::from_text(std::string_view vocab_json, std::string_view merges_text) {
  BpeVocab v;
  Value doc;
  try {
    doc = decode_json(vocab_json);
  } catch (const DecodeError& e) {
    throw VocabLoadError(std::string("vocabulary is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || doc.as_object().empty()) {
    throw VocabLoadError("vocabulary must be a non-empty JSON object of token -> id");
  }
  for (const auto& [token, id] : doc.as_object()) {
    if (!id.is_number() || !id.as_number().is_integer()) {
      throw VocabLoadError("vocabulary id for \"" + token + "\" is not an integer");
    }
    v.vocab_.emplace(token, std::stoll(id.as_number().literal()));
  }

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < merges_text.size()) {
    std::size_t end = merges_text.find('\n', start);
    if (end == std::string_view::npos) end = merges_text.size();
    std::string_view line = merges_text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || (line_no == 1 && line.starts_with("#version"))) continue;
    const std::size_t sp = line.find(' ');
    if (sp == std::string_view::npos || sp == 0 || sp + 1 == line.size() ||
        line.find(' ', sp + 1) != std::string_view::npos) {
      throw VocabLoadError("merges line " + std::to_string(line_no) + " is not a pair");
    }
    std::string a(line.substr(0, sp));
    std::string b(line.substr(sp + 1));
    if (!v.vocab_.contains(a) || !v.vocab_.contains(b) || !v.vocab_.contains(a + b)) {
      throw VocabLoadError("merges line " + std::to_string(line_no) +
                           " references tokens missing from the vocabulary");
    }
    // Rank is the first occurrence.
    v.ranks_.try_emplace({std::move(a), std::move(b)}, v.ranks_.size());
  }
  return v;
}

std::vector<std::string> BpeVocab::merge_chunk(std::string_view chunk) const {
  std::vector<std::string> symbols;
  symbols.reserve(chunk.size());
  for (char c : chunk) symbols.push_back(byte_symbol(static_cast<unsigned char>(c)));
  while (symbols.size() > 1) {
    std::size_t best_rank = std::numeric_limits<std::size_t>::max();
    std::size_t best = 0;
    for (std::size_t k = 0; k + 1 < symbols.size(); ++k) {
      auto it = ranks_.find({symbols[k], symbols[k + 1]});
      if (it != ranks_.end() && it->second < best_rank) {
        best_rank = it->second;
        best = k;
      }
    }
    if (best_rank == std::numeric_limits<std::size_t>::max()) break;
    const std::string first = symbols[best];
    const std::string second = symbols[best + 1];
    std::vector<std::string> merged;
    merged.reserve(symbols.size());
    for (std::size_t k = 0; k < symbols.size();) {
      if (k + 1 < symbols.size() && symbols[k] == first && symbols[k + 1] == second) {
        merged.push_back(first + second);
        k += 2;
      } else {
        merged.push_back(symbols[k]);
        ++k;
      }
    }
    symbols = std::move(merged);
  }
  return symbols;
}

std::vector<std::string> BpeVocab::encode(std::string_view text) const {
  std::vector<std::string> out;
  for (auto chunk : pretokenize(text)) {
    for (auto& sym : merge_chunk(chunk)) out.push_back(std::move(sym));
  }
  return out;
}

std::size_t BpeVocab::count(std::string_view text) const {
  std::size_t n = 0;
  for (auto chunk : pretokenize(text)) {
    for (const auto& sym : merge_chunk(chunk)) {
      // Symbols outside the vocabulary fall back to one token per byte.
      n += vocab_.contains(sym) ? 1 : code_points(sym);
    }
  }
  return n;
}

std::size_t count_word_tokens(std::string_view text) {
  std::size_t n = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (is_space(c)) {
      ++i;
    } else if (is_word(c)) {
      while (i < text.size() && is_word(static_cast<unsigned char>(text[i]))) ++i;
      ++n;
    } else {
      ++i;
      ++n;
    }
  }
  return n;
}

Tokenizer Tokenizer::bpe(std::shared_ptr<const BpeVocab> vocab) {
  if (!vocab) throw VocabLoadError("BPE tokenizer requires a loaded vocabulary");
  return Tokenizer(TokenizerKind::kBpeVocab, std::move(vocab));
}

std::string_view Tokenizer::name() const {
  switch (kind_) {
    case TokenizerKind::kByteCount:
      return "bytes";
    case TokenizerKind::kWordRegex:
      return "words";
    case TokenizerKind::kBpeVocab:
      return "bpe";
  }
  return "bytes";
}

std::size_t Tokenizer::count(std::string_view text) const {
  switch (kind_) {
    case TokenizerKind::kByteCount:
      return text.size();
    case TokenizerKind::kWordRegex:
      return count_word_tokens(text);
    case TokenizerKind::kBpeVocab:
      return vocab_->count(text);
  }
  return text.size();
}

}  // namespace notation
