#ifndef NOTATION_CORPUS_HPP_
#define NOTATION_CORPUS_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "notation/meter.hpp"
#include "notation/tokenizer.hpp"
#include "notation/value.hpp"

namespace notation {

struct CorpusDocument {
  std::string path;
  Value value;
};

// Size of one encoding, in bytes and in tokens.
struct Cost {
  std::size_t bytes = 0;
  std::size_t tokens = 0;
  friend bool operator==(const Cost&, const Cost&) = default;
};

struct FileRow {
  std::string path;
  Cost json;  // minimal JSON baseline
  Cost toon;
  Cost tron;
  friend bool operator==(const FileRow&, const FileRow&) = default;
};

struct AggregateRow {
  std::string label;
  Delta toon_bytes, toon_tokens;
  Delta tron_bytes, tron_tokens;
};

// TRON measured as one batch over the whole corpus.
struct BatchRow {
  Cost tron_batch;
  Cost json_sum;
  Cost tron_sum;  // files encoded one by one
  Delta vs_json_bytes, vs_json_tokens;
};

struct CorpusReport {
  std::string tokenizer;
  std::vector<FileRow> files;  // in input order
  AggregateRow mean_of_percentages;
  AggregateRow absolute_sum;
  std::optional<BatchRow> batch;
};

inline constexpr const char* kMeanOfPercentagesLabel = "mean-of-percentages";
inline constexpr const char* kAbsoluteSumLabel = "absolute-sum";

// Both produce identical reports; the parallel one measures files with
// OpenMP. The serial version is the reference the tests compare against.
CorpusReport measure_corpus_serial(const std::vector<CorpusDocument>& docs, const Tokenizer& tok,
                                   bool batch);
CorpusReport measure_corpus_parallel(const std::vector<CorpusDocument>& docs, const Tokenizer& tok,
                                     bool batch);

FileRow measure_document(const CorpusDocument& doc, const Tokenizer& tok);

}  // namespace notation

#endif  // NOTATION_CORPUS_HPP_
