#include "notation/corpus.hpp"

#include "notation/format.hpp"
#include "notation/json.hpp"
#include "notation/tron.hpp"

namespace notation {

namespace {

Cost cost_of(const std::string& text, const Tokenizer& tok) { return {text.size(), tok.count(text)}; }

// Unrounded percentage change, or nothing when the baseline is zero.
std::optional<double> raw_percent(std::size_t value, std::size_t base) {
  if (base == 0) return std::nullopt;
  return (static_cast<double>(value) - static_cast<double>(base)) / static_cast<double>(base) *
         100.0;
}

Delta mean_delta(const std::vector<FileRow>& rows, std::size_t Cost::*field, Cost FileRow::*fmt) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& r : rows) {
    if (auto p = raw_percent(r.*fmt.*field, r.json.*field)) {
      sum += *p;
      ++n;
    }
  }
  if (n == 0) return {};
  return {round_one_decimal(sum / static_cast<double>(n))};
}

CorpusReport assemble(std::vector<FileRow> rows, const std::vector<CorpusDocument>& docs,
                      const Tokenizer& tok, bool batch) {
  CorpusReport rep;
  rep.tokenizer = std::string(tok.name());

  rep.mean_of_percentages = {kMeanOfPercentagesLabel,
                             mean_delta(rows, &Cost::bytes, &FileRow::toon),
                             mean_delta(rows, &Cost::tokens, &FileRow::toon),
                             mean_delta(rows, &Cost::bytes, &FileRow::tron),
                             mean_delta(rows, &Cost::tokens, &FileRow::tron)};

  Cost json, toon, tron;
  for (const auto& r : rows) {
    json.bytes += r.json.bytes;
    json.tokens += r.json.tokens;
    toon.bytes += r.toon.bytes;
    toon.tokens += r.toon.tokens;
    tron.bytes += r.tron.bytes;
    tron.tokens += r.tron.tokens;
  }
  rep.absolute_sum = {kAbsoluteSumLabel,
                      relative_delta_counts(toon.bytes, json.bytes),
                      relative_delta_counts(toon.tokens, json.tokens),
                      relative_delta_counts(tron.bytes, json.bytes),
                      relative_delta_counts(tron.tokens, json.tokens)};

  if (batch && !docs.empty()) {
    std::vector<Value> roots;
    roots.reserve(docs.size());
    for (const auto& d : docs) roots.push_back(d.value);
    BatchRow b;
    b.tron_batch = cost_of(encode_tron_batch(roots), tok);
    b.json_sum = json;
    b.tron_sum = tron;
    b.vs_json_bytes = relative_delta_counts(b.tron_batch.bytes, json.bytes);
    b.vs_json_tokens = relative_delta_counts(b.tron_batch.tokens, json.tokens);
    rep.batch = b;
  }
  rep.files = std::move(rows);
  return rep;
}

}  // namespace

FileRow measure_document(const CorpusDocument& doc, const Tokenizer& tok) {
  return {doc.path, cost_of(encode_json(doc.value), tok), cost_of(encode_as(doc.value, Format::kToon), tok),
          cost_of(encode_tron(doc.value), tok)};
}

CorpusReport measure_corpus_serial(const std::vector<CorpusDocument>& docs, const Tokenizer& tok,
                                   bool batch) {
  std::vector<FileRow> rows;
  rows.reserve(docs.size());
  for (const auto& d : docs) rows.push_back(measure_document(d, tok));
  return assemble(std::move(rows), docs, tok, batch);
}

CorpusReport measure_corpus_parallel(const std::vector<CorpusDocument>& docs, const Tokenizer& tok,
                                     bool batch) {
  std::vector<FileRow> rows(docs.size());
  const auto n = static_cast<long long>(docs.size());
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < n; ++i) rows[i] = measure_document(docs[i], tok);
  return assemble(std::move(rows), docs, tok, batch);
}

}  // namespace notation
