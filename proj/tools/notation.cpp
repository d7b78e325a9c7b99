// notation: command-line front end for the codecs and measurements.
//
// Exit status: 0 ok, 1 property violated, 2 decode or fixture failure,
// 3 I/O failure, 64 usage error.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "notation/agent.hpp"
#include "notation/corpus.hpp"
#include "notation/errors.hpp"
#include "notation/format.hpp"
#include "notation/json.hpp"
#include "notation/meter.hpp"
#include "notation/roundtrip.hpp"
#include "notation/tokenizer.hpp"
#include "notation/toon.hpp"
#include "notation/tron.hpp"

namespace fs = std::filesystem;
using namespace notation;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitProperty = 1;
constexpr int kExitDecode = 2;
constexpr int kExitIo = 3;
constexpr int kExitUsage = 64;

// Header line marking a TOON document whose non-object root was wrapped.
constexpr std::string_view kToonWrappedHeader = "# toon root=wrapped\n";

struct ExitError {
  int code;
  std::string message;
};

[[noreturn]] void fail(int code, std::string message) { throw ExitError{code, std::move(message)}; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(kExitIo, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) fail(kExitIo, "error reading " + path);
  return ss.str();
}

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  return read_file(path);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) fail(kExitIo, "cannot write " + path);
}

Format format_arg(const std::string& name) {
  auto f = parse_format(name);
  if (!f) fail(kExitUsage, "unknown format: " + name);
  return *f;
}

struct TokenizerArgs {
  std::string kind = "bytes";
  std::string vocab;
  std::string merges;
};

void add_tokenizer_options(CLI::App* cmd, TokenizerArgs& t) {
  cmd->add_option("--tokenizer", t.kind, "bytes, words or bpe")->capture_default_str();
  cmd->add_option("--vocab", t.vocab, "BPE vocabulary (token -> id JSON)");
  cmd->add_option("--merges", t.merges, "BPE merges; defaults to merges.txt beside --vocab");
}

Tokenizer make_tokenizer(const TokenizerArgs& t) {
  if (t.kind == "bytes") return Tokenizer::byte_count();
  if (t.kind == "words") return Tokenizer::word_regex();
  if (t.kind != "bpe") fail(kExitUsage, "unknown tokenizer: " + t.kind);
  if (t.vocab.empty()) fail(kExitUsage, "--tokenizer bpe needs --vocab");
  const std::string merges =
      t.merges.empty() ? (fs::path(t.vocab).parent_path() / "merges.txt").string() : t.merges;
  for (const auto& p : {t.vocab, merges}) {
    if (!fs::is_regular_file(p)) fail(kExitIo, "cannot read " + p);
  }
  try {
    return Tokenizer::bpe(std::make_shared<const BpeVocab>(BpeVocab::load(t.vocab, merges)));
  } catch (const VocabLoadError& e) {
    fail(kExitDecode, std::string("VocabLoadError: ") + e.what());
  }
}

std::string delta_json(const Delta& d) {
  if (!d.percent) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", *d.percent);
  return buf;
}

// Report values go through the toolkit's own JSON codec.
Value delta_value(const Delta& d) { return d.percent ? Value::number(delta_json(d)) : Value(); }
Value count_value(std::size_t n) { return Value(static_cast<std::int64_t>(n)); }

// ------------------------------------------------------------ convert

struct ConvertArgs {
  std::string input;
  std::string from = "json";
  std::string to = "json";
  int pretty = 0;
  bool toon_wrapped = false;
};

int cmd_convert(const ConvertArgs& a) {
  const Format from = format_arg(a.from);
  const Format to = format_arg(a.to);
  std::string text = read_input(a.input);
  bool wrapped = a.toon_wrapped;
  if (from == Format::kToon && text.starts_with(kToonWrappedHeader)) {
    text.erase(0, kToonWrappedHeader.size());
    wrapped = true;
  }
  Value v;
  try {
    v = decode_as(text, from, wrapped);
  } catch (const DecodeError& e) {
    fail(kExitDecode, e.what());
  }
  std::string out;
  if (to == Format::kJson && a.pretty > 0) {
    out = encode_json(v, JsonStyle::pretty(a.pretty));
  } else {
    out = encode_as(v, to);
  }
  if (to == Format::kToon && !v.is_object()) std::cout << kToonWrappedHeader;
  std::cout << out << '\n';
  return kExitOk;
}

// ------------------------------------------------------------ measure

struct MeasureArgs {
  std::string dir;
  TokenizerArgs tokenizer;
  bool batch = false;
  bool serial = false;
  std::string out;
};

std::vector<CorpusDocument> load_corpus(const std::string& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) fail(kExitIo, "not a directory: " + dir);
  std::vector<std::string> paths;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") paths.push_back(entry.path().string());
  }
  if (ec) fail(kExitIo, "cannot list " + dir);
  if (paths.empty()) fail(kExitDecode, "no .json files in " + dir);
  std::sort(paths.begin(), paths.end());
  std::vector<CorpusDocument> docs;
  for (const auto& p : paths) {
    try {
      docs.push_back({fs::path(p).filename().string(), decode_json(read_file(p))});
    } catch (const DecodeError& e) {
      fail(kExitDecode, p + ": " + e.what());
    }
  }
  return docs;
}

std::string render_report(const CorpusReport& r) {
  std::size_t width = std::string_view(kMeanOfPercentagesLabel).size();
  for (const auto& f : r.files) width = std::max(width, f.path.size());
  std::string out;
  char line[512];
  auto row = [&](const std::string& name, const std::string& a, const std::string& b, const std::string& c,
                 const std::string& d, const std::string& e, const std::string& f) {
    std::snprintf(line, sizeof line, "%-*s  %10s %10s %10s %10s %10s %10s\n", static_cast<int>(width),
                  name.c_str(), a.c_str(), b.c_str(), c.c_str(), d.c_str(), e.c_str(), f.c_str());
    out += line;
  };
  out += "tokenizer: " + r.tokenizer + "\n";
  row("file", "json B", "toon B", "tron B", "json T", "toon T", "tron T");
  for (const auto& f : r.files) {
    row(f.path, std::to_string(f.json.bytes), std::to_string(f.toon.bytes), std::to_string(f.tron.bytes),
        std::to_string(f.json.tokens), std::to_string(f.toon.tokens), std::to_string(f.tron.tokens));
    row("", "", relative_delta_counts(f.toon.bytes, f.json.bytes).str(),
        relative_delta_counts(f.tron.bytes, f.json.bytes).str(), "",
        relative_delta_counts(f.toon.tokens, f.json.tokens).str(),
        relative_delta_counts(f.tron.tokens, f.json.tokens).str());
  }
  for (const AggregateRow* a : {&r.mean_of_percentages, &r.absolute_sum}) {
    row(a->label, "", a->toon_bytes.str(), a->tron_bytes.str(), "", a->toon_tokens.str(), a->tron_tokens.str());
  }
  if (r.batch) {
    const BatchRow& b = *r.batch;
    out += "batched tron: " + std::to_string(b.tron_batch.bytes) + " B vs " + std::to_string(b.json_sum.bytes) +
           " B json (" + b.vs_json_bytes.str() + "), " + std::to_string(b.tron_batch.tokens) + " T vs " +
           std::to_string(b.json_sum.tokens) + " T json (" + b.vs_json_tokens.str() + "); unbatched tron " +
           std::to_string(b.tron_sum.bytes) + " B\n";
  }
  return out;
}

Value cost_value(const Cost& c) { return Value(Object{{"bytes", count_value(c.bytes)}, {"tokens", count_value(c.tokens)}}); }

Value report_value(const CorpusReport& r) {
  Array files;
  for (const auto& f : r.files) {
    Object o;
    o.insert("path", Value(f.path));
    o.insert("json", cost_value(f.json));
    o.insert("toon", cost_value(f.toon));
    o.insert("tron", cost_value(f.tron));
    o.insert("toon_delta", Value(Object{{"bytes", delta_value(relative_delta_counts(f.toon.bytes, f.json.bytes))},
                                        {"tokens", delta_value(relative_delta_counts(f.toon.tokens, f.json.tokens))}}));
    o.insert("tron_delta", Value(Object{{"bytes", delta_value(relative_delta_counts(f.tron.bytes, f.json.bytes))},
                                        {"tokens", delta_value(relative_delta_counts(f.tron.tokens, f.json.tokens))}}));
    files.push_back(Value(std::move(o)));
  }
  Array aggregates;
  for (const AggregateRow* a : {&r.mean_of_percentages, &r.absolute_sum}) {
    aggregates.push_back(Value(Object{
        {"label", Value(a->label)},
        {"toon_delta", Value(Object{{"bytes", delta_value(a->toon_bytes)}, {"tokens", delta_value(a->toon_tokens)}})},
        {"tron_delta", Value(Object{{"bytes", delta_value(a->tron_bytes)}, {"tokens", delta_value(a->tron_tokens)}})},
    }));
  }
  Object o;
  o.insert("tokenizer", Value(r.tokenizer));
  o.insert("baseline", Value("json-minimal"));
  o.insert("files", Value(std::move(files)));
  o.insert("aggregates", Value(std::move(aggregates)));
  if (r.batch) {
    o.insert("batch", Value(Object{{"tron_batch", cost_value(r.batch->tron_batch)},
                                   {"json_sum", cost_value(r.batch->json_sum)},
                                   {"tron_sum", cost_value(r.batch->tron_sum)},
                                   {"delta", Value(Object{{"bytes", delta_value(r.batch->vs_json_bytes)},
                                                          {"tokens", delta_value(r.batch->vs_json_tokens)}})}}));
  }
  return Value(std::move(o));
}

int cmd_measure(const MeasureArgs& a) {
  const Tokenizer tok = make_tokenizer(a.tokenizer);
  const auto docs = load_corpus(a.dir);
  const CorpusReport r =
      a.serial ? measure_corpus_serial(docs, tok, a.batch) : measure_corpus_parallel(docs, tok, a.batch);
  if (!a.out.empty()) write_file(a.out, encode_json(report_value(r), JsonStyle::pretty(2)) + "\n");
  std::cout << render_report(r);
  return kExitOk;
}

// ------------------------------------------------------------ replay

struct ReplayArgs {
  std::string trace, catalog, executor;
  std::string format = "json";
  std::string mode = "input-only";
  double failure_rate = 0.0;
  std::uint64_t seed = 0;
  std::size_t max_iterations = 20;
  bool no_batch = false;
  TokenizerArgs tokenizer;
  std::string out;
};

void print_breakdown(const std::string& name, const TrajectoryRecord& rec, const TokenBreakdown& b) {
  std::printf("%-6s iterations=%zu steps=%zu cascade=%zu status=%s\n", name.c_str(), rec.iterations(),
              rec.step_count(), rec.cascade_count, std::string(terminal_name(rec.status)).c_str());
  std::printf("       schema=%zu call=%zu result=%zu other=%zu prompt=%zu completion=%zu total=%zu\n",
              b.schema_tokens, b.call_tokens, b.result_tokens, b.other_tokens(), b.prompt_tokens,
              b.completion_tokens, b.total);
}

Value breakdown_value(const TrajectoryRecord& rec, const TokenBreakdown& b) {
  return Value(Object{{"format", Value(std::string(format_name(rec.format)))},
                      {"mode", Value(std::string(mode_name(rec.mode)))},
                      {"iterations", count_value(rec.iterations())},
                      {"steps", count_value(rec.step_count())},
                      {"cascade_count", count_value(rec.cascade_count)},
                      {"status", Value(std::string(terminal_name(rec.status)))},
                      {"schema_tokens", count_value(b.schema_tokens)},
                      {"call_tokens", count_value(b.call_tokens)},
                      {"result_tokens", count_value(b.result_tokens)},
                      {"prompt_tokens", count_value(b.prompt_tokens)},
                      {"completion_tokens", count_value(b.completion_tokens)},
                      {"total", count_value(b.total)}});
}

int cmd_replay(const ReplayArgs& a) {
  LoopConfig cfg;
  cfg.format = format_arg(a.format);
  const auto mode = parse_mode(a.mode);
  if (!mode) fail(kExitUsage, "unknown mode: " + a.mode);
  cfg.mode = *mode;
  cfg.failure = {a.failure_rate, a.seed};
  cfg.max_iterations = a.max_iterations;
  cfg.tron_batching = !a.no_batch;
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    fail(kExitUsage, e.what());
  }
  const Tokenizer tok = make_tokenizer(a.tokenizer);

  Trace trace;
  std::vector<ToolSchema> catalog;
  std::string executor_text = read_file(a.executor);
  try {
    trace = trace_from_records(parse_trace_records(read_file(a.trace)));
    catalog = parse_catalog(read_file(a.catalog));
    parse_executor(executor_text);
  } catch (const ExitError&) {
    throw;
  } catch (const std::exception& e) {
    fail(kExitDecode, std::string("fixture: ") + e.what());
  }

  // The reference run is the clean JSON pipeline.
  LoopConfig ref_cfg = cfg;
  ref_cfg.format = Format::kJson;
  ref_cfg.failure.rate = 0.0;

  auto run = [&](const LoopConfig& c) {
    ScriptedAgent agent(trace.turns);
    TableExecutor executor = parse_executor(executor_text);
    try {
      return run_trajectory(trace.task, agent, executor, catalog, c);
    } catch (const AbortedTrajectory& e) {
      fail(kExitDecode, std::string("aborted: ") + e.what());
    }
  };
  const TrajectoryRecord target = run(cfg);
  const TrajectoryRecord reference = run(ref_cfg);
  const TokenBreakdown tb = decompose(target, tok);
  const TokenBreakdown rb = decompose(reference, tok);
  const DeltaReport d = delta_vs_baseline(tb, rb);

  std::printf("tokenizer: %s\n", std::string(tok.name()).c_str());
  print_breakdown(std::string(format_name(cfg.format)), target, tb);
  print_breakdown("json", reference, rb);
  std::printf("delta vs %s: schema=%s call=%s result=%s prompt=%s completion=%s total=%s\n", d.baseline.c_str(),
              d.schema.str().c_str(), d.call.str().c_str(), d.result.str().c_str(), d.prompt.str().c_str(),
              d.completion.str().c_str(), d.total.str().c_str());

  if (!a.out.empty()) {
    const Value report(Object{
        {"tokenizer", Value(std::string(tok.name()))},
        {"target", breakdown_value(target, tb)},
        {"reference", breakdown_value(reference, rb)},
        {"delta", Value(Object{{"schema", delta_value(d.schema)},
                               {"call", delta_value(d.call)},
                               {"result", delta_value(d.result)},
                               {"prompt", delta_value(d.prompt)},
                               {"completion", delta_value(d.completion)},
                               {"total", delta_value(d.total)}})},
    });
    write_file(a.out, encode_json(report, JsonStyle::pretty(2)) + "\n");
  }
  return kExitOk;
}

// ------------------------------------------------------------ roundtrip

struct RoundtripArgs {
  std::uint64_t seed = 1;
  std::size_t count = 10000;
  std::string profile = "mixed";
  bool serial = false;
};

int cmd_roundtrip(const RoundtripArgs& a) {
  if (a.count == 0) fail(kExitUsage, "--count must be at least 1");
  GenProfile profile;
  try {
    profile = GenProfile::by_name(a.profile);
  } catch (const std::invalid_argument& e) {
    fail(kExitUsage, e.what());
  }
  const RoundtripSummary s =
      a.serial ? roundtrip_serial(a.seed, a.count, profile) : roundtrip_parallel(a.seed, a.count, profile);
  if (s.failures == 0) {
    std::printf("roundtrip: %zu/%zu passed (profile %s, seeds %llu..%llu)\n", s.count, s.count, a.profile.c_str(),
                static_cast<unsigned long long>(a.seed), static_cast<unsigned long long>(a.seed + a.count - 1));
    return kExitOk;
  }
  std::printf("roundtrip: %zu/%zu failed (profile %s)\n", s.failures, s.count, a.profile.c_str());
  std::printf("first counterexample: seed %llu, format %s: %s\n%s\n",
              static_cast<unsigned long long>(s.first->seed), std::string(format_name(s.first->format)).c_str(),
              s.first->message.c_str(), s.first->json.c_str());
  return kExitProperty;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convert, measure and replay JSON, TOON and TRON documents."};
  app.require_subcommand(1);

  ConvertArgs convert;
  auto* c = app.add_subcommand("convert", "Re-encode a document in another format");
  c->add_option("input", convert.input, "Input file, or - for standard input");
  c->add_option("--from", convert.from, "Input format")->capture_default_str();
  c->add_option("--to,--format", convert.to, "Output format")->envname("NOTATION_FORMAT")->capture_default_str();
  c->add_option("--pretty", convert.pretty, "Indent JSON output by this many spaces");
  c->add_flag("--toon-root-wrapped", convert.toon_wrapped, "TOON input wraps a non-object root");

  MeasureArgs measure;
  auto* m = app.add_subcommand("measure", "Byte and token deltas of TOON and TRON against minimal JSON");
  m->add_option("corpus", measure.dir, "Directory of .json files")->required();
  add_tokenizer_options(m, measure.tokenizer);
  m->add_flag("--batch", measure.batch, "Also measure TRON as one batch over the corpus");
  m->add_flag("--serial", measure.serial, "Use the single-threaded reference kernel");
  m->add_option("--out", measure.out, "Write the report as JSON");

  ReplayArgs replay;
  auto* r = app.add_subcommand("replay", "Replay a scripted trajectory against a clean JSON reference");
  r->add_option("--trace", replay.trace, "Trace fixture (line-delimited JSON)")->required();
  r->add_option("--catalog", replay.catalog, "Tool catalog fixture")->required();
  r->add_option("--executor", replay.executor, "Executor fixture")->required();
  r->add_option("--format", replay.format, "Target format")->envname("NOTATION_FORMAT")->capture_default_str();
  r->add_option("--mode", replay.mode, "input-only or full")->capture_default_str();
  r->add_option("--failure-rate", replay.failure_rate, "Probability of corrupting a scripted step")
      ->check(CLI::Range(0.0, 1.0));
  r->add_option("--seed", replay.seed, "Failure injection seed");
  r->add_option("--max-iterations", replay.max_iterations)->capture_default_str();
  r->add_flag("--no-batch", replay.no_batch, "Serialize TRON schemas one by one");
  add_tokenizer_options(r, replay.tokenizer);
  r->add_option("--out", replay.out, "Write the summary as JSON");

  RoundtripArgs roundtrip;
  auto* t = app.add_subcommand("roundtrip", "Check generated values through all three codecs");
  t->add_option("--seed", roundtrip.seed, "First seed")->capture_default_str();
  t->add_option("--count", roundtrip.count, "Number of values")->capture_default_str();
  t->add_option("--profile", roundtrip.profile, "mixed, delimiter, tabular or scalar")->capture_default_str();
  t->add_flag("--serial", roundtrip.serial, "Use the single-threaded reference kernel");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*c) return cmd_convert(convert);
    if (*m) return cmd_measure(measure);
    if (*r) return cmd_replay(replay);
    return cmd_roundtrip(roundtrip);
  } catch (const ExitError& e) {
    std::cerr << "error: " << e.message << '\n';
    return e.code;
  }
}
