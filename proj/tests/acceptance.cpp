// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "notation/agent.hpp"
#include "notation/corpus.hpp"
#include "notation/json.hpp"
#include "notation/meter.hpp"
#include "notation/roundtrip.hpp"
#include "notation/toon.hpp"
#include "notation/tron.hpp"
#include "support.hpp"

namespace {

using namespace notation;
namespace fs = std::filesystem;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string strip_newline(std::string s) {
  if (!s.empty() && s.back() == '\n') s.pop_back();
  return s;
}

std::vector<Value> load_dir(const std::string& dir) {
  std::vector<std::string> names;
  for (const auto& e : fs::directory_iterator(testing::fixture_path(dir))) names.push_back(e.path().filename().string());
  std::sort(names.begin(), names.end());
  std::vector<Value> out;
  for (const auto& n : names) out.push_back(decode_json(testing::read_fixture(dir + "/" + n)));
  return out;
}

// ------------------------------------------------------------ 1

Outcome golden_fidelity() {
  const Value sample = testing::hikes_sample();
  const std::string toon_golden = strip_newline(testing::read_fixture("golden/hikes.toon"));
  const std::string tron_golden = strip_newline(testing::read_fixture("golden/hikes.tron"));
  const std::string display = testing::unwrap_tron_display(testing::read_fixture("golden/hikes_display.tron"));
  const std::string toon = encode_toon(sample);
  const std::string tron = encode_tron(sample);
  const bool toon_ok = toon == toon_golden;
  const bool tron_ok = tron == tron_golden && tron == display;
  const bool back_ok = equals(decode_toon(toon_golden), sample) && equals(decode_tron(tron_golden), sample) &&
                       equals(decode_tron(display), sample);
  std::ostringstream d;
  d << "toon " << (toon_ok ? "byte-exact" : "differs") << " (" << toon.size() << " B), tron "
    << (tron_ok ? "exact after unwrap" : "differs") << " (" << tron.size() << " B), decode "
    << (back_ok ? "identical" : "differs");
  return {toon_ok && tron_ok && back_ok, d.str()};
}

// ------------------------------------------------------------ 2

Outcome roundtrip_property() {
  struct Run {
    const char* name;
    GenProfile profile;
  };
  const Run runs[] = {{"mixed", GenProfile::mixed()}, {"delimiter", GenProfile::delimiter_heavy()}};
  std::size_t total = 0, failures = 0;
  std::string first;
  for (const auto& r : runs) {
    const RoundtripSummary s = roundtrip_parallel(1, 10000, r.profile);
    total += s.count;
    failures += s.failures;
    if (s.first && first.empty()) {
      first = std::string(r.name) + " seed " + std::to_string(s.first->seed) + " " +
              std::string(format_name(s.first->format)) + ": " + s.first->message;
    }
  }
  std::ostringstream d;
  d << (total - failures) << "/" << total << " values round-trip (10000 mixed, 10000 delimiter-heavy)";
  if (!first.empty()) d << "; first failure " << first;
  return {failures == 0 && total == 20000, d.str()};
}

// ------------------------------------------------------------ 3

// Five tools whose parameters share one signature.
std::vector<Value> shared_signature_catalog() {
  auto param = [](const char* type, const char* desc) {
    return Value(Object{{"type", Value(type)}, {"description", Value(desc)}});
  };
  auto tool = [&](const char* name, const char* desc, const char* a, const char* b) {
    return Value(Object{{"name", Value(name)},
                        {"description", Value(desc)},
                        {"parameters", Value(Object{{"query", param("string", a)}, {"limit", param("integer", b)}})}});
  };
  return {tool("search_trails", "Find trails.", "Region or trail name", "Max results"),
          tool("search_peaks", "Find summits.", "Range or peak name", "Max results"),
          tool("search_lakes", "Find alpine lakes.", "Basin name", "Max results"),
          tool("search_huts", "Find huts.", "Area name", "Max results"),
          tool("search_permits", "Find permit offices.", "District", "Max results")};
}

Outcome batching_condition() {
  const auto docs = shared_signature_catalog();
  const std::size_t batched = encode_tron_batch(docs).size();
  std::size_t individual = 0, json = 0;
  for (const auto& v : docs) {
    individual += encode_tron(v).size();
    json += encode_json(v).size();
  }
  const bool back = [&] {
    const auto decoded = decode_tron_batch(encode_tron_batch(docs));
    if (decoded.size() != docs.size()) return false;
    for (std::size_t i = 0; i < docs.size(); ++i) {
      if (!equals(decoded[i], docs[i])) return false;
    }
    return true;
  }();
  std::ostringstream d;
  d << "batched tron " << batched << " B, individual tron sum " << individual << " B, minimal json sum " << json
    << " B (" << relative_delta_counts(batched, json).str() << ")";
  return {batched < individual && batched < json && back, d.str()};
}

// ------------------------------------------------------------ 4

Outcome backfire_regime() {
  const auto docs = load_dir("schemas");
  bool forced_ok = true, default_ok = true;
  std::size_t min_gap = SIZE_MAX;
  for (const auto& v : docs) {
    const std::size_t json = encode_json(v).size();
    const std::size_t forced = encode_tron(v, TronOptions{1}).size();
    forced_ok = forced_ok && forced >= json && equals(decode_tron(encode_tron(v, TronOptions{1})), v);
    min_gap = std::min(min_gap, forced - std::min(forced, json));
    const Value one[] = {v};
    const std::size_t block = tron_class_block_bytes(extract_classes(one));
    const std::size_t plain = encode_tron(v).size();
    default_ok = default_ok && block == 0 && plain == json;
  }
  std::ostringstream d;
  d << docs.size() << " singleton schemas: min_occurrences=1 gives tron >= json on every file (smallest excess "
    << min_gap << " B); default threshold emits no classes and tron == json";
  return {forced_ok && default_ok && !docs.empty(), d.str()};
}

// ------------------------------------------------------------ 5

Outcome tabular_compression() {
  std::size_t wins = 0, tables = 0;
  double worst = -100.0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const Value v = generate(seed, GenProfile::tabular());
    const Array& rows = v.as_array();
    const bool shaped = rows.size() >= 3 && rows[0].as_object().size() >= 2 &&
                        classify_array(rows).layout == ArrayLayout::kUniformTable;
    tables += shaped;
    const std::size_t toon = encode_toon(v).size();
    const std::size_t json = encode_json(v).size();
    wins += toon < json;
    worst = std::max(worst, *relative_delta_counts(toon, json).percent);
  }
  std::ostringstream d;
  d << wins << "/1000 tables smaller in toon (" << tables << " uniform, >= 3 rows, >= 2 columns); worst delta "
    << Delta{worst}.str();
  return {wins == 1000 && tables == 1000, d.str()};
}

// ------------------------------------------------------------ 6

// A cascade fixture: a script whose steps may be corrupted by injection,
// replayed in TRON against the clean JSON run.
struct CascadeFixture {
  const char* name;
  std::vector<ScriptTurn> turns;
  FailureInjection failure;
};

const Format kCascadeFormat = Format::kTron;
const Mode kCascadeMode = Mode::kFull;

LoopConfig cascade_config(Format f, FailureInjection failure) {
  LoopConfig cfg;
  cfg.format = f;
  cfg.mode = kCascadeMode;
  cfg.failure = failure;
  return cfg;
}

std::size_t measured_total(const Trace& trace, const CascadeFixture& fx, Format f, FailureInjection failure,
                           std::size_t* cascade = nullptr) {
  ScriptedAgent agent(fx.turns);
  TableExecutor executor = testing::trail_executor();
  const auto catalog = testing::trail_catalog();
  const TrajectoryRecord rec = run_trajectory(trace.task, agent, executor, catalog, cascade_config(f, failure));
  if (cascade != nullptr) *cascade = rec.cascade_count;
  return decompose(rec, Tokenizer::byte_count()).total;
}

std::optional<ParseStage> failure_stage(const std::string& text, Format f) {
  try {
    parse_envelope(text, f);
    return std::nullopt;
  } catch (const ParseFailure& e) {
    return e.stage();
  }
}

// Clean cost of one run, summed from the rendered pieces without the loop.
std::size_t clean_bytes(const std::string& task, const std::vector<ScriptTurn>& turns, Format f) {
  const auto catalog = testing::trail_catalog();
  TableExecutor executor = testing::trail_executor();
  const LoopConfig cfg = cascade_config(f, {});
  const Format out = cfg.output_format();
  std::size_t n = build_system_prompt(catalog, cfg).text.size() + ("Task: " + task + "\n").size();
  for (const auto& t : turns) {
    n += render_agent_text(render_envelope(*t.envelope, out), out, t.think, t.fenced).size();
    if (const auto* step = std::get_if<Step>(&*t.envelope)) {
      const Value result = *executor.call(step->action, encode_json(step->arguments));
      n += kObservationPrefix.size() + encode_as(result, f).size() + 1;
    }
  }
  return n;
}

struct HandSum {
  std::size_t failed_turns = 0;  // E
  std::size_t payload = 0;       // E * p, summed over failed turns
  std::size_t steps = 0;         // T
  long long savings = 0;         // T * s, with the one-off prompt difference
  long long delta() const { return static_cast<long long>(payload) - savings; }
};

HandSum hand_sum(const std::string& task, const CascadeFixture& fx) {
  HandSum h;
  const Format out = cascade_config(kCascadeFormat, {}).output_format();
  for (std::size_t i = 0; i < fx.turns.size(); ++i) {
    const ScriptTurn& t = fx.turns[i];
    if (!std::holds_alternative<Step>(*t.envelope)) continue;
    ++h.steps;
    const InjectionDraw draw = draw_injection(fx.failure, i);
    if (!draw.corrupt) continue;
    const std::string doc = render_envelope(*t.envelope, out);
    for (int k = 0; k < 3; ++k) {
      const auto m = static_cast<Mutator>((static_cast<int>(draw.mutator) + k) % 3);
      const std::string text = render_agent_text(apply_mutator(doc, m, out), out, t.think, t.fenced);
      const auto stage = failure_stage(text, out);
      if (!stage) continue;
      ++h.failed_turns;
      h.payload += text.size() + format_error_observation(*stage, out).size();
      break;
    }
  }
  h.savings = static_cast<long long>(clean_bytes(task, fx.turns, Format::kJson)) -
              static_cast<long long>(clean_bytes(task, fx.turns, kCascadeFormat));
  return h;
}

int sign(long long x) { return (x > 0) - (x < 0); }

// Script: the trail trace with all wrappers removed, so retries cost exactly
// the corrupted text plus the error observation.
std::vector<ScriptTurn> bare_script(const Trace& trace) {
  std::vector<ScriptTurn> turns = trace.turns;
  for (auto& t : turns) {
    t.think.reset();
    t.fenced = false;
  }
  return turns;
}

// Seed under which exactly the step turns in `targets` are corrupted.
FailureInjection injection_for(const std::vector<ScriptTurn>& turns, const std::vector<std::size_t>& targets,
                               double rate) {
  for (std::uint64_t seed = 0; seed < 100000; ++seed) {
    const FailureInjection f{rate, seed};
    bool match = true;
    for (std::size_t i = 0; i < turns.size() && match; ++i) {
      if (!std::holds_alternative<Step>(*turns[i].envelope)) continue;
      const bool wanted = std::find(targets.begin(), targets.end(), i) != targets.end();
      match = draw_injection(f, i).corrupt == wanted;
    }
    if (match) return f;
  }
  throw std::runtime_error("no seed corrupts the requested turns");
}

Outcome cascade_arithmetic() {
  const Trace trace = testing::trail_trace();
  const std::vector<ScriptTurn> base = bare_script(trace);

  // Negative: one failure on the first step, which is cheaper than the savings.
  CascadeFixture negative{"negative", base, injection_for(base, {0}, 0.5)};

  // Zero-crossing: the same failure with a think block on the corrupted turn,
  // lengthened until the payload meets the savings.
  CascadeFixture zero{"zero-crossing", base, negative.failure};
  zero.turns[0].think = std::string();
  const long long short_of_zero = hand_sum(trace.task, zero).delta();
  zero.turns[0].think = std::string(static_cast<std::size_t>(std::max(0LL, -short_of_zero)), 'r');

  // Positive: every step fails with a long reasoning prefix.
  CascadeFixture positive{"positive", base, FailureInjection{1.0, 3}};
  for (auto& t : positive.turns) t.think = std::string(300, 'r');

  bool ok = true;
  std::ostringstream d;
  const int expected_signs[] = {-1, 0, 1};
  int idx = 0;
  for (const CascadeFixture* fx : {&negative, &zero, &positive}) {
    std::size_t cascade = 0;
    const long long target = static_cast<long long>(measured_total(trace, *fx, kCascadeFormat, fx->failure, &cascade));
    const long long reference = static_cast<long long>(measured_total(trace, *fx, Format::kJson, {}));
    const long long measured = target - reference;
    const HandSum h = hand_sum(trace.task, *fx);
    const bool within = std::llabs(measured - h.delta()) <= 1;
    const bool sign_ok = sign(measured) == sign(h.delta()) && sign(measured) == expected_signs[idx];
    ok = ok && within && sign_ok && cascade == h.failed_turns;
    d << (idx ? "; " : "") << fx->name << ": E=" << h.failed_turns << " T=" << h.steps << " E*p=" << h.payload
      << " T*s=" << h.savings << " hand " << h.delta() << " measured " << measured;
    ++idx;
  }
  return {ok, d.str()};
}

// ------------------------------------------------------------ 7

Outcome decomposition_integrity() {
  const Trace trace = testing::trail_trace();
  const auto catalog = testing::trail_catalog();
  const Tokenizer tokenizers[] = {Tokenizer::byte_count(), Tokenizer::word_regex()};
  std::size_t runs = 0;
  bool ok = true;
  for (Format f : {Format::kJson, Format::kToon, Format::kTron}) {
    for (Mode m : {Mode::kInputOnly, Mode::kFull}) {
      for (double rate : {0.0, 0.5, 1.0}) {
        for (bool batching : {true, false}) {
          LoopConfig cfg;
          cfg.format = f;
          cfg.mode = m;
          cfg.failure = {rate, 11};
          cfg.tron_batching = batching;
          ScriptedAgent agent(trace.turns);
          TableExecutor executor = testing::trail_executor();
          const TrajectoryRecord rec = run_trajectory(trace.task, agent, executor, catalog, cfg);
          for (const Tokenizer& tok : tokenizers) {
            const TokenBreakdown b = decompose(rec, tok);
            ok = ok && b.schema_tokens + b.call_tokens + b.result_tokens <= b.total &&
                 b.prompt_tokens + b.completion_tokens == b.total;
            const DeltaReport self = delta_vs_baseline(b, b);
            for (const Delta* dl : {&self.schema, &self.call, &self.result, &self.prompt, &self.completion, &self.total}) {
              ok = ok && dl->str() == "0.0%";
            }
            ++runs;
          }
        }
      }
    }
  }
  std::vector<CorpusDocument> docs;
  for (const auto& e : fs::directory_iterator(testing::fixture_path("corpus"))) {
    docs.push_back({e.path().filename().string(), decode_json(testing::read_fixture("corpus/" + e.path().filename().string()))});
  }
  const CorpusReport r = measure_corpus_parallel(docs, Tokenizer::byte_count(), false);
  const bool labels = r.mean_of_percentages.label == kMeanOfPercentagesLabel &&
                      r.absolute_sum.label == kAbsoluteSumLabel && r.mean_of_percentages.label != r.absolute_sum.label &&
                      r.mean_of_percentages.toon_bytes.percent && r.absolute_sum.toon_bytes.percent;
  std::ostringstream d;
  d << runs << " replayed trajectories: components <= total, self deltas 0.0%; corpus aggregates "
    << r.mean_of_percentages.label << " toon " << r.mean_of_percentages.toon_bytes.str() << " and "
    << r.absolute_sum.label << " toon " << r.absolute_sum.toon_bytes.str();
  return {ok && labels, d.str()};
}

// ------------------------------------------------------------ 8

Outcome envelope_grid() {
  const Envelope step = Step{"Check the forecast.", "get_weather",
                             Value(Object{{"city", Value("Boulder")}, {"days", Value(3)}})};
  std::size_t cases = 0, passed = 0, mutations = 0, mutations_ok = 0;
  for (Format f : {Format::kJson, Format::kToon, Format::kTron}) {
    const std::string doc = render_envelope(step, f);
    for (int w = 0; w < 4; ++w) {
      const bool think = w & 1, fenced = w & 2;
      const std::string raw =
          render_agent_text(doc, f, think ? std::optional<std::string>("Weather first.") : std::nullopt, fenced);
      ++cases;
      try {
        const ParsedEnvelope p = parse_envelope_detailed(raw, f);
        passed += envelopes_equal(p.envelope, step) && p.think_stripped == think && p.fence_extracted == fenced;
      } catch (const ParseFailure&) {
      }
    }
    for (Mutator m : {Mutator::kTruncateLastLine, Mutator::kSwapDelimiter, Mutator::kRenameActionKey}) {
      ++mutations;
      try {
        parse_envelope(apply_mutator(doc, m, f), f);
      } catch (const ParseFailure& e) {
        mutations_ok += e.stage() == designated_stage(m);
      }
    }
  }
  std::ostringstream d;
  d << passed << "/" << cases << " wrapped fixtures parse to the clean envelope; " << mutations_ok << "/" << mutations
    << " mutators fail at their designated stage";
  return {passed == cases && cases == 12 && mutations_ok == mutations, d.str()};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> check;
  };
  const Criterion criteria[] = {
      {"golden-fidelity", golden_fidelity},
      {"roundtrip-property", roundtrip_property},
      {"tron-batching", batching_condition},
      {"backfire-regime", backfire_regime},
      {"tabular-compression", tabular_compression},
      {"cascade-arithmetic", cascade_arithmetic},
      {"decomposition-integrity", decomposition_integrity},
      {"envelope-preprocessing", envelope_grid},
  };
  int failed = 0;
  int n = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %d %s: %s\n", o.pass ? "PASS" : "FAIL", ++n, c.name, o.detail.c_str());
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
