#include "notation/meter.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace notation {

std::string_view stage_name(ParseStage s) {
  switch (s) {
    case ParseStage::kThink:
      return "think";
    case ParseStage::kFence:
      return "fence";
    case ParseStage::kDecode:
      return "decode";
    case ParseStage::kShape:
      return "shape";
  }
  return "decode";
}

std::string_view mode_name(Mode m) { return m == Mode::kFull ? "full" : "input-only"; }

std::optional<Mode> parse_mode(std::string_view name) {
  if (name == "full") return Mode::kFull;
  if (name == "input-only" || name == "input_only" || name == "input") return Mode::kInputOnly;
  return std::nullopt;
}

std::string_view terminal_name(TerminalStatus s) {
  switch (s) {
    case TerminalStatus::kFinalAnswer:
      return "final";
    case TerminalStatus::kIterationCap:
      return "iteration-cap";
    case TerminalStatus::kAborted:
      return "aborted";
  }
  return "aborted";
}

std::size_t TrajectoryRecord::step_count() const {
  std::size_t n = 0;
  for (const auto& t : turns) n += t.outcome == TurnOutcome::kStep;
  return n;
}

namespace {

void add_span(TokenBreakdown& b, const Span& s, const Tokenizer& tok) {
  if (s.origin == SpanOrigin::kUntagged) {
    throw UntaggedSpan("span without origin: \"" + s.text.substr(0, 40) + "\"");
  }
  const std::size_t n = tok.count(s.text);
  switch (s.origin) {
    case SpanOrigin::kSchema:
      b.schema_tokens += n;
      break;
    case SpanOrigin::kCall:
      b.call_tokens += n;
      break;
    case SpanOrigin::kResult:
      b.result_tokens += n;
      break;
    default:
      break;
  }
  (s.side == SpanSide::kPrompt ? b.prompt_tokens : b.completion_tokens) += n;
  b.total += n;
}

}  // namespace

TokenBreakdown decompose(const TrajectoryRecord& tr, const Tokenizer& tok) {
  TokenBreakdown b;
  for (const auto& s : tr.preamble) add_span(b, s, tok);
  for (const auto& turn : tr.turns) {
    for (const auto& s : turn.spans) add_span(b, s, tok);
  }
  return b;
}

double round_one_decimal(double x) { return std::round(x * 10.0) / 10.0; }

Delta relative_delta(double value, double base) {
  if (base == 0.0) return {};
  return {round_one_decimal((value - base) / base * 100.0)};
}

Delta relative_delta_counts(std::size_t value, std::size_t base) {
  if (base == 0) return {};
  // Exact tenths of a percent: round((value - base) * 1000 / base), ties away
  // from zero.
  const long long num = (static_cast<long long>(value) - static_cast<long long>(base)) * 1000;
  const long long den = static_cast<long long>(base);
  const long long mag = (std::llabs(num) * 2 + den) / (2 * den);
  const long long tenths = num < 0 ? -mag : mag;
  return {static_cast<double>(tenths) / 10.0};
}

std::string Delta::str() const {
  if (!percent) return "n/a";
  if (*percent == 0.0) return "0.0%";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%+.1f%%", *percent);
  return buf;
}

DeltaReport delta_vs_baseline(const TokenBreakdown& x, const TokenBreakdown& base,
                              std::string baseline_name) {
  auto d = [](std::size_t a, std::size_t b) { return relative_delta_counts(a, b); };
  return {std::move(baseline_name),
          d(x.schema_tokens, base.schema_tokens),
          d(x.call_tokens, base.call_tokens),
          d(x.result_tokens, base.result_tokens),
          d(x.prompt_tokens, base.prompt_tokens),
          d(x.completion_tokens, base.completion_tokens),
          d(x.total, base.total)};
}

}  // namespace notation
