#ifndef NOTATION_TRAJECTORY_HPP_
#define NOTATION_TRAJECTORY_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "notation/format.hpp"

namespace notation {

// Where a piece of conversation text came from.
enum class SpanOrigin { kUntagged, kSchema, kCall, kResult, kOther };

// Prompt spans are model input; completion spans are model output.
enum class SpanSide { kPrompt, kCompletion };

struct Span {
  SpanOrigin origin = SpanOrigin::kUntagged;
  SpanSide side = SpanSide::kPrompt;
  std::string text;
};

enum class ParseStage { kThink, kFence, kDecode, kShape };

std::string_view stage_name(ParseStage s);

struct ParseFailureInfo {
  ParseStage stage = ParseStage::kDecode;
  std::string detail;
};

enum class Mode { kInputOnly, kFull };

std::string_view mode_name(Mode m);
std::optional<Mode> parse_mode(std::string_view name);

enum class TurnOutcome { kStep, kFinal, kParseError };

struct TurnRecord {
  std::size_t index = 0;
  std::string raw;
  bool think_stripped = false;
  bool fence_extracted = false;
  TurnOutcome outcome = TurnOutcome::kParseError;
  std::optional<ParseFailureInfo> failure;
  std::string action;           // set for steps
  std::string canonical_args;   // minimal JSON handed to the executor
  // The agent's output followed by whatever observation the loop appended.
  std::vector<Span> spans;
};

enum class TerminalStatus { kFinalAnswer, kIterationCap, kAborted };

std::string_view terminal_name(TerminalStatus s);

struct TrajectoryRecord {
  Format format = Format::kJson;
  Mode mode = Mode::kInputOnly;
  std::vector<Span> preamble;  // system prompt and task
  std::vector<TurnRecord> turns;
  std::size_t cascade_count = 0;
  TerminalStatus status = TerminalStatus::kIterationCap;
  std::string final_answer;

  std::size_t iterations() const { return turns.size(); }
  std::size_t step_count() const;
};

}  // namespace notation

#endif  // NOTATION_TRAJECTORY_HPP_
