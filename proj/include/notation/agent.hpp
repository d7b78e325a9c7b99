#ifndef NOTATION_AGENT_HPP_
#define NOTATION_AGENT_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "notation/format.hpp"
#include "notation/trajectory.hpp"
#include "notation/value.hpp"

namespace notation {

struct ToolSchema {
  std::string name;
  std::string description;
  Value parameters;  // an Object describing typed parameters

  Value to_value() const;
  // Throws std::invalid_argument unless `v` is {name, description, parameters}.
  static ToolSchema from_value(const Value& v);
};

// Non-empty, unique names. Throws std::invalid_argument otherwise.
void validate_catalog(std::span<const ToolSchema> catalog);

struct Step {
  std::string thought;
  std::string action;
  Value arguments;  // always an Object
};

struct Final {
  std::string answer;
};

using Envelope = std::variant<Step, Final>;

Value envelope_to_value(const Envelope& e);
bool envelopes_equal(const Envelope& a, const Envelope& b);

struct FailureInjection {
  double rate = 0.0;  // probability in [0, 1] that a scripted step is corrupted
  std::uint64_t seed = 0;
};

struct LoopConfig {
  Format format = Format::kJson;
  Mode mode = Mode::kInputOnly;
  std::size_t max_iterations = 20;
  FailureInjection failure;
  bool tron_batching = true;

  // Calls are written in the target format only in full mode.
  Format output_format() const { return mode == Mode::kFull ? format : Format::kJson; }
  void validate() const;
};

class ParseFailure : public std::runtime_error {
 public:
  ParseFailure(ParseStage stage, std::string detail)
      : std::runtime_error(std::string(stage_name(stage)) + ": " + detail),
        info_{stage, std::move(detail)} {}
  ParseStage stage() const { return info_.stage; }
  const std::string& detail() const { return info_.detail; }
  const ParseFailureInfo& info() const { return info_; }

 private:
  ParseFailureInfo info_;
};

// ------------------------------------------------------------ system prompt

struct SystemPrompt {
  std::string text;            // concatenation of spans
  std::vector<Span> spans;     // instructions / schema block / templates
  std::string schema_block;
};

SystemPrompt build_system_prompt(std::span<const ToolSchema> catalog, const LoopConfig& cfg);

// Separator between individually serialized TOON/TRON schema documents.
inline constexpr std::string_view kSchemaSeparator = "---";

// Reads a schema block back into schema Values.
std::vector<Value> decode_schema_block(std::string_view block, Format format, bool tron_batched);

// ------------------------------------------------------------ envelopes

struct ParsedEnvelope {
  Envelope envelope;
  bool think_stripped = false;
  bool fence_extracted = false;
  std::string think;     // content between the think tags
  std::string fence_info;  // info string after the opening fence
  std::string document;  // text handed to the decoder
  std::size_t doc_begin = 0;  // document's byte range within the raw text
  std::size_t doc_end = 0;
};

// Strips a leading think block, extracts the first fenced block, decodes
// strictly, and maps the object onto Step or Final. Throws ParseFailure.
ParsedEnvelope parse_envelope_detailed(std::string_view raw, Format expected);
Envelope parse_envelope(std::string_view raw, Format expected);

// The envelope as a stand-alone document in `f`.
std::string render_envelope(const Envelope& e, Format f);

// Full agent text: optional think block, optional fence, document.
std::string render_agent_text(std::string_view document, Format f,
                              const std::optional<std::string>& think, bool fenced);

enum class Mutator { kTruncateLastLine, kSwapDelimiter, kRenameActionKey };

std::string_view mutator_name(Mutator m);
// The parse stage each mutator is designed to trip.
ParseStage designated_stage(Mutator m);
// Corrupts a rendered document (not the think/fence wrapper).
std::string apply_mutator(std::string_view document, Mutator m, Format f);

// ------------------------------------------------------------ agent / executor

struct AgentRequest {
  std::size_t iteration = 0;
  Format output_format = Format::kJson;
  FailureInjection failure;
  const std::optional<ParseFailureInfo>* last_failure = nullptr;
};

class AgentModel {
 public:
  virtual ~AgentModel() = default;
  virtual std::string respond(const AgentRequest& req) = 0;
};

struct ScriptTurn {
  std::optional<Envelope> envelope;  // empty: replay `literal` verbatim
  std::string literal;
  std::optional<std::string> think;
  bool fenced = false;
};

// Replays script turns, rendering each envelope in the requested output
// format. A corrupted turn is immediately followed by its clean retry.
class ScriptedAgent : public AgentModel {
 public:
  explicit ScriptedAgent(std::vector<ScriptTurn> turns) : turns_(std::move(turns)) {}

  std::string respond(const AgentRequest& req) override;
  void reset() {
    cursor_ = 0;
    retry_pending_ = false;
  }
  std::size_t corrupted_count() const { return corrupted_; }
  const std::vector<ScriptTurn>& turns() const { return turns_; }

 private:
  std::vector<ScriptTurn> turns_;
  std::size_t cursor_ = 0;
  bool retry_pending_ = false;
  std::size_t corrupted_ = 0;
};

// Deterministic injection decision for script turn `index`.
struct InjectionDraw {
  bool corrupt = false;
  Mutator mutator = Mutator::kTruncateLastLine;
};
InjectionDraw draw_injection(const FailureInjection& f, std::size_t index);

class ToolExecutor {
 public:
  virtual ~ToolExecutor() = default;
  // Returns nullopt when the executor has no answer for this call.
  virtual std::optional<Value> call(const std::string& tool, const std::string& canonical_args) = 0;
};

// Maps (tool, canonical minimal-JSON arguments) to a result Value.
class TableExecutor : public ToolExecutor {
 public:
  void add(std::string tool, const Value& arguments, Value result);
  std::optional<Value> call(const std::string& tool, const std::string& canonical_args) override;

  // Every call received, in order.
  const std::vector<std::pair<std::string, std::string>>& calls() const { return calls_; }

 private:
  std::map<std::pair<std::string, std::string>, Value> table_;
  std::vector<std::pair<std::string, std::string>> calls_;
};

class AbortedTrajectory : public std::runtime_error {
 public:
  AbortedTrajectory(const std::string& what, TrajectoryRecord partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const TrajectoryRecord& partial() const { return partial_; }

 private:
  TrajectoryRecord partial_;
};

// Plain-text observation appended after a parse failure.
std::string format_error_observation(ParseStage stage, Format output_format);
inline constexpr std::string_view kObservationPrefix = "Observation:\n";

TrajectoryRecord run_trajectory(const std::string& task, AgentModel& agent, ToolExecutor& executor,
                                std::span<const ToolSchema> catalog, const LoopConfig& cfg);

// ------------------------------------------------------------ fixtures

struct TraceRecord {
  std::size_t turn = 0;
  std::string role;  // "user" or "agent"
  std::string text;
};

struct Trace {
  std::string task;
  std::vector<ScriptTurn> turns;
};

// Line-delimited JSON records {"turn":n,"role":"user"|"agent","text":"..."}.
// Agent texts are parsed as JSON envelopes; unparsable ones are kept verbatim.
std::vector<TraceRecord> parse_trace_records(std::string_view jsonl);
Trace trace_from_records(const std::vector<TraceRecord>& records);
std::string trace_to_jsonl(const std::vector<TraceRecord>& records);

// JSON array of {name, description, parameters}.
std::vector<ToolSchema> parse_catalog(std::string_view json_text);
// JSON array of {tool, arguments, result}.
TableExecutor parse_executor(std::string_view json_text);

}  // namespace notation

#endif  // NOTATION_AGENT_HPP_
