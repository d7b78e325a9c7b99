#include <stdexcept>

#include "notation/agent.hpp"
#include "notation/json.hpp"

namespace notation {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

bool still_parses(std::string_view text, Format f) {
  try {
    parse_envelope(text, f);
    return true;
  } catch (const ParseFailure&) {
    return false;
  }
}

}  // namespace

InjectionDraw draw_injection(const FailureInjection& f, std::size_t index) {
  if (f.rate <= 0.0) return {};
  const std::uint64_t a = splitmix64(f.seed ^ splitmix64(index + 1));
  const std::uint64_t b = splitmix64(a);
  const double u = static_cast<double>(a >> 11) * 0x1.0p-53;
  return {u < f.rate, static_cast<Mutator>(b % 3)};
}

std::string ScriptedAgent::respond(const AgentRequest& req) {
  if (cursor_ >= turns_.size()) throw std::out_of_range("scripted agent ran out of turns");
  const ScriptTurn& turn = turns_[cursor_];
  if (!turn.envelope) {
    ++cursor_;
    return turn.literal;
  }
  const Format f = req.output_format;
  const std::string doc = render_envelope(*turn.envelope, f);
  const bool is_step = std::holds_alternative<Step>(*turn.envelope);

  if (retry_pending_ || !is_step) {
    retry_pending_ = false;
    ++cursor_;
    return render_agent_text(doc, f, turn.think, turn.fenced);
  }
  const InjectionDraw draw = draw_injection(req.failure, cursor_);
  if (!draw.corrupt) {
    ++cursor_;
    return render_agent_text(doc, f, turn.think, turn.fenced);
  }
  // Starting from the drawn mutator, take the first one that actually breaks
  // the document; renaming the action key always does.
  std::string text;
  for (int k = 0; k < 3; ++k) {
    const auto m = static_cast<Mutator>((static_cast<int>(draw.mutator) + k) % 3);
    text = render_agent_text(apply_mutator(doc, m, f), f, turn.think, turn.fenced);
    if (!still_parses(text, f)) break;
  }
  retry_pending_ = true;
  ++corrupted_;
  return text;
}

void TableExecutor::add(std::string tool, const Value& arguments, Value result) {
  table_.insert_or_assign({std::move(tool), encode_json(arguments)}, std::move(result));
}

std::optional<Value> TableExecutor::call(const std::string& tool, const std::string& canonical_args) {
  calls_.emplace_back(tool, canonical_args);
  auto it = table_.find({tool, canonical_args});
  if (it == table_.end()) return std::nullopt;
  return it->second;
}

std::string format_error_observation(ParseStage stage, Format output_format) {
  std::string out(kObservationPrefix);
  out += "Format error at the ";
  out += stage_name(stage);
  out += " stage. Reply with one stand-alone ";
  out += format_display_name(output_format);
  out += " document with the keys thought, action and arguments, or with the single key "
         "final_answer.\n";
  return out;
}

namespace {

// Splits agent output into spans: wrapper text is "other", the document is a
// call (or "other" for a final answer).
void completion_spans(TurnRecord& turn, const ParsedEnvelope* parsed, bool is_final) {
  const std::string& raw = turn.raw;
  auto push = [&](SpanOrigin o, std::string text) {
    if (!text.empty()) turn.spans.push_back({o, SpanSide::kCompletion, std::move(text)});
  };
  if (parsed != nullptr) {
    push(SpanOrigin::kOther, raw.substr(0, parsed->doc_begin));
    push(is_final ? SpanOrigin::kOther : SpanOrigin::kCall,
         raw.substr(parsed->doc_begin, parsed->doc_end - parsed->doc_begin));
    push(SpanOrigin::kOther, raw.substr(parsed->doc_end));
    return;
  }
  // Failed attempt: a closed leading think block is reasoning, the rest is
  // the attempted call.
  std::size_t call_begin = 0;
  if (raw.starts_with("<think>")) {
    const std::size_t close = raw.find("</think>");
    if (close != std::string::npos) call_begin = close + 8;
  }
  push(SpanOrigin::kOther, raw.substr(0, call_begin));
  push(SpanOrigin::kCall, raw.substr(call_begin));
}

bool in_catalog(std::span<const ToolSchema> catalog, const std::string& name) {
  for (const auto& s : catalog) {
    if (s.name == name) return true;
  }
  return false;
}

}  // namespace

TrajectoryRecord run_trajectory(const std::string& task, AgentModel& agent, ToolExecutor& executor,
                                std::span<const ToolSchema> catalog, const LoopConfig& cfg) {
  cfg.validate();
  TrajectoryRecord rec;
  rec.format = cfg.format;
  rec.mode = cfg.mode;
  const SystemPrompt prompt = build_system_prompt(catalog, cfg);
  rec.preamble = prompt.spans;
  rec.preamble.push_back({SpanOrigin::kOther, SpanSide::kPrompt, "Task: " + task + "\n"});

  const Format out_fmt = cfg.output_format();
  std::optional<ParseFailureInfo> last_failure;

  auto abort = [&](const std::string& why) {
    rec.status = TerminalStatus::kAborted;
    throw AbortedTrajectory(why, rec);
  };

  for (std::size_t it = 0; it < cfg.max_iterations; ++it) {
    TurnRecord turn;
    turn.index = it;
    AgentRequest req{it, out_fmt, cfg.failure, &last_failure};
    try {
      turn.raw = agent.respond(req);
    } catch (const std::out_of_range& e) {
      abort(e.what());
    }

    std::optional<ParsedEnvelope> parsed;
    try {
      parsed = parse_envelope_detailed(turn.raw, out_fmt);
      turn.think_stripped = parsed->think_stripped;
      turn.fence_extracted = parsed->fence_extracted;
      if (const auto* step = std::get_if<Step>(&parsed->envelope);
          step != nullptr && !in_catalog(catalog, step->action)) {
        throw ParseFailure(ParseStage::kShape, "unknown tool " + step->action);
      }
    } catch (const ParseFailure& pf) {
      turn.outcome = TurnOutcome::kParseError;
      turn.failure = pf.info();
      last_failure = pf.info();
      completion_spans(turn, nullptr, false);
      turn.spans.push_back(
          {SpanOrigin::kOther, SpanSide::kPrompt, format_error_observation(pf.stage(), out_fmt)});
      rec.turns.push_back(std::move(turn));
      continue;
    }
    last_failure.reset();

    if (const auto* fin = std::get_if<Final>(&parsed->envelope)) {
      turn.outcome = TurnOutcome::kFinal;
      completion_spans(turn, &*parsed, true);
      rec.final_answer = fin->answer;
      rec.turns.push_back(std::move(turn));
      rec.status = TerminalStatus::kFinalAnswer;
      break;
    }

    const auto& step = std::get<Step>(parsed->envelope);
    turn.outcome = TurnOutcome::kStep;
    turn.action = step.action;
    turn.canonical_args = encode_json(step.arguments);
    completion_spans(turn, &*parsed, false);
    std::optional<Value> result = executor.call(step.action, turn.canonical_args);
    if (!result) {
      rec.turns.push_back(std::move(turn));
      abort("executor has no result for " + step.action + " " + rec.turns.back().canonical_args);
    }
    turn.spans.push_back({SpanOrigin::kOther, SpanSide::kPrompt, std::string(kObservationPrefix)});
    turn.spans.push_back({SpanOrigin::kResult, SpanSide::kPrompt, encode_as(*result, cfg.format) + "\n"});
    rec.turns.push_back(std::move(turn));
  }

  if (rec.status != TerminalStatus::kFinalAnswer) rec.status = TerminalStatus::kIterationCap;
  for (std::size_t i = 0; i + 1 < rec.turns.size(); ++i) {
    rec.cascade_count += rec.turns[i].outcome == TurnOutcome::kParseError;
  }
  return rec;
}

// ------------------------------------------------------------ fixtures

std::vector<TraceRecord> parse_trace_records(std::string_view jsonl) {
  std::vector<TraceRecord> out;
  std::size_t start = 0;
  std::size_t line_no = 0;
  while (start < jsonl.size()) {
    std::size_t end = jsonl.find('\n', start);
    if (end == std::string_view::npos) end = jsonl.size();
    std::string_view line = jsonl.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (line.empty()) continue;
    const Value v = decode_json(line);
    const std::string where = "trace line " + std::to_string(line_no);
    if (!v.is_object()) throw std::invalid_argument(where + ": record must be an object");
    const auto& o = v.as_object();
    const Value* turn = o.find("turn");
    const Value* role = o.find("role");
    const Value* text = o.find("text");
    if (turn == nullptr || !turn->is_number() || !turn->as_number().is_integer() ||
        turn->as_number().literal().starts_with("-") || role == nullptr || !role->is_text() ||
        text == nullptr || !text->is_text() || o.size() != 3) {
      throw std::invalid_argument(where + ": expected {turn, role, text}");
    }
    if (role->as_text() != "user" && role->as_text() != "agent") {
      throw std::invalid_argument(where + ": role must be user or agent");
    }
    out.push_back({std::stoul(turn->as_number().literal()), role->as_text(), text->as_text()});
  }
  return out;
}

Trace trace_from_records(const std::vector<TraceRecord>& records) {
  Trace trace;
  bool have_task = false;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    if (r.turn != i) throw std::invalid_argument("trace turn indices must be 0, 1, 2, ...");
    if (r.role == "user") {
      if (have_task) throw std::invalid_argument("trace has more than one user record");
      trace.task = r.text;
      have_task = true;
      continue;
    }
    ScriptTurn st;
    try {
      ParsedEnvelope p = parse_envelope_detailed(r.text, Format::kJson);
      st.envelope = std::move(p.envelope);
      if (p.think_stripped) st.think = std::move(p.think);
      st.fenced = p.fence_extracted;
    } catch (const ParseFailure&) {
      st.literal = r.text;
    }
    trace.turns.push_back(std::move(st));
  }
  if (!have_task) throw std::invalid_argument("trace has no user record");
  return trace;
}

std::string trace_to_jsonl(const std::vector<TraceRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    Object o;
    o.insert("turn", Value(static_cast<std::int64_t>(r.turn)));
    o.insert("role", Value(r.role));
    o.insert("text", Value(r.text));
    out += encode_json(Value(std::move(o)));
    out += '\n';
  }
  return out;
}

std::vector<ToolSchema> parse_catalog(std::string_view json_text) {
  const Value v = decode_json(json_text);
  if (!v.is_array()) throw std::invalid_argument("catalog must be a JSON array");
  std::vector<ToolSchema> out;
  for (const auto& e : v.as_array()) out.push_back(ToolSchema::from_value(e));
  if (out.empty()) throw std::invalid_argument("catalog is empty");
  validate_catalog(out);
  return out;
}

TableExecutor parse_executor(std::string_view json_text) {
  const Value v = decode_json(json_text);
  if (!v.is_array()) throw std::invalid_argument("executor fixture must be a JSON array");
  TableExecutor ex;
  for (const auto& e : v.as_array()) {
    const Value* tool = e.is_object() ? e.as_object().find("tool") : nullptr;
    const Value* args = e.is_object() ? e.as_object().find("arguments") : nullptr;
    const Value* result = e.is_object() ? e.as_object().find("result") : nullptr;
    if (tool == nullptr || !tool->is_text() || args == nullptr || result == nullptr) {
      throw std::invalid_argument("executor entry must be {tool, arguments, result}");
    }
    // Arguments may be given as a Value or as canonical JSON text.
    const Value arg_value = args->is_text() ? decode_json(args->as_text()) : *args;
    if (!arg_value.is_object()) throw std::invalid_argument("executor arguments must be an object");
    ex.add(tool->as_text(), arg_value, *result);
  }
  return ex;
}

}  // namespace notation
