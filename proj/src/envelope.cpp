#include <stdexcept>

#include "notation/agent.hpp"
#include "notation/json.hpp"
#include "notation/toon.hpp"
#include "notation/tron.hpp"

namespace notation {

Value ToolSchema::to_value() const {
  Object o;
  o.insert("name", Value(name));
  o.insert("description", Value(description));
  o.insert("parameters", parameters);
  return Value(std::move(o));
}

ToolSchema ToolSchema::from_value(const Value& v) {
  if (!v.is_object()) throw std::invalid_argument("tool schema must be an object");
  const auto& o = v.as_object();
  const Value* name = o.find("name");
  const Value* description = o.find("description");
  const Value* parameters = o.find("parameters");
  if (o.size() != 3 || name == nullptr || !name->is_text() || description == nullptr ||
      !description->is_text() || parameters == nullptr || !parameters->is_object()) {
    throw std::invalid_argument("tool schema must be {name, description, parameters}");
  }
  return {name->as_text(), description->as_text(), *parameters};
}

void validate_catalog(std::span<const ToolSchema> catalog) {
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    if (catalog[i].name.empty()) throw std::invalid_argument("tool with empty name");
    for (std::size_t j = 0; j < i; ++j) {
      if (catalog[j].name == catalog[i].name) {
        throw std::invalid_argument("duplicate tool name: " + catalog[i].name);
      }
    }
  }
}

Value envelope_to_value(const Envelope& e) {
  Object o;
  if (const auto* step = std::get_if<Step>(&e)) {
    o.insert("thought", Value(step->thought));
    o.insert("action", Value(step->action));
    o.insert("arguments", step->arguments);
  } else {
    o.insert("final_answer", Value(std::get<Final>(e).answer));
  }
  return Value(std::move(o));
}

bool envelopes_equal(const Envelope& a, const Envelope& b) {
  return equals(envelope_to_value(a), envelope_to_value(b), true);
}

void LoopConfig::validate() const {
  if (max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
  if (!(failure.rate >= 0.0 && failure.rate <= 1.0)) {
    throw std::invalid_argument("failure rate must be in [0, 1]");
  }
}

// ------------------------------------------------------------ system prompt

namespace {

std::string_view explanation(Format f) {
  switch (f) {
    case Format::kJson:
      return "JSON: standard JSON objects, arrays, strings, numbers, true, false and null.";
    case Format::kToon:
      return "TOON: `key: value` per line, two-space indentation nests objects, "
             "`key[N]: a,b,c` lists N primitives, `key[N]{f1,f2}:` is followed by N "
             "comma-separated rows with those fields, `key[N]:` is followed by N `- ` items. "
             "Strings are quoted only when they contain delimiters or look like other values.";
    case Format::kTron:
      return "TRON: `class X: f1,f2` declares a class; `X(v1,v2)` is an object with those "
             "fields in order. Everything else is JSON.";
  }
  return "";
}

std::string join_documents(const std::vector<std::string>& docs, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (i > 0) out += sep;
    out += docs[i];
  }
  return out;
}

std::vector<std::string_view> split_on(std::string_view text, std::string_view sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t at = text.find(sep, start);
    if (at == std::string_view::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, at - start));
    start = at + sep.size();
  }
}

std::string separator_line() { return "\n" + std::string(kSchemaSeparator) + "\n"; }

}  // namespace

SystemPrompt build_system_prompt(std::span<const ToolSchema> catalog, const LoopConfig& cfg) {
  if (catalog.empty()) throw std::invalid_argument("catalog must not be empty");
  validate_catalog(catalog);
  const Format in = cfg.format;
  const Format out = cfg.output_format();

  std::vector<Value> schemas;
  for (const auto& s : catalog) schemas.push_back(s.to_value());

  std::string block;
  if (in == Format::kTron && cfg.tron_batching) {
    block = encode_tron_batch(schemas);
  } else {
    std::vector<std::string> docs;
    for (const auto& s : schemas) docs.push_back(encode_as(s, in));
    block = join_documents(docs, in == Format::kJson ? "\n" : separator_line());
  }

  std::string intro = "You are an assistant that solves tasks by calling tools.\n";
  intro += "Structured data in this conversation is written in ";
  intro += format_display_name(in);
  intro += ".\n";
  intro += explanation(in);
  if (out != in) {
    intro += "\nYour replies are written in ";
    intro += format_display_name(out);
    intro += ".\n";
    intro += explanation(out);
  }
  intro += "\n\nAvailable tools:\n";

  const Envelope step_template =
      Step{"<reasoning about the next action>", "<tool name>",
           Value(Object{{"<parameter>", Value("<value>")}})};
  const Envelope final_template = Final{"<answer to the task>"};
  const Envelope give_up_template = Final{"I cannot complete this task."};

  std::string templates = "\n\nReply with exactly one ";
  templates += format_display_name(out);
  templates += " document per turn. The whole reply is that document; do not put it inside a "
               "labeled field.\nTo call a tool:\n";
  templates += render_envelope(step_template, out);
  templates += "\n\nTo finish:\n";
  templates += render_envelope(final_template, out);
  templates += "\n\nTo give up:\n";
  templates += render_envelope(give_up_template, out);
  templates += "\n";

  SystemPrompt p;
  p.spans.push_back({SpanOrigin::kOther, SpanSide::kPrompt, std::move(intro)});
  p.spans.push_back({SpanOrigin::kSchema, SpanSide::kPrompt, block});
  p.spans.push_back({SpanOrigin::kOther, SpanSide::kPrompt, std::move(templates)});
  for (const auto& s : p.spans) p.text += s.text;
  p.schema_block = std::move(block);
  return p;
}

std::vector<Value> decode_schema_block(std::string_view block, Format format, bool tron_batched) {
  std::vector<Value> out;
  switch (format) {
    case Format::kJson:
      for (auto line : split_on(block, "\n")) out.push_back(decode_json(line));
      return out;
    case Format::kToon:
      for (auto doc : split_on(block, separator_line())) out.push_back(decode_toon(doc));
      return out;
    case Format::kTron:
      if (tron_batched) return decode_tron_batch(block);
      for (auto doc : split_on(block, separator_line())) out.push_back(decode_tron(doc));
      return out;
  }
  return out;
}

// ------------------------------------------------------------ envelopes

namespace {

constexpr std::string_view kThinkOpen = "<think>";
constexpr std::string_view kThinkClose = "</think>";
constexpr std::string_view kFence = "```";

bool is_ws(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

Envelope to_envelope(const Value& v) {
  if (!v.is_object()) throw ParseFailure(ParseStage::kShape, "document is not an object");
  const auto& o = v.as_object();
  if (o.size() == 1) {
    const Value* answer = o.find("final_answer");
    if (answer == nullptr) throw ParseFailure(ParseStage::kShape, "unexpected key set");
    if (!answer->is_text()) throw ParseFailure(ParseStage::kShape, "final_answer is not text");
    return Final{answer->as_text()};
  }
  if (o.size() != 3) throw ParseFailure(ParseStage::kShape, "unexpected key set");
  const Value* thought = o.find("thought");
  const Value* action = o.find("action");
  const Value* arguments = o.find("arguments");
  if (thought == nullptr || action == nullptr || arguments == nullptr) {
    throw ParseFailure(ParseStage::kShape, "unexpected key set");
  }
  if (!thought->is_text() || !action->is_text() || action->as_text().empty()) {
    throw ParseFailure(ParseStage::kShape, "thought and action must be text");
  }
  if (!arguments->is_object()) throw ParseFailure(ParseStage::kShape, "arguments is not an object");
  return Step{thought->as_text(), action->as_text(), *arguments};
}

}  // namespace

ParsedEnvelope parse_envelope_detailed(std::string_view raw, Format expected) {
  ParsedEnvelope out;
  std::string_view rest = raw;

  if (rest.starts_with(kThinkOpen)) {
    const std::size_t close = rest.find(kThinkClose);
    if (close == std::string_view::npos) {
      throw ParseFailure(ParseStage::kThink, "think block is not closed");
    }
    out.think_stripped = true;
    out.think = std::string(rest.substr(kThinkOpen.size(), close - kThinkOpen.size()));
    rest = rest.substr(close + kThinkClose.size());
  }

  const std::size_t fence = rest.find(kFence);
  if (fence != std::string_view::npos) {
    const std::size_t info_end = rest.find('\n', fence);
    if (info_end == std::string_view::npos) {
      throw ParseFailure(ParseStage::kFence, "opening fence has no body");
    }
    out.fence_info = std::string(rest.substr(fence + kFence.size(), info_end - fence - kFence.size()));
    const std::size_t body = info_end + 1;
    std::size_t close = std::string_view::npos;
    if (rest.substr(body).starts_with(kFence)) {
      close = body;
    } else {
      const std::size_t nl = rest.find(std::string("\n") + std::string(kFence), body);
      if (nl != std::string_view::npos) close = nl + 1;
    }
    if (close == std::string_view::npos) throw ParseFailure(ParseStage::kFence, "fence is not closed");
    out.fence_extracted = true;
    rest = rest.substr(body, close == body ? 0 : close - 1 - body);
  }

  while (!rest.empty() && is_ws(rest.front())) rest.remove_prefix(1);
  while (!rest.empty() && is_ws(rest.back())) rest.remove_suffix(1);
  out.document = std::string(rest);
  out.doc_begin = static_cast<std::size_t>(rest.data() - raw.data());
  out.doc_end = out.doc_begin + rest.size();

  Value decoded;
  try {
    decoded = decode_as(rest, expected);
  } catch (const DecodeError& e) {
    throw ParseFailure(ParseStage::kDecode, e.what());
  }
  out.envelope = to_envelope(decoded);
  return out;
}

Envelope parse_envelope(std::string_view raw, Format expected) {
  return parse_envelope_detailed(raw, expected).envelope;
}

std::string render_envelope(const Envelope& e, Format f) { return encode_as(envelope_to_value(e), f); }

std::string render_agent_text(std::string_view document, Format f,
                              const std::optional<std::string>& think, bool fenced) {
  std::string out;
  if (think) {
    out += kThinkOpen;
    out += *think;
    out += kThinkClose;
    out += '\n';
  }
  if (fenced) {
    out += kFence;
    out += format_name(f);
    out += '\n';
    out += document;
    out += '\n';
    out += kFence;
  } else {
    out += document;
  }
  return out;
}

std::string_view mutator_name(Mutator m) {
  switch (m) {
    case Mutator::kTruncateLastLine:
      return "truncate-last-line";
    case Mutator::kSwapDelimiter:
      return "swap-delimiter";
    case Mutator::kRenameActionKey:
      return "rename-action-key";
  }
  return "";
}

ParseStage designated_stage(Mutator m) {
  return m == Mutator::kRenameActionKey ? ParseStage::kShape : ParseStage::kDecode;
}

std::string apply_mutator(std::string_view document, Mutator m, Format f) {
  std::string doc(document);
  switch (m) {
    case Mutator::kTruncateLastLine: {
      const std::size_t nl = doc.rfind('\n');
      const std::size_t start = nl == std::string::npos ? 0 : nl + 1;
      doc.resize(start + (doc.size() - start) / 2);
      return doc;
    }
    case Mutator::kSwapDelimiter: {
      bool in_string = false;
      for (std::size_t i = 0; i < doc.size(); ++i) {
        const char c = doc[i];
        if (in_string) {
          if (c == '\\') {
            ++i;
          } else if (c == '"') {
            in_string = false;
          }
        } else if (c == '"') {
          in_string = true;
        } else if (c == ':') {
          doc[i] = '=';
          return doc;
        }
      }
      return doc;
    }
    case Mutator::kRenameActionKey: {
      try {
        Value v = decode_as(doc, f);
        if (v.is_object() && v.as_object().rename("action", "tool")) return encode_as(v, f);
      } catch (const DecodeError&) {
      }
      const std::size_t at = doc.find("action");
      if (at != std::string::npos) doc.replace(at, 6, "tool");
      return doc;
    }
  }
  return doc;
}

}  // namespace notation
