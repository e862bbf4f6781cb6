#include "deduct/dataset.hpp"

#include <cctype>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "deduct/parser.hpp"
#include "deduct/resources.hpp"
#include "parallel.hpp"

namespace deduct {

namespace {

std::string replace_placeholder(std::string text, const std::string& key,
                                const std::string& value) {
  size_t pos = 0;
  while ((pos = text.find(key, pos)) != std::string::npos) {
    text.replace(pos, key.size(), value);
    pos += value.size();
  }
  return text;
}

std::vector<std::string> options_for(Assumption assumption) {
  if (assumption == Assumption::Owa)
    return {"A) True", "B) False", "C) Unknown"};
  return {"A) True", "B) False"};
}

struct TokenSpan {
  size_t begin;
  size_t end;  // one past the last character
  std::string text;
};

std::vector<TokenSpan> tokenize(const std::string& s) {
  std::vector<TokenSpan> tokens;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i >= s.size()) break;
    size_t begin = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    tokens.push_back({begin, i, s.substr(begin, i - begin)});
  }
  return tokens;
}

}  // namespace

std::string to_string(FilterOutcome::Reason reason) {
  switch (reason) {
    case FilterOutcome::Reason::Syntax: return "syntax";
    case FilterOutcome::Reason::Inconsistent: return "inconsistent";
    case FilterOutcome::Reason::AnswerMismatch: return "answer_mismatch";
  }
  return {};
}

std::string Conversation::to_jsonl() const {
  nlohmann::ordered_json j;
  j["id"] = id;
  nlohmann::ordered_json turns_json = nlohmann::ordered_json::array();
  for (const Turn& turn : turns) {
    nlohmann::ordered_json t;
    t["from"] = turn.role == Role::Human ? "human" : "gpt";
    t["value"] = turn.text;
    turns_json.push_back(std::move(t));
  }
  j["conversations"] = std::move(turns_json);
  nlohmann::ordered_json meta;
  meta["source"] = source;
  meta["assumption"] = to_string(assumption);
  meta["options"] = options;
  nlohmann::ordered_json render_json;
  render_json["include_unbind"] = render.include_unbind;
  render_json["include_fail_backtrack"] = render.include_fail_backtrack;
  render_json["representation"] = render.representation == Representation::Sl ? "sl" : "nl";
  meta["render"] = std::move(render_json);
  j["metadata"] = std::move(meta);
  return j.dump();
}

std::string CompileStats::to_json() const {
  nlohmann::ordered_json j;
  j["total"] = total;
  j["compiled"] = compiled;
  j["filtered_syntax"] = filtered_syntax;
  j["filtered_inconsistent"] = filtered_inconsistent;
  j["filtered_answer_mismatch"] = filtered_answer_mismatch;
  return j.dump();
}

std::pair<std::string, bool> strip_query_sentence(const std::string& context,
                                                  const std::string& query) {
  std::vector<TokenSpan> context_tokens = tokenize(context);
  std::vector<TokenSpan> query_tokens = tokenize(query);
  if (query_tokens.empty() || query_tokens.size() > context_tokens.size())
    return {context, false};

  for (size_t i = 0; i + query_tokens.size() <= context_tokens.size(); ++i) {
    bool match = true;
    for (size_t k = 0; k < query_tokens.size(); ++k) {
      if (context_tokens[i + k].text != query_tokens[k].text) {
        match = false;
        break;
      }
    }
    if (!match) continue;

    size_t begin = context_tokens[i].begin;
    size_t end = context_tokens[i + query_tokens.size() - 1].end;
    // Swallow following whitespace; at end of text, the preceding instead.
    while (end < context.size() && std::isspace(static_cast<unsigned char>(context[end])))
      ++end;
    if (end == context.size()) {
      while (begin > 0 && std::isspace(static_cast<unsigned char>(context[begin - 1])))
        --begin;
    }
    return {context.substr(0, begin) + context.substr(end), true};
  }
  return {context, false};
}

std::variant<Conversation, FilterOutcome> compile_example(
    const LogicalExample& example, const CompileOptions& options) {
  try {
    ParseReport report = validate(example.sl_program);
    if (!report.executable) {
      const Diagnostic& first = report.errors.front();
      return FilterOutcome{FilterOutcome::Reason::Syntax,
                           "line " + std::to_string(first.line) + ": " + first.message};
    }
    KnowledgeBase kb = parse_program(example.sl_program);
    kb.assumption = example.assumption;
    if (!kb.query.has_value())
      return FilterOutcome{FilterOutcome::Reason::Syntax, "program has no Query block"};

    auto [closure, trace] = saturate(kb, options.limits);

    auto conflicts = check_consistency(closure);
    if (!conflicts.empty())
      return FilterOutcome{FilterOutcome::Reason::Inconsistent,
                           conflicts.front().first.sl_text() + " conflicts with " +
                               conflicts.front().second.sl_text()};

    TruthValue answer = answer_query(closure, *kb.query, kb.assumption);
    if (options.filter_answer_mismatch && answer != example.gold_answer)
      return FilterOutcome{FilterOutcome::Reason::AnswerMismatch,
                           "solver answered " + to_string(answer) + ", gold is " +
                               to_string(example.gold_answer)};

    auto [context, found] = strip_query_sentence(example.nl_context, example.nl_query);
    if (!found && options.diagnostics)
      *options.diagnostics << "note: example " << example.id
                           << ": query sentence not found in context\n";

    Conversation conv;
    conv.id = example.id;
    conv.source = example.source;
    conv.assumption = example.assumption;
    conv.options = options_for(example.assumption);
    conv.render = options.render;

    std::string turn1 = replace_placeholder(
        resources::chomp(resources::turn1_preamble_raw()), "{context}", context);
    std::string turn2 = render_turn2(kb, trace, closure, options.render);
    const char* turn3_raw = example.assumption == Assumption::Owa
                                ? resources::turn3_owa_raw()
                                : resources::turn3_cwa_raw();
    std::string turn3 =
        replace_placeholder(resources::chomp(turn3_raw), "{query}", example.nl_query);
    std::string turn4 = render_turn4(*kb.query, closure, kb.assumption, answer);

    conv.turns = {{Role::Human, std::move(turn1)},
                  {Role::Assistant, std::move(turn2)},
                  {Role::Human, std::move(turn3)},
                  {Role::Assistant, std::move(turn4)}};
    return conv;
  } catch (const std::exception& e) {
    // Limit overruns and render failures also make an example uncompilable.
    return FilterOutcome{FilterOutcome::Reason::Syntax, e.what()};
  }
}

CompileStats compile_corpus(const std::vector<LogicalExample>& examples,
                            const CompileOptions& options, std::ostream& out,
                            int workers) {
  struct Slot {
    std::variant<Conversation, FilterOutcome> outcome;
    std::string notes;
  };
  std::vector<Slot> slots(examples.size());

  internal::run_indexed(examples.size(), workers, [&](size_t i) {
    std::ostringstream notes;
    CompileOptions local = options;
    local.diagnostics = &notes;
    slots[i].outcome = compile_example(examples[i], local);
    slots[i].notes = notes.str();
  });

  CompileStats stats;
  for (size_t i = 0; i < slots.size(); ++i) {
    Slot& slot = slots[i];
    ++stats.total;
    if (options.diagnostics && !slot.notes.empty()) *options.diagnostics << slot.notes;
    if (auto* conv = std::get_if<Conversation>(&slot.outcome)) {
      ++stats.compiled;
      out << conv->to_jsonl() << '\n';
    } else {
      const FilterOutcome& f = std::get<FilterOutcome>(slot.outcome);
      switch (f.reason) {
        case FilterOutcome::Reason::Syntax: ++stats.filtered_syntax; break;
        case FilterOutcome::Reason::Inconsistent: ++stats.filtered_inconsistent; break;
        case FilterOutcome::Reason::AnswerMismatch: ++stats.filtered_answer_mismatch; break;
      }
      if (options.diagnostics)
        *options.diagnostics << "filtered (" << to_string(f.reason) << "): "
                             << examples[i].id << ": " << f.detail << '\n';
    }
  }
  return stats;
}

}  // namespace deduct
