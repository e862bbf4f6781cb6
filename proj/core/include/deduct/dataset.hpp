#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "deduct/engine.hpp"
#include "deduct/render.hpp"

namespace deduct {

/// One logical question: natural-language context and query, the symbolic
/// program text, and the gold answer. gold_answer may be Unknown only under
/// the open-world assumption.
struct LogicalExample {
  std::string id;
  std::string nl_context;  // problem text, includes the query sentence
  std::string nl_query;    // the query sentence
  std::string sl_program;  // program text, Predicates/Facts/Rules/Query blocks
  TruthValue gold_answer = TruthValue::Unknown;
  Assumption assumption = Assumption::Owa;
  std::string source;

  bool operator==(const LogicalExample& other) const = default;
};

enum class Role { Human, Assistant };

struct Turn {
  Role role = Role::Human;
  std::string text;

  bool operator==(const Turn& other) const = default;
};

/// A 4-turn instruction-tuning record: human, assistant, human, assistant.
struct Conversation {
  std::string id;
  std::vector<Turn> turns;

  std::string source;
  Assumption assumption = Assumption::Owa;
  std::vector<std::string> options;  // e.g. {"A) True", "B) False", "C) Unknown"}
  RenderOptions render;

  /// Serialized JSONL form, one line without the trailing newline:
  /// {"id":..., "conversations":[{"from":"human"|"gpt","value":...} x4],
  ///  "metadata":{...}}
  std::string to_jsonl() const;
};

struct FilterOutcome {
  enum class Reason { Syntax, Inconsistent, AnswerMismatch };
  Reason reason = Reason::Syntax;
  std::string detail;
};

std::string to_string(FilterOutcome::Reason reason);

struct CompileStats {
  int total = 0;
  int compiled = 0;
  int filtered_syntax = 0;
  int filtered_inconsistent = 0;
  int filtered_answer_mismatch = 0;

  bool reconciles() const {
    return total == compiled + filtered_syntax + filtered_inconsistent +
                        filtered_answer_mismatch;
  }
  std::string to_json() const;
};

struct CompileOptions {
  RenderOptions render;
  Limits limits;
  /// Drop examples whose solver answer disagrees with the gold label.
  /// On by default; conversations asserting a wrong option would train the
  /// model on falsehoods.
  bool filter_answer_mismatch = true;
  /// Sink for non-fatal notes (e.g. query sentence absent from context).
  std::ostream* diagnostics = nullptr;
};

/// Removes the query sentence from the context, matching with normalized
/// whitespace. Returns the context unchanged (second = false) when the
/// sentence does not occur.
std::pair<std::string, bool> strip_query_sentence(const std::string& context,
                                                  const std::string& query);

/// Builds the 4-turn conversation for one example, or the reason it was
/// filtered. Turn-1 is the instruction preamble plus the query-stripped
/// context; Turn-2 the rendered reasoning; Turn-3 the query plus answering
/// instructions (3 options under OWA, 2 under CWA); Turn-4 the rendered
/// resolution. Filter outcomes are data, not errors.
std::variant<Conversation, FilterOutcome> compile_example(
    const LogicalExample& example, const CompileOptions& options = {});

/// Compiles a corpus to JSONL, one line per compiled conversation, in input
/// order. `workers` > 1 compiles examples concurrently; output order and
/// bytes do not depend on it.
CompileStats compile_corpus(const std::vector<LogicalExample>& examples,
                            const CompileOptions& options, std::ostream& out,
                            int workers = 1);

}  // namespace deduct
