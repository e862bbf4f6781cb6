#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "deduct/dataset.hpp"

namespace deduct {

enum class SourceFormat { ProofWriter, PrOntoQa, Native };

std::optional<SourceFormat> source_format_from_string(const std::string& s);

/// Pre-parsed symbolic programs keyed by example id, replayed from disk.
/// Stored as JSONL lines of {"id": ..., "sl_text": ...}.
class SlLookup {
 public:
  void insert(const std::string& id, std::string sl_text);
  const std::string* find(const std::string& id) const;
  size_t size() const { return entries_.size(); }

  static SlLookup load_jsonl(std::istream& in);

 private:
  std::map<std::string, std::string> entries_;
};

class IngestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Record could not be used but the corpus run may continue (e.g. the id has
/// no SL entry); callers count these.
class SkipRecord : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Runs an external formulator command for records whose id is not covered
/// by a lookup: the record's NL text is piped to the command's stdin and its
/// stdout is taken as the SL program. Nonzero exit means parse failure.
class CommandSlProvider {
 public:
  explicit CommandSlProvider(std::string command) : command_(std::move(command)) {}

  /// Returns the SL text, or nullopt when the command reports failure.
  std::optional<std::string> formulate(const std::string& nl_text) const;

 private:
  std::string command_;
};

/// Maps one source-corpus JSON record to a LogicalExample.
///
/// Documented field mappings (one JSON object per line):
///   proofwriter: {"id", "theory" (alias "context"), "question", "answer"},
///     answers True/False/Unknown, assumption OWA.
///   prontoqa: {"id", "context" (alias "question"), "query" (alias
///     "question"), "answer"}, answers True/False, assumption CWA; a leading
///     "True or false:" on the query sentence is stripped.
///   native: a serialized LogicalExample (see example_from_json).
///
/// The symbolic program is fetched from `lookup` by id. When the id has no
/// entry, `provider` (if given) formulates it from the record's NL text
/// (context, then query, newline-separated). A record left without a
/// program throws SkipRecord; an unusable record throws IngestError.
LogicalExample ingest(const std::string& record_json, SourceFormat format,
                      const SlLookup& lookup,
                      const CommandSlProvider* provider = nullptr);

/// The four rule-sentence genres.
enum class RuleGenre : int {
  EveryEach = 0,   // "Every/Each A is (not) B."
  Are = 1,         // "As are (not) B."
  IfSomeone = 2,   // "If someone is A, then they are (not) B."
  IfSomething = 3  // "If something is A, then it is (not) B."
};

/// Genre sentence for a rule with body predicate `subject`, head predicate
/// `attribute` and head polarity `positive`. `every` picks Every vs Each
/// within the EveryEach genre.
std::string genre_sentence(RuleGenre genre, const std::string& subject,
                           const std::string& attribute, bool positive,
                           bool every = true);

/// Plural of a lowercase noun: small irregular table, then +s/+es rules.
std::string pluralize(const std::string& noun);

struct ReformatResult {
  LogicalExample example;
  std::vector<std::string> warnings;  // rules left unchanged, and why
};

/// Rewrites each rule's NL gloss into one of the four genres, chosen
/// uniformly by a generator seeded with `seed`. The symbolic side is
/// unchanged (the program text is re-rendered canonically; its parsed
/// logical content is identical). Rules not expressible in the genres are
/// left unchanged with a warning.
ReformatResult reformat_rules(const LogicalExample& example, uint64_t seed);

/// JSON (de)serialization of LogicalExample for the native JSONL format:
/// {"id", "nl_context", "nl_query", "sl_program", "gold_answer",
///  "assumption", "source"}.
std::string example_to_json(const LogicalExample& example);
LogicalExample example_from_json(const std::string& json_text);

std::vector<LogicalExample> load_examples_jsonl(std::istream& in);
void save_examples_jsonl(const std::vector<LogicalExample>& examples,
                         std::ostream& out);

}  // namespace deduct
