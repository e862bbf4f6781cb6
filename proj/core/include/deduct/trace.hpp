#pragma once

#include <string>
#include <vector>

#include "deduct/logic.hpp"

namespace deduct {

/// One solver action. The engine narrates every rule application with these
/// events so the reasoning process can be rendered verbatim.
struct TraceEvent {
  enum class Kind {
    UseRule,        // rule_id, first_use
    Bind,           // var, value
    Unbind,         // var
    FailBacktrack,  // rule_id, failed_premise (1-based)
    NewFact,        // fact
    AlreadyKnown,   // fact
    FinishRule,     // rule_id
    Summary,        // summary (all newly implied facts, derivation order)
  };

  Kind kind;
  int seq = 0;

  int rule_id = 0;
  bool first_use = false;
  std::string var;
  Term value;
  int failed_premise = 0;
  Fact fact;
  std::vector<Fact> summary;

  static TraceEvent use_rule(int rule_id, bool first_use);
  static TraceEvent bind(std::string var, Term value);
  static TraceEvent unbind(std::string var);
  static TraceEvent fail_backtrack(int rule_id, int failed_premise);
  static TraceEvent new_fact(Fact fact);
  static TraceEvent already_known(Fact fact);
  static TraceEvent finish_rule(int rule_id);
  static TraceEvent summary_of(std::vector<Fact> facts);

  /// Compact debug form, e.g. `Bind($x=Anne)`; not the rendered line format.
  std::string to_string() const;
};

struct Trace {
  std::vector<TraceEvent> events;

  void push(TraceEvent event);
  bool empty() const { return events.empty(); }
  size_t size() const { return events.size(); }
  const TraceEvent& operator[](size_t i) const { return events[i]; }

  /// Facts of the final Summary event.
  const std::vector<Fact>& summary() const;
};

}  // namespace deduct
