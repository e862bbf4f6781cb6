#include "deduct/trace.hpp"

#include <stdexcept>

namespace deduct {

TraceEvent TraceEvent::use_rule(int rule_id, bool first_use) {
  TraceEvent e;
  e.kind = Kind::UseRule;
  e.rule_id = rule_id;
  e.first_use = first_use;
  return e;
}

TraceEvent TraceEvent::bind(std::string var, Term value) {
  TraceEvent e;
  e.kind = Kind::Bind;
  e.var = std::move(var);
  e.value = std::move(value);
  return e;
}

TraceEvent TraceEvent::unbind(std::string var) {
  TraceEvent e;
  e.kind = Kind::Unbind;
  e.var = std::move(var);
  return e;
}

TraceEvent TraceEvent::fail_backtrack(int rule_id, int failed_premise) {
  TraceEvent e;
  e.kind = Kind::FailBacktrack;
  e.rule_id = rule_id;
  e.failed_premise = failed_premise;
  return e;
}

TraceEvent TraceEvent::new_fact(Fact fact) {
  TraceEvent e;
  e.kind = Kind::NewFact;
  e.fact = std::move(fact);
  return e;
}

TraceEvent TraceEvent::already_known(Fact fact) {
  TraceEvent e;
  e.kind = Kind::AlreadyKnown;
  e.fact = std::move(fact);
  return e;
}

TraceEvent TraceEvent::finish_rule(int rule_id) {
  TraceEvent e;
  e.kind = Kind::FinishRule;
  e.rule_id = rule_id;
  return e;
}

TraceEvent TraceEvent::summary_of(std::vector<Fact> facts) {
  TraceEvent e;
  e.kind = Kind::Summary;
  e.summary = std::move(facts);
  return e;
}

std::string TraceEvent::to_string() const {
  switch (kind) {
    case Kind::UseRule:
      return (first_use ? "Use(Rule" : "Reuse(Rule") + std::to_string(rule_id) + ")";
    case Kind::Bind:
      return "Bind($" + var + "=" + value.to_string() + ")";
    case Kind::Unbind:
      return "Unbind($" + var + ")";
    case Kind::FailBacktrack:
      return "FailBacktrack(Rule" + std::to_string(rule_id) + ", premise " +
             std::to_string(failed_premise) + ")";
    case Kind::NewFact:
      return "NewFact(" + fact.sl_text() + ")";
    case Kind::AlreadyKnown:
      return "AlreadyKnown(" + fact.sl_text() + ")";
    case Kind::FinishRule:
      return "Finish(Rule" + std::to_string(rule_id) + ")";
    case Kind::Summary:
      return "Summary(" + std::to_string(summary.size()) + " facts)";
  }
  return {};
}

void Trace::push(TraceEvent event) {
  event.seq = static_cast<int>(events.size());
  events.push_back(std::move(event));
}

const std::vector<Fact>& Trace::summary() const {
  if (events.empty() || events.back().kind != TraceEvent::Kind::Summary)
    throw std::logic_error("trace has no final Summary event");
  return events.back().summary;
}

}  // namespace deduct
