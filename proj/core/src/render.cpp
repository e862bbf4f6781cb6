#include "deduct/render.hpp"

#include <cctype>
#include <map>

#include <json.hpp>

#include "deduct/resources.hpp"

namespace deduct {

namespace {

std::string replace_all(std::string text, const std::string& key,
                        const std::string& value) {
  size_t pos = 0;
  while ((pos = text.find(key, pos)) != std::string::npos) {
    text.replace(pos, key.size(), value);
    pos += value.size();
  }
  return text;
}

using Subs = std::map<std::string, std::string>;

std::string fill(const std::string& tmpl, const Subs& subs) {
  std::string out = tmpl;
  for (const auto& [key, value] : subs) out = replace_all(out, "{" + key + "}", value);
  return out;
}

std::string lower(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return out;
}

std::string capitalize(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

/// Term text for use inside a sentence: entities unquoted, rest canonical.
std::string nl_term(const Term& t) {
  return t.kind() == Term::Kind::Entity ? t.text() : t.to_string();
}

std::string fact_text(const Fact& fact, Representation repr) {
  return repr == Representation::Sl ? fact.sl_text() : nl_sentence(fact);
}

}  // namespace

const TemplateTable& TemplateTable::builtin() {
  static const TemplateTable table =
      TemplateTable::from_json(resources::trace_templates_json());
  return table;
}

TemplateTable TemplateTable::from_json(const std::string& json_text) {
  nlohmann::json j = nlohmann::json::parse(json_text);
  auto require = [&](const char* key) -> std::string {
    if (!j.contains(key))
      throw std::runtime_error(std::string("template table is missing '") + key + "'");
    return j.at(key).get<std::string>();
  };
  TemplateTable t;
  t.version = j.at("version").get<int>();
  t.use_rule = require("use_rule");
  t.reuse_rule = require("reuse_rule");
  t.bind = require("bind");
  t.unbind = require("unbind");
  t.fail_backtrack = require("fail_backtrack");
  t.new_fact = require("new_fact");
  t.known_fact = require("known_fact");
  t.finish_rule = require("finish_rule");
  t.header_predicates = require("header_predicates");
  t.header_facts = require("header_facts");
  t.header_rules = require("header_rules");
  t.header_apply = require("header_apply");
  t.header_implied = require("header_implied");
  t.implied_none = require("implied_none");
  t.turn4_query = require("turn4_query");
  t.turn4_known_true = require("turn4_known_true");
  t.turn4_implied_true = require("turn4_implied_true");
  t.turn4_known_false = require("turn4_known_false");
  t.turn4_implied_false = require("turn4_implied_false");
  t.turn4_unknown = require("turn4_unknown");
  t.turn4_cwa_absent_true = require("turn4_cwa_absent_true");
  t.turn4_cwa_absent_false = require("turn4_cwa_absent_false");
  t.turn4_option = require("turn4_option");
  return t;
}

std::string nl_sentence(const Fact& fact) {
  if (!fact.gloss.empty()) return fact.gloss;
  if (fact.args.size() != 1)
    throw RenderSourceError("no gloss and no unary sentence template for " +
                            fact.sl_text());
  std::string subject = capitalize(nl_term(fact.args[0]));
  return subject + (fact.polarity ? " is " : " is not ") + lower(fact.predicate) + ".";
}

std::string nl_sentence(const Rule& rule) {
  if (!rule.gloss.empty()) return rule.gloss;
  // Synthesizable only for single-variable rules over unary predicates.
  const Term* var = nullptr;
  auto single_var = [&](const Fact& f) {
    if (f.args.size() != 1 || !f.args[0].is_variable()) return false;
    if (var == nullptr) var = &f.args[0];
    return f.args[0] == *var;
  };
  for (const Fact& f : rule.body)
    if (!single_var(f))
      throw RenderSourceError("no gloss and no sentence template for " +
                              rule.label() + ": " + rule.sl_text());
  for (const Fact& f : rule.heads)
    if (!single_var(f))
      throw RenderSourceError("no gloss and no sentence template for " +
                              rule.label() + ": " + rule.sl_text());
  auto phrase = [&](const std::vector<Fact>& facts) {
    std::string out;
    for (size_t i = 0; i < facts.size(); ++i) {
      if (i) out += " and ";
      out += facts[i].polarity ? "" : "not ";
      out += lower(facts[i].predicate);
    }
    return out;
  };
  return "If someone is " + phrase(rule.body) + ", then they are " +
         phrase(rule.heads) + ".";
}

std::string render_turn2(const KnowledgeBase& kb, const Trace& trace,
                         const Closure& closure, const RenderOptions& options) {
  const TemplateTable& t = TemplateTable::builtin();
  const Representation repr = options.representation;

  std::map<int, const Rule*> rules_by_id;
  for (const Rule& r : kb.rules) rules_by_id[r.id] = &r;
  auto rule_text = [&](int id) {
    const Rule* rule = rules_by_id.at(id);
    return repr == Representation::Sl ? rule->sl_text() : nl_sentence(*rule);
  };

  std::vector<std::string> lines;

  lines.push_back(t.header_predicates);
  for (const PredicateDecl& d : kb.predicates) {
    std::string gloss = d.gloss;
    if (gloss.empty() && d.arity() == 1)
      gloss = "Is " + d.arg_names[0] + " " + lower(d.name) + "?";
    lines.push_back(gloss.empty() ? d.signature() : d.signature() + " ::: " + gloss);
  }

  lines.push_back("");
  lines.push_back(t.header_facts);
  for (const Fact& f : kb.facts)
    lines.push_back(repr == Representation::Sl ? f.line_text() : nl_sentence(f));

  lines.push_back("");
  lines.push_back(t.header_rules);
  for (const Rule& r : kb.rules)
    lines.push_back(r.label() + ": " +
                    (repr == Representation::Sl ? r.line_text() : nl_sentence(r)));

  lines.push_back("");
  lines.push_back(t.header_apply);

  for (const TraceEvent& e : trace.events) {
    switch (e.kind) {
      case TraceEvent::Kind::UseRule:
        lines.push_back("");
        lines.push_back(fill(e.first_use ? t.use_rule : t.reuse_rule,
                             {{"id", std::to_string(e.rule_id)},
                              {"rule", rule_text(e.rule_id)}}));
        break;
      case TraceEvent::Kind::Bind:
        lines.push_back(fill(t.bind, {{"var", "$" + e.var},
                                      {"value", e.value.to_string()}}));
        break;
      case TraceEvent::Kind::Unbind:
        if (options.include_unbind)
          lines.push_back(fill(t.unbind, {{"var", "$" + e.var}}));
        break;
      case TraceEvent::Kind::FailBacktrack:
        if (options.include_fail_backtrack)
          lines.push_back(t.fail_backtrack);
        break;
      case TraceEvent::Kind::NewFact:
        lines.push_back(fill(t.new_fact, {{"fact", fact_text(e.fact, repr)}}));
        break;
      case TraceEvent::Kind::AlreadyKnown:
        lines.push_back(fill(t.known_fact, {{"fact", fact_text(e.fact, repr)}}));
        break;
      case TraceEvent::Kind::FinishRule:
        lines.push_back(fill(t.finish_rule, {{"id", std::to_string(e.rule_id)}}));
        break;
      case TraceEvent::Kind::Summary:
        break;  // rendered below from the closure
    }
  }

  lines.push_back("");
  lines.push_back(t.header_implied);
  if (closure.implied().empty()) {
    lines.push_back(t.implied_none);
  } else {
    for (const Fact& f : closure.implied())
      lines.push_back(fact_text(f, repr));
  }

  std::string out;
  for (const std::string& line : lines) {
    out += line;
    out += '\n';
  }
  return out;
}

std::string render_turn4(const Query& query, const Closure& closure,
                         Assumption assumption, TruthValue answer) {
  const TemplateTable& t = TemplateTable::builtin();
  const Fact& fact = query.fact;

  std::vector<std::string> lines;
  lines.push_back(fill(t.turn4_query, {{"query", fact.line_text()}}));

  auto presence_template = [&](const Fact& f, const std::string& known_tmpl,
                               const std::string& implied_tmpl) {
    return fill(closure.contains_initial(f) ? known_tmpl : implied_tmpl,
                {{"fact", f.sl_text()}});
  };

  if (assumption == Assumption::Owa) {
    switch (answer) {
      case TruthValue::True:
        lines.push_back(presence_template(fact, t.turn4_known_true, t.turn4_implied_true));
        break;
      case TruthValue::False:
        lines.push_back(
            presence_template(negate(fact), t.turn4_known_false, t.turn4_implied_false));
        break;
      case TruthValue::Unknown:
        lines.push_back(fill(t.turn4_unknown, {{"fact", fact.sl_text()},
                                               {"negation", negate(fact).sl_text()}}));
        break;
    }
  } else {
    Fact positive = fact;
    positive.polarity = true;
    if (closure.contains(positive)) {
      if (fact.polarity)
        lines.push_back(presence_template(positive, t.turn4_known_true, t.turn4_implied_true));
      else
        lines.push_back(
            presence_template(positive, t.turn4_known_false, t.turn4_implied_false));
    } else {
      lines.push_back(fill(fact.polarity ? t.turn4_cwa_absent_false : t.turn4_cwa_absent_true,
                           {{"fact", positive.sl_text()}}));
    }
  }

  lines.push_back(fill(t.turn4_option, {{"letter", std::string(1, option_letter(answer))}}));

  std::string out;
  for (const std::string& line : lines) {
    out += line;
    out += '\n';
  }
  return out;
}

char option_letter(TruthValue value) {
  switch (value) {
    case TruthValue::True: return 'A';
    case TruthValue::False: return 'B';
    case TruthValue::Unknown: return 'C';
  }
  return '?';
}

}  // namespace deduct
