#include "deduct/parser.hpp"

#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace deduct {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool is_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

bool is_decimal(const std::string& s) {
  size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  size_t digits = 0, dots = 0;
  for (; i < s.size(); ++i) {
    if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      ++digits;
    } else if (s[i] == '.') {
      ++dots;
    } else {
      return false;
    }
  }
  return digits > 0 && dots <= 1;
}

/// Splits on `sep` at quote-respecting top level.
std::vector<std::string> split_outside_quotes(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  char quote = 0;
  for (char c : s) {
    if (quote) {
      if (c == quote) quote = 0;
      cur += c;
    } else if (c == '\'' || c == '"') {
      quote = c;
      cur += c;
    } else if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

struct LineError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Term parse_term(const std::string& raw) {
  std::string s = trim(raw);
  if (s.empty()) throw LineError("empty argument");
  if (s[0] == '$') {
    std::string name = s.substr(1);
    if (!is_identifier(name))
      throw LineError("malformed variable '" + s + "'");
    return Term::variable(name);
  }
  if ((s.front() == '\'' && s.back() == '\'' && s.size() >= 2) ||
      (s.front() == '"' && s.back() == '"' && s.size() >= 2)) {
    std::string name = s.substr(1, s.size() - 2);
    if (name.empty()) throw LineError("empty quoted entity");
    return Term::entity(name);
  }
  if (s == "True") return Term::boolean(true);
  if (s == "False") return Term::boolean(false);
  if (is_decimal(s)) return Term::number(s);
  if (is_identifier(s)) return Term::entity(s);
  throw LineError("malformed argument '" + s + "'");
}

/// Parses `Name(a1, ..., ak, True|False)` into a fact pattern.
Fact parse_fact_pattern(const std::string& raw) {
  std::string s = trim(raw);
  size_t open = s.find('(');
  if (open == std::string::npos || s.back() != ')')
    throw LineError("expected 'Predicate(args..., True|False)', got '" + s + "'");
  std::string name = trim(s.substr(0, open));
  if (!is_identifier(name))
    throw LineError("malformed predicate name '" + name + "'");
  std::string inner = s.substr(open + 1, s.size() - open - 2);
  std::vector<std::string> items = split_outside_quotes(inner, ',');
  if (items.size() < 2)
    throw LineError("fact '" + name +
                    "' needs at least one argument and a final True|False polarity");
  std::string last = trim(items.back());
  if (last != "True" && last != "False")
    throw LineError("final slot of '" + name + "' must be True or False, got '" +
                    last + "'");
  Fact fact;
  fact.predicate = name;
  fact.polarity = last == "True";
  for (size_t i = 0; i + 1 < items.size(); ++i)
    fact.args.push_back(parse_term(items[i]));
  return fact;
}

PredicateDecl parse_predicate_decl(const std::string& raw) {
  std::string s = trim(raw);
  size_t open = s.find('(');
  if (open == std::string::npos || s.back() != ')')
    throw LineError("expected 'Predicate($x, ..., bool)', got '" + s + "'");
  std::string name = trim(s.substr(0, open));
  if (!is_identifier(name))
    throw LineError("malformed predicate name '" + name + "'");
  std::string inner = s.substr(open + 1, s.size() - open - 2);
  std::vector<std::string> items = split_outside_quotes(inner, ',');
  if (items.size() < 2 || trim(items.back()) != "bool")
    throw LineError("declaration of '" + name +
                    "' must end with a final 'bool' slot");
  PredicateDecl decl;
  decl.name = name;
  for (size_t i = 0; i + 1 < items.size(); ++i) {
    std::string item = trim(items[i]);
    if (item.empty() || item[0] != '$' || !is_identifier(item.substr(1)))
      throw LineError("declaration argument '" + item + "' of '" + name +
                      "' must be a $variable");
    decl.arg_names.push_back(item.substr(1));
  }
  return decl;
}

Rule parse_rule_line(const std::string& raw) {
  std::string s = trim(raw);
  size_t pos = s.find(">>>");
  if (pos == std::string::npos)
    throw LineError("rule must contain '>>>'");
  if (s.find(">>>", pos + 3) != std::string::npos)
    throw LineError("rule must contain exactly one '>>>'");
  std::string body_text = s.substr(0, pos);
  std::string head_text = s.substr(pos + 3);
  Rule rule;
  for (const std::string& part : split_outside_quotes(body_text, '&')) {
    if (trim(part).empty()) throw LineError("empty rule premise");
    rule.body.push_back(parse_fact_pattern(part));
  }
  for (const std::string& part : split_outside_quotes(head_text, '&')) {
    if (trim(part).empty()) throw LineError("empty rule head");
    rule.heads.push_back(parse_fact_pattern(part));
  }
  return rule;
}

enum class Section { None, Predicates, Facts, Rules, Query };

struct ParsedProgram {
  KnowledgeBase kb;
  ParseReport report;
};

ParsedProgram parse_internal(const std::string& text) {
  ParsedProgram out;
  KnowledgeBase& kb = out.kb;
  ParseReport& report = out.report;

  auto error = [&](int line, DiagnosticKind kind, const std::string& msg) {
    report.errors.push_back({line, kind, msg});
  };
  auto warn = [&](int line, const std::string& msg) {
    report.warnings.push_back({line, DiagnosticKind::Semantic, msg});
  };

  std::map<std::string, Section> headers = {
      {"Predicates:", Section::Predicates},
      {"Facts:", Section::Facts},
      {"Rules:", Section::Rules},
      {"Query:", Section::Query},
  };
  std::set<Section> seen;
  Section section = Section::None;

  std::vector<int> fact_lines, rule_lines, decl_lines;
  int query_line = 0;

  std::istringstream stream(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(stream, raw)) {
    ++lineno;
    std::string line = trim(raw);
    if (line.empty()) continue;

    // A bare `Word:` line is a block header.
    if (line.back() == ':' && line.find(":::") == std::string::npos &&
        is_identifier(line.substr(0, line.size() - 1))) {
      auto it = headers.find(line);
      if (it == headers.end()) {
        error(lineno, DiagnosticKind::Syntax, "unknown block header '" + line + "'");
        section = Section::None;
        continue;
      }
      if (seen.count(it->second)) {
        error(lineno, DiagnosticKind::Syntax, "duplicate block header '" + line + "'");
        section = it->second;
        continue;
      }
      seen.insert(it->second);
      section = it->second;
      continue;
    }

    std::string sl = line, gloss;
    if (size_t sep = line.find(":::"); sep != std::string::npos) {
      sl = trim(line.substr(0, sep));
      gloss = trim(line.substr(sep + 3));
    }

    try {
      switch (section) {
        case Section::None:
          error(lineno, DiagnosticKind::Syntax, "content outside of a block: '" + line + "'");
          break;
        case Section::Predicates: {
          PredicateDecl decl = parse_predicate_decl(sl);
          decl.gloss = gloss;
          kb.predicates.push_back(std::move(decl));
          decl_lines.push_back(lineno);
          break;
        }
        case Section::Facts: {
          Fact fact = parse_fact_pattern(sl);
          fact.gloss = gloss;
          kb.facts.push_back(std::move(fact));
          fact_lines.push_back(lineno);
          break;
        }
        case Section::Rules: {
          Rule rule = parse_rule_line(sl);
          rule.gloss = gloss;
          rule.id = static_cast<int>(kb.rules.size()) + 1;
          kb.rules.push_back(std::move(rule));
          rule_lines.push_back(lineno);
          break;
        }
        case Section::Query: {
          Fact fact = parse_fact_pattern(sl);
          fact.gloss = gloss;
          if (kb.query.has_value()) {
            error(lineno, DiagnosticKind::Syntax, "more than one query line");
          } else {
            kb.query = Query{std::move(fact)};
            query_line = lineno;
          }
          break;
        }
      }
    } catch (const LineError& e) {
      error(lineno, DiagnosticKind::Syntax, e.what());
    }
  }

  for (auto [name, sec] : std::map<std::string, Section>{{"Predicates:", Section::Predicates},
                                                         {"Facts:", Section::Facts},
                                                         {"Rules:", Section::Rules}}) {
    if (!seen.count(sec))
      error(0, DiagnosticKind::Syntax, "missing required block header '" + name + "'");
  }

  // Semantic checks over whatever parsed cleanly.
  std::map<std::string, int> decl_arity;
  for (size_t i = 0; i < kb.predicates.size(); ++i) {
    const PredicateDecl& d = kb.predicates[i];
    if (decl_arity.count(d.name)) {
      error(decl_lines[i], DiagnosticKind::Semantic,
            "duplicate declaration of predicate '" + d.name + "'");
    } else {
      decl_arity[d.name] = d.arity();
    }
  }

  auto check_use = [&](const Fact& f, int line) {
    auto it = decl_arity.find(f.predicate);
    if (it == decl_arity.end()) {
      error(line, DiagnosticKind::Semantic,
            "use of undeclared predicate '" + f.predicate + "'");
    } else if (static_cast<int>(f.args.size()) != it->second) {
      error(line, DiagnosticKind::Semantic,
            "arity mismatch for '" + f.predicate + "': declared " +
                std::to_string(it->second) + ", used with " +
                std::to_string(f.args.size()));
    }
  };

  std::set<std::string> seen_facts;
  for (size_t i = 0; i < kb.facts.size(); ++i) {
    const Fact& f = kb.facts[i];
    check_use(f, fact_lines[i]);
    if (!f.is_ground())
      error(fact_lines[i], DiagnosticKind::Semantic,
            "fact must be ground: " + f.sl_text());
    if (!seen_facts.insert(f.sl_text()).second)
      warn(fact_lines[i], "duplicate fact " + f.sl_text());
  }

  for (size_t i = 0; i < kb.rules.size(); ++i) {
    const Rule& r = kb.rules[i];
    std::set<std::string> body_vars;
    for (const Fact& b : r.body) {
      check_use(b, rule_lines[i]);
      for (const Term& t : b.args)
        if (t.is_variable()) body_vars.insert(t.text());
    }
    for (const Fact& h : r.heads) {
      check_use(h, rule_lines[i]);
      for (const Term& t : h.args)
        if (t.is_variable() && !body_vars.count(t.text()))
          error(rule_lines[i], DiagnosticKind::Semantic,
                "head variable $" + t.text() + " of " + r.label() +
                    " does not occur in the rule body");
    }
  }

  if (kb.query.has_value()) {
    check_use(kb.query->fact, query_line);
    if (!kb.query->fact.is_ground())
      error(query_line, DiagnosticKind::Semantic,
            "query must be ground: " + kb.query->fact.sl_text());
  }

  report.executable = report.errors.empty();
  return out;
}

}  // namespace

std::string to_string(DiagnosticKind k) {
  return k == DiagnosticKind::Syntax ? "syntax" : "semantic";
}

ParseError::ParseError(ParseReport report)
    : std::runtime_error(report.errors.empty()
                             ? "parse error"
                             : "line " + std::to_string(report.errors.front().line) +
                                   ": " + report.errors.front().message),
      report_(std::move(report)) {}

KnowledgeBase parse_program(const std::string& text) {
  ParsedProgram parsed = parse_internal(text);
  if (!parsed.report.executable) throw ParseError(std::move(parsed.report));
  return std::move(parsed.kb);
}

ParseReport validate(const std::string& text) {
  return parse_internal(text).report;
}

std::string render_program(const KnowledgeBase& kb) {
  std::string out = "Predicates:\n";
  for (const PredicateDecl& d : kb.predicates) out += d.line_text() + "\n";
  out += "Facts:\n";
  for (const Fact& f : kb.facts) out += f.line_text() + "\n";
  out += "Rules:\n";
  for (const Rule& r : kb.rules) out += r.line_text() + "\n";
  if (kb.query.has_value()) {
    out += "Query:\n";
    out += kb.query->fact.line_text() + "\n";
  }
  return out;
}

Fact parse_fact_text(const std::string& text) {
  try {
    return parse_fact_pattern(text);
  } catch (const LineError& e) {
    ParseReport report;
    report.errors.push_back({1, DiagnosticKind::Syntax, e.what()});
    throw ParseError(std::move(report));
  }
}

}  // namespace deduct
