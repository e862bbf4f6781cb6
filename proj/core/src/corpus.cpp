#include "deduct/corpus.hpp"

#include <unistd.h>

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "deduct/parser.hpp"

namespace deduct {

namespace {

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

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

nlohmann::json parse_json(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw IngestError(std::string("record is not valid JSON: ") + e.what());
  }
}

std::string require_string(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_string())
    throw IngestError(std::string("record is missing string field '") + key + "'");
  return j.at(key).get<std::string>();
}

std::string first_string(const nlohmann::json& j,
                         std::initializer_list<const char*> keys) {
  for (const char* key : keys)
    if (j.contains(key) && j.at(key).is_string()) return j.at(key).get<std::string>();
  std::string names;
  for (const char* key : keys) names += std::string(names.empty() ? "" : "/") + key;
  throw IngestError("record is missing string field '" + names + "'");
}

TruthValue parse_answer(const nlohmann::json& j) {
  if (!j.contains("answer")) throw IngestError("record is missing field 'answer'");
  const nlohmann::json& a = j.at("answer");
  if (a.is_boolean()) return a.get<bool>() ? TruthValue::True : TruthValue::False;
  if (a.is_string()) {
    if (auto v = truth_from_string(a.get<std::string>())) return *v;
    throw IngestError("unknown answer label '" + a.get<std::string>() + "'");
  }
  throw IngestError("field 'answer' must be a string or boolean");
}

std::string strip_true_or_false_prefix(const std::string& s) {
  static const std::string prefix = "true or false:";
  std::string t = trim(s);
  if (t.size() >= prefix.size() && lower(t.substr(0, prefix.size())) == prefix)
    return trim(t.substr(prefix.size()));
  return t;
}

}  // namespace

std::optional<SourceFormat> source_format_from_string(const std::string& s) {
  if (s == "proofwriter") return SourceFormat::ProofWriter;
  if (s == "prontoqa") return SourceFormat::PrOntoQa;
  if (s == "native") return SourceFormat::Native;
  return std::nullopt;
}

void SlLookup::insert(const std::string& id, std::string sl_text) {
  if (!entries_.emplace(id, std::move(sl_text)).second)
    throw IngestError("duplicate id in SL lookup: " + id);
}

const std::string* SlLookup::find(const std::string& id) const {
  auto it = entries_.find(id);
  return it == entries_.end() ? nullptr : &it->second;
}

SlLookup SlLookup::load_jsonl(std::istream& in) {
  SlLookup lookup;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    nlohmann::json j = parse_json(line);
    lookup.insert(require_string(j, "id"), require_string(j, "sl_text"));
  }
  return lookup;
}

LogicalExample ingest(const std::string& record_json, SourceFormat format,
                      const SlLookup& lookup, const CommandSlProvider* provider) {
  if (format == SourceFormat::Native) return example_from_json(record_json);

  nlohmann::json j = parse_json(record_json);
  LogicalExample ex;
  ex.id = require_string(j, "id");

  if (format == SourceFormat::ProofWriter) {
    ex.assumption = Assumption::Owa;
    ex.source = "proofwriter";
    ex.nl_context = first_string(j, {"theory", "context"});
    ex.nl_query = require_string(j, "question");
  } else {
    ex.assumption = Assumption::Cwa;
    ex.source = "prontoqa";
    ex.nl_context = require_string(j, "context");
    ex.nl_query = strip_true_or_false_prefix(first_string(j, {"query", "question"}));
  }

  ex.gold_answer = parse_answer(j);
  if (ex.assumption == Assumption::Cwa && ex.gold_answer == TruthValue::Unknown)
    throw IngestError("answer 'Unknown' is not valid under the closed-world assumption");

  if (const std::string* sl = lookup.find(ex.id)) {
    ex.sl_program = *sl;
    return ex;
  }
  if (provider != nullptr) {
    auto formulated = provider->formulate(ex.nl_context + "\n" + ex.nl_query + "\n");
    if (!formulated.has_value())
      throw SkipRecord("formulator command failed for id " + ex.id);
    ex.sl_program = *formulated;
    return ex;
  }
  throw SkipRecord("no SL entry for id " + ex.id);
}

std::optional<std::string> CommandSlProvider::formulate(const std::string& nl_text) const {
  char in_path[] = "/tmp/deduct_sl_in_XXXXXX";
  char out_path[] = "/tmp/deduct_sl_out_XXXXXX";
  int in_fd = mkstemp(in_path);
  int out_fd = mkstemp(out_path);
  if (in_fd < 0 || out_fd < 0) {
    if (in_fd >= 0) { close(in_fd); std::remove(in_path); }
    if (out_fd >= 0) { close(out_fd); std::remove(out_path); }
    throw std::runtime_error("cannot create temporary files for SL provider");
  }
  close(in_fd);
  close(out_fd);

  {
    std::ofstream in_file(in_path, std::ios::binary);
    in_file << nl_text;
  }
  std::string shell = command_ + " < '" + in_path + "' > '" + out_path + "'";
  int status = std::system(shell.c_str());

  std::optional<std::string> result;
  if (status == 0) {
    std::ifstream out_file(out_path, std::ios::binary);
    std::ostringstream buffer;
    buffer << out_file.rdbuf();
    result = buffer.str();
  }
  std::remove(in_path);
  std::remove(out_path);
  return result;
}

std::string genre_sentence(RuleGenre genre, const std::string& subject,
                           const std::string& attribute, bool positive,
                           bool every) {
  std::string a = lower(subject);
  std::string b = lower(attribute);
  switch (genre) {
    case RuleGenre::EveryEach:
      return std::string(every ? "Every " : "Each ") + a +
             (positive ? " is " : " is not ") + b + ".";
    case RuleGenre::Are:
      return capitalize(pluralize(a)) + (positive ? " are " : " are not ") + b + ".";
    case RuleGenre::IfSomeone:
      return "If someone is " + a + ", then they are " + (positive ? "" : "not ") +
             b + ".";
    case RuleGenre::IfSomething:
      return "If something is " + a + ", then it is " + (positive ? "" : "not ") +
             b + ".";
  }
  return {};
}

std::string pluralize(const std::string& noun) {
  static const std::map<std::string, std::string> irregular = {
      {"person", "people"}, {"man", "men"},     {"woman", "women"},
      {"child", "children"}, {"mouse", "mice"}, {"goose", "geese"},
      {"foot", "feet"},      {"tooth", "teeth"},
  };
  if (auto it = irregular.find(noun); it != irregular.end()) return it->second;
  auto ends_with = [&](const char* suffix) {
    std::string s(suffix);
    return noun.size() >= s.size() && noun.compare(noun.size() - s.size(), s.size(), s) == 0;
  };
  if (ends_with("s") || ends_with("x") || ends_with("z") || ends_with("ch") ||
      ends_with("sh"))
    return noun + "es";
  if (noun.size() >= 2 && noun.back() == 'y') {
    char before = noun[noun.size() - 2];
    if (before != 'a' && before != 'e' && before != 'i' && before != 'o' && before != 'u')
      return noun.substr(0, noun.size() - 1) + "ies";
  }
  return noun + "s";
}

ReformatResult reformat_rules(const LogicalExample& example, uint64_t seed) {
  ReformatResult result;
  result.example = example;

  ParseReport report = validate(example.sl_program);
  if (!report.executable) {
    result.warnings.push_back("program is not executable; left unchanged");
    return result;
  }
  KnowledgeBase kb = parse_program(example.sl_program);

  std::mt19937_64 rng(seed);
  for (Rule& rule : kb.rules) {
    bool expressible =
        rule.body.size() == 1 && rule.heads.size() == 1 &&
        rule.body[0].args.size() == 1 && rule.heads[0].args.size() == 1 &&
        rule.body[0].args[0].is_variable() &&
        rule.body[0].args[0] == rule.heads[0].args[0] && rule.body[0].polarity;
    if (!expressible) {
      result.warnings.push_back(rule.label() +
                                ": not expressible in the rule genres; gloss unchanged");
      continue;
    }
    auto genre = static_cast<RuleGenre>(rng() % 4);
    bool every = genre == RuleGenre::EveryEach ? rng() % 2 == 0 : true;
    rule.gloss = genre_sentence(genre, rule.body[0].predicate,
                                rule.heads[0].predicate, rule.heads[0].polarity, every);
  }

  result.example.sl_program = render_program(kb);
  return result;
}

std::string example_to_json(const LogicalExample& example) {
  nlohmann::ordered_json j;
  j["id"] = example.id;
  j["nl_context"] = example.nl_context;
  j["nl_query"] = example.nl_query;
  j["sl_program"] = example.sl_program;
  j["gold_answer"] = to_string(example.gold_answer);
  j["assumption"] = to_string(example.assumption);
  j["source"] = example.source;
  return j.dump();
}

LogicalExample example_from_json(const std::string& json_text) {
  nlohmann::json j = parse_json(json_text);
  LogicalExample ex;
  ex.id = require_string(j, "id");
  ex.nl_context = require_string(j, "nl_context");
  ex.nl_query = require_string(j, "nl_query");
  ex.sl_program = require_string(j, "sl_program");
  auto gold = truth_from_string(require_string(j, "gold_answer"));
  if (!gold) throw IngestError("unknown answer label in 'gold_answer'");
  ex.gold_answer = *gold;
  auto assumption = assumption_from_string(require_string(j, "assumption"));
  if (!assumption) throw IngestError("unknown assumption; expected 'owa' or 'cwa'");
  ex.assumption = *assumption;
  if (j.contains("source") && j.at("source").is_string())
    ex.source = j.at("source").get<std::string>();
  if (ex.assumption == Assumption::Cwa && ex.gold_answer == TruthValue::Unknown)
    throw IngestError("answer 'Unknown' is not valid under the closed-world assumption");
  return ex;
}

std::vector<LogicalExample> load_examples_jsonl(std::istream& in) {
  std::vector<LogicalExample> examples;
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    examples.push_back(example_from_json(line));
  }
  return examples;
}

void save_examples_jsonl(const std::vector<LogicalExample>& examples,
                         std::ostream& out) {
  for (const LogicalExample& ex : examples) out << example_to_json(ex) << '\n';
}

}  // namespace deduct
