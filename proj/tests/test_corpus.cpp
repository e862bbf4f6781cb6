#include <doctest.h>

#include <sstream>

#include "deduct/corpus.hpp"
#include "deduct/eval.hpp"
#include "deduct/parser.hpp"
#include "test_support.hpp"

using namespace deduct;
using namespace deduct::testing;

namespace {

SlLookup demo_lookup() {
  SlLookup lookup;
  lookup.insert("pw-1", testing::read_file(test_path("fixtures/proofwriter_demo.sl")));
  lookup.insert("pq-1", testing::read_file(test_path("fixtures/prontoqa_demo.sl")));
  return lookup;
}

/// Program content comparison that ignores gloss text everywhere.
bool logically_equal(const KnowledgeBase& a, const KnowledgeBase& b) {
  auto strip = [](KnowledgeBase kb) {
    for (PredicateDecl& d : kb.predicates) d.gloss.clear();
    for (Fact& f : kb.facts) f.gloss.clear();
    for (Rule& r : kb.rules) r.gloss.clear();
    if (kb.query.has_value()) kb.query->fact.gloss.clear();
    return kb;
  };
  return strip(a) == strip(b);
}

}  // namespace

TEST_CASE("sl lookup loads jsonl and rejects duplicate ids") {
  std::istringstream in(
      R"({"id": "a", "sl_text": "Predicates:\nFacts:\nRules:\n"})"
      "\n"
      R"({"id": "b", "sl_text": "Predicates:\nFacts:\nRules:\n"})"
      "\n");
  SlLookup lookup = SlLookup::load_jsonl(in);
  CHECK(lookup.size() == 2);
  CHECK(lookup.find("a") != nullptr);
  CHECK(lookup.find("missing") == nullptr);
  CHECK_THROWS_AS(lookup.insert("a", "x"), IngestError);
}

TEST_CASE("proofwriter records ingest as OWA examples") {
  std::string record =
      R"({"id": "pw-1", "theory": "Anne is young. Dave is not green.",)"
      R"( "question": "Dave is not green.", "answer": "Unknown"})";
  LogicalExample ex = ingest(record, SourceFormat::ProofWriter, demo_lookup());
  CHECK(ex.assumption == Assumption::Owa);
  CHECK(ex.gold_answer == TruthValue::Unknown);
  CHECK(ex.source == "proofwriter");
  CHECK(ex.nl_query == "Dave is not green.");
  CHECK(ex.sl_program.find("Green(Dave, False)") != std::string::npos);

  // "context" is accepted as an alias for "theory"
  std::string alias =
      R"({"id": "pw-1", "context": "text", "question": "q", "answer": "true"})";
  CHECK(ingest(alias, SourceFormat::ProofWriter, demo_lookup()).gold_answer ==
        TruthValue::True);
}

TEST_CASE("prontoqa records ingest as CWA examples") {
  std::string record =
      R"({"id": "pq-1", "context": "Alex is a tumpus.",)"
      R"( "query": "True or false: Alex is not shy.", "answer": true})";
  LogicalExample ex = ingest(record, SourceFormat::PrOntoQa, demo_lookup());
  CHECK(ex.assumption == Assumption::Cwa);
  CHECK(ex.gold_answer == TruthValue::True);
  CHECK(ex.nl_query == "Alex is not shy.");  // prefix stripped

  std::string unknown_answer =
      R"({"id": "pq-1", "context": "c", "query": "q", "answer": "unknown"})";
  CHECK_THROWS_AS(ingest(unknown_answer, SourceFormat::PrOntoQa, demo_lookup()),
                  IngestError);
}

TEST_CASE("ingest errors: missing SL entry skips, bad labels and JSON throw") {
  std::string no_sl =
      R"({"id": "nope", "theory": "t", "question": "q", "answer": "true"})";
  CHECK_THROWS_AS(ingest(no_sl, SourceFormat::ProofWriter, demo_lookup()), SkipRecord);

  std::string bad_label =
      R"({"id": "pw-1", "theory": "t", "question": "q", "answer": "maybe"})";
  CHECK_THROWS_AS(ingest(bad_label, SourceFormat::ProofWriter, demo_lookup()),
                  IngestError);

  CHECK_THROWS_AS(ingest("not json", SourceFormat::ProofWriter, demo_lookup()),
                  IngestError);
  CHECK_THROWS_AS(ingest(R"({"theory": "t"})", SourceFormat::ProofWriter, demo_lookup()),
                  IngestError);
}

TEST_CASE("native records round-trip through json") {
  LogicalExample ex;
  ex.id = "n-1";
  ex.nl_context = "Anne is young. Anne is furry.";
  ex.nl_query = "Anne is furry.";
  ex.sl_program = "Predicates:\nFacts:\nRules:\n";
  ex.gold_answer = TruthValue::False;
  ex.assumption = Assumption::Cwa;
  ex.source = "unit";
  CHECK(example_from_json(example_to_json(ex)) == ex);

  std::ostringstream out;
  save_examples_jsonl({ex, ex}, out);
  std::istringstream in(out.str());
  CHECK(load_examples_jsonl(in).size() == 2);
}

TEST_CASE("genre sentences cover the four formats with the (not) slot") {
  CHECK(genre_sentence(RuleGenre::IfSomeone, "Young", "Furry", true) ==
        "If someone is young, then they are furry.");
  CHECK(genre_sentence(RuleGenre::IfSomething, "Young", "Furry", true) ==
        "If something is young, then it is furry.");
  CHECK(genre_sentence(RuleGenre::Are, "Rompus", "Liquid", true) ==
        "Rompuses are liquid.");
  CHECK(genre_sentence(RuleGenre::EveryEach, "Rompus", "Liquid", true, true) ==
        "Every rompus is liquid.");
  CHECK(genre_sentence(RuleGenre::EveryEach, "Rompus", "Liquid", true, false) ==
        "Each rompus is liquid.");

  CHECK(genre_sentence(RuleGenre::IfSomeone, "Young", "Furry", false) ==
        "If someone is young, then they are not furry.");
  CHECK(genre_sentence(RuleGenre::Are, "Wumpus", "Small", false) ==
        "Wumpuses are not small.");
  CHECK(genre_sentence(RuleGenre::EveryEach, "Jompus", "Shy", false) ==
        "Every jompus is not shy.");
}

TEST_CASE("pluralizer handles the irregular table and suffix rules") {
  CHECK(pluralize("rompus") == "rompuses");
  CHECK(pluralize("wumpus") == "wumpuses");
  CHECK(pluralize("fox") == "foxes");
  CHECK(pluralize("finch") == "finches");
  CHECK(pluralize("city") == "cities");
  CHECK(pluralize("day") == "days");
  CHECK(pluralize("person") == "people");
  CHECK(pluralize("child") == "children");
  CHECK(pluralize("dog") == "dogs");
}

TEST_CASE("reformat rewrites rule glosses but never the symbolic side") {
  PuzzleParams params;
  params.seed = 5;
  params.rule_count = 8;
  LogicalExample ex = generate_puzzle(params);

  ReformatResult result = reformat_rules(ex, 99);
  KnowledgeBase before = parse_program(ex.sl_program);
  KnowledgeBase after = parse_program(result.example.sl_program);
  CHECK(logically_equal(before, after));

  // facts and query keep their glosses; only rule glosses may change
  for (size_t i = 0; i < before.facts.size(); ++i)
    CHECK(before.facts[i].gloss == after.facts[i].gloss);

  // deterministic under the seed
  ReformatResult again = reformat_rules(ex, 99);
  CHECK(again.example == result.example);
  ReformatResult other = reformat_rules(ex, 100);
  CHECK(other.example.sl_program != result.example.sl_program);
}

TEST_CASE("reformatted glosses land in one of the four genres") {
  LogicalExample ex;
  ex.id = "r-1";
  ex.assumption = Assumption::Owa;
  ex.gold_answer = TruthValue::True;
  ex.sl_program =
      "Predicates:\nYoung($x, bool)\nFurry($x, bool)\nFacts:\nYoung(Anne, True)\n"
      "Rules:\nYoung($x, True) >>> Furry($x, True) ::: Young people are furry.\n"
      "Query:\nYoung(Anne, True)\n";
  bool saw_genre = false;
  for (uint64_t seed = 0; seed < 8 && !saw_genre; ++seed) {
    ReformatResult result = reformat_rules(ex, seed);
    KnowledgeBase kb = parse_program(result.example.sl_program);
    const std::string& gloss = kb.rules[0].gloss;
    saw_genre = gloss == "If someone is young, then they are furry." ||
                gloss == "If something is young, then it is furry." ||
                gloss == "Youngs are furry." ||
                gloss == "Every young is furry." || gloss == "Each young is furry.";
    CHECK(saw_genre);
  }
}

TEST_CASE("rules outside the genres are left unchanged with a warning") {
  LogicalExample ex;
  ex.id = "r-2";
  ex.assumption = Assumption::Owa;
  ex.gold_answer = TruthValue::True;
  ex.sl_program =
      "Predicates:\nBlue($x, bool)\nQuiet($x, bool)\nGreen($x, bool)\n"
      "Facts:\nBlue(Anne, True)\n"
      "Rules:\nBlue($x, True) & Quiet($x, True) >>> Green($x, True) ::: original gloss\n"
      "Query:\nBlue(Anne, True)\n";
  ReformatResult result = reformat_rules(ex, 1);
  REQUIRE(result.warnings.size() == 1);
  CHECK(result.warnings[0].find("Rule1") != std::string::npos);
  KnowledgeBase kb = parse_program(result.example.sl_program);
  CHECK(kb.rules[0].gloss == "original gloss");
}

TEST_CASE("unparseable programs pass through reformat with a warning") {
  LogicalExample ex;
  ex.id = "r-3";
  ex.sl_program = "Facts:\nP(a, True)\n";
  ex.assumption = Assumption::Owa;
  ex.gold_answer = TruthValue::True;
  ReformatResult result = reformat_rules(ex, 0);
  CHECK(result.example.sl_program == ex.sl_program);
  REQUIRE(result.warnings.size() == 1);
}

TEST_CASE("external command provider pipes NL in and SL out") {
  CommandSlProvider echo("cat");
  auto echoed = echo.formulate("Anne is young.\n");
  REQUIRE(echoed.has_value());
  CHECK(*echoed == "Anne is young.\n");

  CommandSlProvider fixed("sh -c 'cat > /dev/null; printf \"Predicates:\\nFacts:\\nRules:\\n\"'");
  auto sl = fixed.formulate("ignored context");
  REQUIRE(sl.has_value());
  CHECK(validate(*sl).executable);

  CommandSlProvider failing("sh -c 'exit 3'");
  CHECK_FALSE(failing.formulate("anything").has_value());
}

TEST_CASE("ingest falls back to the formulator command when the lookup misses") {
  std::string record =
      R"({"id": "uncovered", "theory": "t", "question": "q", "answer": "true"})";
  CommandSlProvider fixed(
      "sh -c 'cat > /dev/null; printf \"Predicates:\\nFacts:\\nRules:\\n\"'");
  LogicalExample ex = ingest(record, SourceFormat::ProofWriter, demo_lookup(), &fixed);
  CHECK(validate(ex.sl_program).executable);

  CommandSlProvider failing("sh -c 'exit 1'");
  CHECK_THROWS_AS(ingest(record, SourceFormat::ProofWriter, demo_lookup(), &failing),
                  SkipRecord);
}
