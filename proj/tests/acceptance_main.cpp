// Acceptance suite: runs every release criterion end to end and prints one
// pass/fail line per criterion. Returns the number of failed criteria.
//
// argv[1] (optional, wired in by ctest): path to the deduct CLI binary,
// used by the CLI determinism criterion.

#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "deduct/corpus.hpp"
#include "deduct/dataset.hpp"
#include "deduct/engine.hpp"
#include "deduct/eval.hpp"
#include "deduct/parser.hpp"
#include "deduct/render.hpp"
#include "test_support.hpp"

using namespace deduct;
using namespace deduct::testing;

namespace {

int g_failures = 0;

void report(int index, const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%d/8] %-22s %s (%s)\n", index, name.c_str(),
              pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

struct SolvedPuzzle {
  LogicalExample example;
  KnowledgeBase kb;
  Closure closure;
  Trace trace;
};

std::string run_cli(const std::string& command) {
  std::string with_redirect = command + " 2>/dev/null";
  FILE* pipe = popen(with_redirect.c_str(), "r");
  if (pipe == nullptr) return {};
  std::string output;
  char buffer[4096];
  size_t got;
  while ((got = fread(buffer, 1, sizeof(buffer), pipe)) > 0)
    output.append(buffer, got);
  pclose(pipe);
  return output;
}

/// Deterministic corruption of a valid program, cycling five failure modes.
std::string corrupt_program(const std::string& program, int mode) {
  std::string out = program;
  switch (mode % 5) {
    case 0:  // undeclared predicate used by a fact
      out.replace(out.find("Facts:\n"), 7, "Facts:\nZzzUndeclared(Anne, True)\n");
      return out;
    case 1:  // missing polarity slot
      out.replace(out.find("Facts:\n"), 7, "Facts:\nBroken(Anne)\n");
      return out;
    case 2:  // unknown block header
      return "Bogus:\n" + out;
    case 3:  // broken rule arrow
      if (auto at = out.find(">>>"); at != std::string::npos) out.replace(at, 3, ">>");
      return out;
    default:  // non-ground fact
      out.replace(out.find("Facts:\n"), 7, "Facts:\nGhost($x, True)\n");
      return out;
  }
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli_path = argc > 1 ? argv[1] : "";
  const uint64_t base_seed = 20240601;

  // Shared corpus: 500 puzzles, half OWA and half CWA, sizes and hop depths
  // drawn up to the criterion caps (10 entities, 12 rules, depth 5).
  PuzzleParams caps;
  caps.entity_count = 10;
  caps.predicate_count = 10;
  caps.rule_count = 12;
  caps.max_premises = 2;
  caps.target_hop_depth = 5;
  caps.negation_probability = 0.15;

  PuzzleParams owa = caps;
  owa.assumption = Assumption::Owa;
  owa.seed = base_seed;
  PuzzleParams cwa = caps;
  cwa.assumption = Assumption::Cwa;
  cwa.seed = base_seed + 1000;

  std::vector<LogicalExample> corpus = generate_corpus(owa, 250, 4);
  std::vector<LogicalExample> cwa_corpus = generate_corpus(cwa, 250, 4);
  corpus.insert(corpus.end(), cwa_corpus.begin(), cwa_corpus.end());

  // ---- 1. Oracle equivalence on 500 puzzles, under 30 seconds.
  std::vector<SolvedPuzzle> solved;
  solved.reserve(corpus.size());
  {
    auto start = std::chrono::steady_clock::now();
    int equal = 0;
    for (const LogicalExample& ex : corpus) {
      SolvedPuzzle s;
      s.example = ex;
      s.kb = parse_program(ex.sl_program);
      s.kb.assumption = ex.assumption;
      auto [closure, trace] = saturate(s.kb);
      s.closure = std::move(closure);
      s.trace = std::move(trace);

      std::vector<Fact> engine_facts = s.closure.initial();
      engine_facts.insert(engine_facts.end(), s.closure.implied().begin(),
                          s.closure.implied().end());
      if (fact_keys(engine_facts) == fact_keys(brute_force_closure(s.kb))) ++equal;
      solved.push_back(std::move(s));
    }
    double seconds = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - start).count();
    char detail[128];
    std::snprintf(detail, sizeof(detail), "%d/500 closures equal in %.2fs", equal,
                  seconds);
    report(1, "oracle equivalence", equal == 500 && seconds < 30.0, detail);
  }

  // ---- 2. Solver answers match generator gold on both assumptions.
  {
    std::vector<TruthValue> all_preds, all_golds, owa_preds, owa_golds, cwa_preds,
        cwa_golds;
    for (const SolvedPuzzle& s : solved) {
      TruthValue answer = answer_query(s.closure, *s.kb.query, s.kb.assumption);
      all_preds.push_back(answer);
      all_golds.push_back(s.example.gold_answer);
      if (s.example.assumption == Assumption::Owa) {
        owa_preds.push_back(answer);
        owa_golds.push_back(s.example.gold_answer);
      } else {
        cwa_preds.push_back(answer);
        cwa_golds.push_back(s.example.gold_answer);
      }
    }
    double overall = score(all_preds, all_golds);
    double owa_score = score(owa_preds, owa_golds);
    double cwa_score = score(cwa_preds, cwa_golds);
    char detail[128];
    std::snprintf(detail, sizeof(detail), "score %.2f (owa %.2f, cwa %.2f)", overall,
                  owa_score, cwa_score);
    report(2, "solver correctness",
           overall == 100.0 && owa_score == 100.0 && cwa_score == 100.0, detail);
  }

  // ---- 3. Random baselines reproduce 33.33 / 50.00 within +-1.5.
  {
    double three = random_baseline(3, 10000, base_seed);
    double two = random_baseline(2, 10000, base_seed + 1);
    bool pass = three >= 33.33 - 1.5 && three <= 33.33 + 1.5 && two >= 50.0 - 1.5 &&
                two <= 50.0 + 1.5;
    char detail[128];
    std::snprintf(detail, sizeof(detail), "3-option %.2f vs 33.33, 2-option %.2f vs 50.00",
                  three, two);
    report(3, "random baseline", pass, detail);
  }

  // ---- 4. parse(render(kb)) identity on 200 knowledge bases.
  {
    int identical = 0;
    for (int i = 0; i < 200; ++i) {
      const KnowledgeBase& kb = solved[i].kb;
      if (parse_program(render_program(kb)) == kb) ++identical;
    }
    report(4, "round-trip", identical == 200,
           std::to_string(identical) + "/200 round-trip identical");
  }

  // ---- 5. Ablation renders equal line-filtered default renders, 100 traces.
  {
    int equal = 0;
    for (int i = 0; i < 100; ++i) {
      const SolvedPuzzle& s = solved[i];
      std::string full = render_turn2(s.kb, s.trace, s.closure);

      RenderOptions no_unbind;
      no_unbind.include_unbind = false;
      RenderOptions no_fail;
      no_fail.include_fail_backtrack = false;

      bool unbind_ok = render_turn2(s.kb, s.trace, s.closure, no_unbind) ==
                       filter_lines(full, "Unbind $", "");
      bool fail_ok = render_turn2(s.kb, s.trace, s.closure, no_fail) ==
                     filter_lines(full, "", "Fail & backtrack");
      if (unbind_ok && fail_ok) ++equal;
    }
    report(5, "ablation equivalence", equal == 100,
           std::to_string(equal) + "/100 filtered renders identical");
  }

  // ---- 6. Trace well-nesting and trace/closure agreement on all 500.
  {
    int ok = 0;
    std::string first_violation;
    for (const SolvedPuzzle& s : solved) {
      std::string nesting = check_bind_nesting(s.trace);
      std::string agreement =
          check_trace_closure_agreement(s.trace, s.closure.implied());
      if (nesting.empty() && agreement.empty())
        ++ok;
      else if (first_violation.empty())
        first_violation = nesting.empty() ? agreement : nesting;
    }
    report(6, "trace invariants", ok == 500,
           std::to_string(ok) + "/500 traces valid" +
               (first_violation.empty() ? "" : "; first: " + first_violation));
  }

  // ---- 7. Dataset compilation: 500 valid + 50 corrupted programs.
  {
    std::vector<LogicalExample> mixed = corpus;
    for (int i = 0; i < 50; ++i) {
      LogicalExample bad = corpus[i];
      bad.id = "corrupted-" + std::to_string(i);
      bad.sl_program = corrupt_program(bad.sl_program, i);
      mixed.push_back(std::move(bad));
    }

    std::ostringstream out;
    CompileStats stats = compile_corpus(mixed, {}, out, 4);

    int conversations = 0, structure_ok = 0, option_ok = 0;
    {
      std::istringstream lines(out.str());
      std::string line;
      size_t index = 0;
      while (std::getline(lines, line)) {
        ++conversations;
        const SolvedPuzzle& s = solved[index];  // compiled rows keep input order
        nlohmann::json j = nlohmann::json::parse(line);
        const auto& turns = j.at("conversations");
        bool alternating = turns.size() == 4 && turns[0].at("from") == "human" &&
                           turns[1].at("from") == "gpt" &&
                           turns[2].at("from") == "human" &&
                           turns[3].at("from") == "gpt";
        if (alternating) ++structure_ok;
        std::string expected = "The correct option is: ";
        expected += option_letter(s.example.gold_answer);
        std::string turn4 = turns[3].at("value").get<std::string>();
        if (turn4.find(expected) != std::string::npos) ++option_ok;
        ++index;
      }
    }

    bool pass = stats.total == 550 && stats.compiled == 500 &&
                stats.filtered_syntax == 50 && stats.filtered_inconsistent == 0 &&
                stats.filtered_answer_mismatch == 0 && stats.reconciles() &&
                conversations == 500 && structure_ok == 500 && option_ok == 500;
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "compiled %d, syntax-filtered %d, %d conversations, %d gold options",
                  stats.compiled, stats.filtered_syntax, conversations, option_ok);
    report(7, "dataset compilation", pass, detail);
  }

  // ---- 8. CLI determinism: two compile-dataset --seed 7 runs, identical bytes.
  {
    if (cli_path.empty()) {
      report(8, "cli determinism", false, "no CLI path given on argv[1]");
    } else {
      std::string dir = "/tmp/deduct_acceptance_" + std::to_string(getpid());
      std::string mk = "mkdir -p " + dir;
      if (std::system(mk.c_str()) != 0) {
        report(8, "cli determinism", false, "cannot create temp dir");
      } else {
        std::string puzzles = dir + "/puzzles.jsonl";
        run_cli(cli_path + " gen --count 40 --seed 7 --depth 4 --out " + puzzles);
        std::string first =
            run_cli(cli_path + " compile-dataset --seed 7 --workers 4 " + puzzles);
        std::string second =
            run_cli(cli_path + " compile-dataset --seed 7 --workers 2 " + puzzles);
        bool pass = !first.empty() && first == second;
        char detail[128];
        std::snprintf(detail, sizeof(detail), "%zu bytes, runs %s", first.size(),
                      pass ? "identical" : "differ");
        report(8, "cli determinism", pass, detail);
        std::string rm = "rm -rf " + dir;
        if (std::system(rm.c_str()) != 0) std::fprintf(stderr, "note: could not remove %s\n", dir.c_str());
      }
    }
  }

  if (g_failures == 0)
    std::printf("ACCEPTANCE: all 8 criteria passed\n");
  else
    std::printf("ACCEPTANCE: %d of 8 criteria FAILED\n", g_failures);
  return g_failures;
}
