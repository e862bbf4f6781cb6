// deduct: parse, solve and trace symbolic deduction programs, and compile
// them into 4-turn instruction-tuning conversations.
//
// Exit codes: 0 success, 1 input error, 2 internal limit exceeded.
// Diagnostics go to stderr; data goes to stdout (or --out).

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "deduct/corpus.hpp"
#include "deduct/dataset.hpp"
#include "deduct/engine.hpp"
#include "deduct/eval.hpp"
#include "deduct/parser.hpp"
#include "deduct/render.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitLimitError = 2;

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open input file: " + path);
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

/// Output stream selector: --out PATH or stdout.
class OutputTarget {
 public:
  explicit OutputTarget(const std::string& path) {
    if (path.empty()) return;
    file_.open(path, std::ios::binary);
    if (!file_) throw std::runtime_error("cannot open output file: " + path);
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
  bool is_file() const { return file_.is_open(); }

 private:
  std::ofstream file_;
};

struct CommonOptions {
  std::string input;
  std::string out_path;
  std::string assumption;  // "", "owa", "cwa"
  std::string format = "native";
  std::string sl_lookup_path;
  std::string sl_command;
  bool no_unbind = false;
  bool no_fail_backtrack = false;
  bool nl = false;
  bool no_answer_filter = false;
  int limit_passes = deduct::Limits{}.max_passes;
  int limit_derived = deduct::Limits{}.max_derived;
  uint64_t seed = 0;
  int workers = 1;
};

deduct::RenderOptions render_options(const CommonOptions& opts) {
  deduct::RenderOptions render;
  render.include_unbind = !opts.no_unbind;
  render.include_fail_backtrack = !opts.no_fail_backtrack;
  render.representation =
      opts.nl ? deduct::Representation::Nl : deduct::Representation::Sl;
  return render;
}

deduct::Limits limits_of(const CommonOptions& opts) {
  return deduct::Limits{opts.limit_passes, opts.limit_derived};
}

std::optional<deduct::Assumption> assumption_override(const CommonOptions& opts) {
  if (opts.assumption.empty()) return std::nullopt;
  auto a = deduct::assumption_from_string(opts.assumption);
  if (!a) throw std::runtime_error("unknown assumption '" + opts.assumption + "'");
  return a;
}

nlohmann::ordered_json report_to_json(const deduct::ParseReport& report) {
  nlohmann::ordered_json j;
  j["executable"] = report.executable;
  auto diag_array = [](const std::vector<deduct::Diagnostic>& diagnostics) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const deduct::Diagnostic& d : diagnostics) {
      nlohmann::ordered_json item;
      item["line"] = d.line;
      item["kind"] = deduct::to_string(d.kind);
      item["message"] = d.message;
      arr.push_back(std::move(item));
    }
    return arr;
  };
  j["errors"] = diag_array(report.errors);
  j["warnings"] = diag_array(report.warnings);
  return j;
}

int run_parse(const CommonOptions& opts) {
  deduct::ParseReport report = deduct::validate(read_input(opts.input));
  std::cout << report_to_json(report).dump() << '\n';
  return report.executable ? kExitOk : kExitInputError;
}

int run_solve(const CommonOptions& opts) {
  deduct::KnowledgeBase kb = deduct::parse_program(read_input(opts.input));
  if (auto a = assumption_override(opts)) kb.assumption = *a;
  if (!kb.query.has_value())
    throw std::runtime_error("program has no Query block to solve");

  auto [closure, trace] = deduct::saturate(kb, limits_of(opts));
  deduct::TruthValue answer =
      deduct::answer_query(closure, *kb.query, kb.assumption);

  nlohmann::ordered_json j;
  j["answer"] = deduct::to_string(answer);
  j["assumption"] = deduct::to_string(kb.assumption);
  j["consistent"] = deduct::check_consistency(closure).empty();
  nlohmann::ordered_json closure_json;
  nlohmann::ordered_json initial = nlohmann::ordered_json::array();
  for (const deduct::Fact& f : closure.initial()) initial.push_back(f.sl_text());
  nlohmann::ordered_json implied = nlohmann::ordered_json::array();
  for (const deduct::Fact& f : closure.implied()) implied.push_back(f.sl_text());
  closure_json["initial"] = std::move(initial);
  closure_json["implied"] = std::move(implied);
  j["closure"] = std::move(closure_json);
  std::cout << j.dump() << '\n';
  return kExitOk;
}

int run_trace(const CommonOptions& opts) {
  deduct::KnowledgeBase kb = deduct::parse_program(read_input(opts.input));
  auto [closure, trace] = deduct::saturate(kb, limits_of(opts));
  std::cout << deduct::render_turn2(kb, trace, closure, render_options(opts));
  return kExitOk;
}

std::vector<deduct::LogicalExample> ingest_corpus(const CommonOptions& opts) {
  auto format = deduct::source_format_from_string(opts.format);
  if (!format) throw std::runtime_error("unknown format '" + opts.format + "'");

  deduct::SlLookup lookup;
  if (*format != deduct::SourceFormat::Native) {
    if (opts.sl_lookup_path.empty() && opts.sl_command.empty())
      throw std::runtime_error("--sl-lookup or --sl-command is required for format '" +
                               opts.format + "'");
    if (!opts.sl_lookup_path.empty()) {
      std::ifstream lookup_file(opts.sl_lookup_path);
      if (!lookup_file)
        throw std::runtime_error("cannot open SL lookup: " + opts.sl_lookup_path);
      lookup = deduct::SlLookup::load_jsonl(lookup_file);
    }
  }
  std::optional<deduct::CommandSlProvider> provider;
  if (!opts.sl_command.empty()) provider.emplace(opts.sl_command);

  std::istringstream lines(read_input(opts.input));
  std::vector<deduct::LogicalExample> examples;
  std::string line;
  int lineno = 0, skipped = 0, bad = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      examples.push_back(
          deduct::ingest(line, *format, lookup, provider ? &*provider : nullptr));
    } catch (const deduct::SkipRecord& e) {
      ++skipped;
      std::cerr << "skip line " << lineno << ": " << e.what() << '\n';
    } catch (const deduct::IngestError& e) {
      ++bad;
      std::cerr << "bad record at line " << lineno << ": " << e.what() << '\n';
    }
  }
  if (skipped || bad)
    std::cerr << "ingested " << examples.size() << " records, skipped " << skipped
              << " without SL, " << bad << " malformed\n";
  if (auto a = assumption_override(opts))
    for (deduct::LogicalExample& ex : examples) ex.assumption = *a;
  return examples;
}

int run_compile_dataset(const CommonOptions& opts) {
  std::vector<deduct::LogicalExample> examples = ingest_corpus(opts);

  deduct::CompileOptions compile_options;
  compile_options.render = render_options(opts);
  compile_options.limits = limits_of(opts);
  compile_options.filter_answer_mismatch = !opts.no_answer_filter;
  compile_options.diagnostics = &std::cerr;

  OutputTarget out(opts.out_path);
  deduct::CompileStats stats =
      deduct::compile_corpus(examples, compile_options, out.stream(), opts.workers);
  (out.is_file() ? std::cout : std::cerr) << stats.to_json() << '\n';
  return kExitOk;
}

int run_reformat(const CommonOptions& opts) {
  std::istringstream lines(read_input(opts.input));
  std::vector<deduct::LogicalExample> examples = deduct::load_examples_jsonl(lines);
  OutputTarget out(opts.out_path);
  for (size_t i = 0; i < examples.size(); ++i) {
    deduct::ReformatResult result =
        deduct::reformat_rules(examples[i], opts.seed + i);
    for (const std::string& warning : result.warnings)
      std::cerr << "note: " << examples[i].id << ": " << warning << '\n';
    out.stream() << deduct::example_to_json(result.example) << '\n';
  }
  return kExitOk;
}

int run_eval(const CommonOptions& opts) {
  std::vector<deduct::LogicalExample> examples = ingest_corpus(opts);
  deduct::MetricsReport report =
      deduct::evaluate_corpus(examples, limits_of(opts), opts.seed, opts.workers);
  std::cout << report.to_json() << '\n';
  std::cerr << report.to_table();
  return kExitOk;
}

struct GenOptions {
  int count = 10;
  int entities = 6;
  int predicates = 8;
  int rules = 6;
  int max_premises = 2;
  int depth = 3;
  double neg_prob = 0.15;
};

int run_gen(const CommonOptions& opts, const GenOptions& gen) {
  deduct::PuzzleParams params;
  params.entity_count = gen.entities;
  params.predicate_count = gen.predicates;
  params.rule_count = gen.rules;
  params.max_premises = gen.max_premises;
  params.target_hop_depth = gen.depth;
  params.negation_probability = gen.neg_prob;
  params.seed = opts.seed;
  if (auto a = assumption_override(opts)) params.assumption = *a;

  std::vector<deduct::LogicalExample> examples =
      deduct::generate_corpus(params, gen.count, opts.workers);
  OutputTarget out(opts.out_path);
  deduct::save_examples_jsonl(examples, out.stream());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deduct - forward-chaining deduction with readable solver traces"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a TOML/INI config file");
  app.allow_config_extras(CLI::config_extras_mode::error);  // unknown keys are rejected

  CommonOptions opts;
  GenOptions gen;

  auto add_input = [&](CLI::App* sub) {
    sub->add_option("input", opts.input, "Input file ('-' for stdin)")->required();
  };
  auto add_limits = [&](CLI::App* sub) {
    sub->add_option("--limit-passes", opts.limit_passes, "Max saturation passes");
    sub->add_option("--limit-derived", opts.limit_derived, "Max derived facts");
  };
  auto add_render_flags = [&](CLI::App* sub) {
    sub->add_flag("--no-unbind", opts.no_unbind, "Drop Unbind lines");
    sub->add_flag("--no-fail-backtrack", opts.no_fail_backtrack,
                  "Drop Fail & backtrack lines");
    sub->add_flag("--nl", opts.nl, "Render facts in natural language");
  };
  auto add_assumption = [&](CLI::App* sub) {
    sub->add_option("--assumption", opts.assumption, "owa|cwa")
        ->check(CLI::IsMember({"owa", "cwa"}));
  };
  auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", opts.out_path, "Output path (default stdout)");
  };
  auto add_workers = [&](CLI::App* sub) {
    sub->add_option("--workers", opts.workers, "Worker threads")
        ->check(CLI::PositiveNumber);
  };
  auto add_seed = [&](CLI::App* sub) {
    sub->add_option("--seed", opts.seed, "Deterministic seed");
  };
  auto add_corpus_input = [&](CLI::App* sub) {
    add_input(sub);
    sub->add_option("--format", opts.format, "proofwriter|prontoqa|native")
        ->check(CLI::IsMember({"proofwriter", "prontoqa", "native"}));
    sub->add_option("--sl-lookup", opts.sl_lookup_path,
                    "JSONL of {id, sl_text} with pre-parsed programs");
    sub->add_option("--sl-command", opts.sl_command,
                    "Formulator command: NL on stdin, SL on stdout, nonzero exit = failure");
  };

  CLI::App* parse_cmd = app.add_subcommand("parse", "Validate a program; print the report as JSON");
  add_input(parse_cmd);

  CLI::App* solve_cmd = app.add_subcommand("solve", "Answer a program's query; print answer and closure as JSON");
  add_input(solve_cmd);
  add_assumption(solve_cmd);
  add_limits(solve_cmd);

  CLI::App* trace_cmd = app.add_subcommand("trace", "Print the rendered reasoning text for a program");
  add_input(trace_cmd);
  add_render_flags(trace_cmd);
  add_limits(trace_cmd);

  CLI::App* compile_cmd = app.add_subcommand("compile-dataset", "Compile a corpus into 4-turn conversations (JSONL)");
  add_corpus_input(compile_cmd);
  add_assumption(compile_cmd);
  add_render_flags(compile_cmd);
  add_limits(compile_cmd);
  add_out(compile_cmd);
  add_workers(compile_cmd);
  add_seed(compile_cmd);
  compile_cmd->add_flag("--no-answer-filter", opts.no_answer_filter,
                        "Keep conversations whose solver answer disagrees with gold");

  CLI::App* reformat_cmd = app.add_subcommand("reformat", "Rewrite rule glosses into the four rule genres");
  add_input(reformat_cmd);
  add_seed(reformat_cmd);
  add_out(reformat_cmd);

  CLI::App* eval_cmd = app.add_subcommand("eval", "Score the solver against gold labels; print metrics");
  add_corpus_input(eval_cmd);
  add_assumption(eval_cmd);
  add_limits(eval_cmd);
  add_seed(eval_cmd);
  add_workers(eval_cmd);

  CLI::App* gen_cmd = app.add_subcommand("gen", "Generate synthetic puzzles as native JSONL");
  gen_cmd->add_option("--count", gen.count, "Number of puzzles")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--entities", gen.entities, "Max entities per puzzle");
  gen_cmd->add_option("--predicates", gen.predicates, "Predicates per puzzle");
  gen_cmd->add_option("--rules", gen.rules, "Max rules per puzzle");
  gen_cmd->add_option("--max-premises", gen.max_premises, "Max premises per rule");
  gen_cmd->add_option("--depth", gen.depth, "Max hop depth of the query derivation");
  gen_cmd->add_option("--neg-prob", gen.neg_prob, "Probability of negated literals");
  add_assumption(gen_cmd);
  add_seed(gen_cmd);
  add_workers(gen_cmd);
  add_out(gen_cmd);

  // Options unknown to a subcommand (notably --config) resolve at the app.
  for (CLI::App* sub : {parse_cmd, solve_cmd, trace_cmd, compile_cmd, reformat_cmd,
                        eval_cmd, gen_cmd})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (app.got_subcommand(parse_cmd)) return run_parse(opts);
    if (app.got_subcommand(solve_cmd)) return run_solve(opts);
    if (app.got_subcommand(trace_cmd)) return run_trace(opts);
    if (app.got_subcommand(compile_cmd)) return run_compile_dataset(opts);
    if (app.got_subcommand(reformat_cmd)) return run_reformat(opts);
    if (app.got_subcommand(eval_cmd)) return run_eval(opts);
    if (app.got_subcommand(gen_cmd)) return run_gen(opts, gen);
  } catch (const deduct::SaturationLimitError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitLimitError;
  } catch (const deduct::GroundingLimitError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitLimitError;
  } catch (const deduct::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitOk;
}
