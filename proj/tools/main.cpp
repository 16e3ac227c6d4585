// Command-line front end over the cnbracket shared library. Talks to the
// core exclusively through the C API so it doubles as a consumer test of
// that surface.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cnbracket.h"

namespace {

// 0 success, 1 usage, 2 missing/unreadable input, 3 empty or degenerate
// data, 4 internal invariant breach.
int exit_code_of(cnb_status s) {
  switch (s) {
    case CNB_OK: return 0;
    case CNB_ERR_USAGE: return 1;
    case CNB_ERR_NOT_FOUND:
    case CNB_ERR_IO:
    case CNB_ERR_PARSE:
    case CNB_ERR_FORMAT:
    case CNB_ERR_VERSION:
    case CNB_ERR_TRUNCATED:
    case CNB_ERR_CHECKSUM: return 2;
    case CNB_ERR_EMPTY:
    case CNB_ERR_LIMIT:
    case CNB_ERR_ABSENT_WORD: return 3;
    default: return 4;
  }
}

[[noreturn]] void die(cnb_status s) {
  std::cerr << "cnbracket: " << cnb_status_name(s) << ": " << cnb_last_error()
            << "\n";
  std::exit(exit_code_of(s));
}

void check(cnb_status s) {
  if (s != CNB_OK) die(s);
}

using ThesaurusPtr = std::unique_ptr<cnb_thesaurus, void (*)(cnb_thesaurus*)>;
using ModelPtr = std::unique_ptr<cnb_model, void (*)(cnb_model*)>;

ThesaurusPtr load_thesaurus(const std::string& path, int level) {
  cnb_thesaurus* t = nullptr;
  check(cnb_thesaurus_load(path.c_str(), level, &t));
  return ThesaurusPtr(t, cnb_thesaurus_free);
}

ModelPtr load_model(const std::string& path) {
  cnb_model* m = nullptr;
  check(cnb_model_load(path.c_str(), &m));
  return ModelPtr(m, cnb_model_free);
}

std::string format_score(double score) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", score);
  return buf;
}

// Positional words if given, otherwise one input per standard-input line.
// Batch mode (headers between blocks) when inputs come from stdin or more
// than one argument is present.
std::vector<std::string> gather_inputs(const std::vector<std::string>& args,
                                       bool* batch) {
  if (!args.empty()) {
    *batch = args.size() > 1;
    return args;
  }
  *batch = true;
  std::vector<std::string> inputs;
  std::string line;
  while (std::getline(std::cin, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) inputs.push_back(line);
  }
  return inputs;
}

struct MeasureSpec {
  int measure = CNB_MEASURE_CV1;
  bool weighted = false;
};

// Accepts cv1, cv2, cv1q, cv2q; a trailing q turns on distance weighting
// for that column only.
MeasureSpec parse_measure(const std::string& token) {
  MeasureSpec spec;
  std::string name = token;
  if (name.size() > 2 && name.back() == 'q') {
    spec.weighted = true;
    name.pop_back();
  }
  if (name == "cv1") {
    spec.measure = CNB_MEASURE_CV1;
  } else if (name == "cv2") {
    spec.measure = CNB_MEASURE_CV2;
  } else {
    std::cerr << "cnbracket: usage: unknown measure \"" << token
              << "\" (expected cv1, cv2, cv1q, or cv2q)\n";
    std::exit(1);
  }
  return spec;
}

std::vector<std::string> split_commas(const std::string& list) {
  std::vector<std::string> out;
  std::string token;
  for (char c : list) {
    if (c == ',') {
      if (!token.empty()) out.push_back(token);
      token.clear();
    } else {
      token += c;
    }
  }
  if (!token.empty()) out.push_back(token);
  return out;
}

struct CommonFlags {
  std::string thesaurus_path;
  int level = 3;
  double q_coefficient = 0.54;
  double q_exponent = 1.896;
  std::size_t length_cap = 16;
};

void add_common(CLI::App* cmd, CommonFlags* flags) {
  cmd->add_option("-t,--thesaurus", flags->thesaurus_path,
                  "thesaurus TSV (word<TAB>category-code)")
      ->required();
  cmd->add_option("-l,--level", flags->level,
                  "category level, digits kept from each code")
      ->check(CLI::Range(1, 6))
      ->capture_default_str();
  cmd->add_option("--q-coeff", flags->q_coefficient,
                  "distance decay coefficient")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--q-exp", flags->q_exponent, "distance decay exponent")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--length-cap", flags->length_cap,
                  "maximum input length in characters")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

int run_build_model(const CommonFlags& common, const std::string& corpus,
                    const std::string& output) {
  auto thesaurus = load_thesaurus(common.thesaurus_path, common.level);

  cnb_ingest_report report{};
  char* issues = nullptr;
  cnb_model* raw = nullptr;
  cnb_status status =
      cnb_model_build(corpus.c_str(), thesaurus.get(), &report, &issues, &raw);
  ModelPtr model(raw, cnb_model_free);

  if (issues) {
    std::cerr << issues;
    cnb_string_free(issues);
  }
  if (status == CNB_OK || status == CNB_ERR_EMPTY) {
    std::printf("records           %llu\n",
                (unsigned long long)report.total_records);
    std::printf("malformed         %llu\n",
                (unsigned long long)report.malformed);
    std::printf("duplicates        %llu\n",
                (unsigned long long)report.duplicates);
    std::printf("not-in-thesaurus  %llu\n",
                (unsigned long long)report.discarded_not_in_thesaurus);
    std::printf("ambiguous         %llu\n",
                (unsigned long long)report.discarded_ambiguous);
    std::printf("unique-pairs      %llu\n",
                (unsigned long long)report.unique_word_pairs);
    std::printf("pair-tokens       %llu\n",
                (unsigned long long)report.category_pair_tokens);
  }
  if (status != CNB_OK) die(status);

  check(cnb_model_save(model.get(), output.c_str()));
  std::printf("model             %s (level %d, %llu tokens, %zu pair kinds)\n",
              output.c_str(), cnb_model_level(model.get()),
              (unsigned long long)cnb_model_total(model.get()),
              cnb_model_pair_kinds(model.get()));
  return 0;
}

int run_dump_model(const std::string& model_path) {
  auto model = load_model(model_path);
  std::printf("# level %d, %llu tokens, %zu pair kinds\n",
              cnb_model_level(model.get()),
              (unsigned long long)cnb_model_total(model.get()),
              cnb_model_pair_kinds(model.get()));
  char* tsv = nullptr;
  check(cnb_model_dump_tsv(model.get(), &tsv));
  std::fputs(tsv, stdout);
  cnb_string_free(tsv);
  return 0;
}

int run_segment(const CommonFlags& common, const std::vector<std::string>& args,
                bool prune) {
  auto thesaurus = load_thesaurus(common.thesaurus_path, common.level);
  bool batch = false;
  auto inputs = gather_inputs(args, &batch);

  int worst = 0;
  for (const auto& input : inputs) {
    if (batch) std::printf("# %s\n", input.c_str());
    cnb_segmentations* raw = nullptr;
    cnb_status status = cnb_segment(thesaurus.get(), input.c_str(),
                                    prune ? 1 : 0, common.length_cap, &raw);
    if (status != CNB_OK) {
      std::cerr << "cnbracket: " << cnb_status_name(status) << ": "
                << cnb_last_error() << "\n";
      worst = std::max(worst, exit_code_of(status));
      continue;
    }
    std::unique_ptr<cnb_segmentations, void (*)(cnb_segmentations*)> segs(
        raw, cnb_segmentations_free);
    for (size_t i = 0; i < cnb_segmentations_count(segs.get()); ++i)
      std::printf("%s\n", cnb_segmentations_get(segs.get(), i));
  }
  return worst;
}

int run_analyze(const CommonFlags& common, const std::string& model_path,
                const std::vector<std::string>& args, const cnb_options& opts,
                std::size_t top_k, bool with_words, bool per_segmentation) {
  auto thesaurus = load_thesaurus(common.thesaurus_path, common.level);
  auto model = load_model(model_path);
  bool batch = false;
  auto inputs = gather_inputs(args, &batch);

  int style = with_words ? CNB_BRACKET_BOTH : CNB_BRACKET_CATEGORIES;
  int worst = 0;
  for (const auto& input : inputs) {
    if (batch) std::printf("# %s\n", input.c_str());
    cnb_analysis* raw = nullptr;
    cnb_status status =
        cnb_analyze(thesaurus.get(), model.get(), input.c_str(), &opts, &raw);
    if (status != CNB_OK) {
      std::cerr << "cnbracket: " << cnb_status_name(status) << ": "
                << cnb_last_error() << "\n";
      worst = std::max(worst, exit_code_of(status));
      continue;
    }
    std::unique_ptr<cnb_analysis, void (*)(cnb_analysis*)> analysis(
        raw, cnb_analysis_free);

    size_t count = cnb_analysis_count(analysis.get());
    if (count == 0) {
      std::printf("inf\n");
      continue;
    }
    size_t shown = top_k == 0 ? count : std::min(top_k, count);
    for (size_t i = 0; i < shown; ++i) {
      std::string seg = cnb_analysis_segmentation(analysis.get(), i);
      std::string bracket = cnb_analysis_bracket(analysis.get(), i, style);
      std::printf("%d\t%s\t%s\t%s\n", cnb_analysis_rank(analysis.get(), i),
                  format_score(cnb_analysis_score(analysis.get(), i)).c_str(),
                  seg.c_str(), bracket.c_str());
    }
    if (per_segmentation) {
      // Order of first appearance in the ranked list; best rank per
      // segmentation is the rank of that first appearance.
      std::vector<std::string> order;
      std::map<std::string, std::pair<size_t, int>> stats;
      for (size_t i = 0; i < count; ++i) {
        std::string seg = cnb_analysis_segmentation(analysis.get(), i);
        auto [it, fresh] = stats.emplace(
            seg, std::make_pair(size_t{0}, cnb_analysis_rank(analysis.get(), i)));
        if (fresh) order.push_back(seg);
        it->second.first++;
      }
      for (const auto& seg : order)
        std::printf("# seg\t%s\tcandidates=%zu\tbest-rank=%d\n", seg.c_str(),
                    stats[seg].first, stats[seg].second);
    }
  }
  return worst;
}

int run_evaluate(const CommonFlags& common, const std::string& model_path,
                 const std::string& gold_path, const std::string& measures,
                 bool distance_weighted, bool prune, bool tsv) {
  auto thesaurus = load_thesaurus(common.thesaurus_path, common.level);
  auto model = load_model(model_path);

  auto tokens = split_commas(measures);
  if (tokens.empty()) {
    std::cerr << "cnbracket: usage: --measure lists no measure\n";
    return 1;
  }
  std::vector<cnb_options> variants;
  for (const auto& token : tokens) {
    MeasureSpec spec = parse_measure(token);
    cnb_options opts;
    cnb_options_init(&opts);
    opts.measure = spec.measure;
    opts.distance_weighted = (spec.weighted || distance_weighted) ? 1 : 0;
    opts.q_coefficient = common.q_coefficient;
    opts.q_exponent = common.q_exponent;
    opts.prune = prune ? 1 : 0;
    opts.length_cap = common.length_cap;
    variants.push_back(opts);
  }

  cnb_eval* raw = nullptr;
  check(cnb_evaluate(gold_path.c_str(), thesaurus.get(), model.get(),
                     variants.data(), variants.size(), &raw));
  std::unique_ptr<cnb_eval, void (*)(cnb_eval*)> eval(raw, cnb_eval_free);

  for (size_t i = 0; i < cnb_eval_issue_count(eval.get()); ++i)
    std::cerr << "cnbracket: skipped record: " << cnb_eval_issue(eval.get(), i)
              << "\n";
  std::fputs(tsv ? cnb_eval_render_tsv(eval.get())
                 : cnb_eval_render(eval.get()),
             stdout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compound-noun segmentation and bracketing via "
               "category-collocation statistics"};
  app.set_version_flag("--version", cnb_version());
  app.require_subcommand(1);

  CommonFlags common;

  auto* build = app.add_subcommand(
      "build-model", "Count category collocations from a corpus of "
                     "four-character words");
  std::string corpus_path, model_out;
  add_common(build, &common);
  build->add_option("corpus", corpus_path, "corpus file, one word per line")
      ->required();
  build->add_option("-o,--output", model_out, "model file to write")
      ->required();

  auto* dump = app.add_subcommand("dump-model",
                                  "List a model's pair counts as TSV");
  std::string dump_model_path;
  dump->add_option("-m,--model", dump_model_path, "model file")->required();

  auto* segment = app.add_subcommand(
      "segment", "Enumerate dictionary-consistent segmentations");
  std::vector<std::string> segment_inputs;
  bool segment_prune = false;
  add_common(segment, &common);
  segment->add_flag("--prune", segment_prune,
                    "keep only minimum-word-count segmentations");
  segment->add_option("input", segment_inputs,
                      "words to segment (standard input when absent)");

  auto* analyze = app.add_subcommand(
      "analyze", "Rank bracketed structures by collocation preference");
  std::vector<std::string> analyze_inputs;
  std::string analyze_model, analyze_measure = "cv1";
  bool analyze_weighted = false, analyze_no_prune = false;
  bool analyze_words = false, analyze_per_seg = false;
  std::size_t top_k = 0;
  int word_cap = 10;
  std::size_t candidate_cap = 100000;
  add_common(analyze, &common);
  analyze->add_option("-m,--model", analyze_model, "model file")->required();
  analyze->add_option("--measure", analyze_measure, "cv1 or cv2")
      ->capture_default_str();
  analyze->add_flag("--distance-weighted", analyze_weighted,
                    "multiply each collocation factor by the distance decay");
  analyze->add_flag("--no-prune", analyze_no_prune,
                    "analyze every segmentation, not just minimum-word ones");
  analyze->add_flag("--words", analyze_words,
                    "brackets show words with category codes");
  analyze->add_flag("--per-segmentation", analyze_per_seg,
                    "append per-segmentation candidate summaries");
  analyze->add_option("--top-k", top_k, "print only the best K candidates")
      ->check(CLI::PositiveNumber);
  analyze->add_option("--word-cap", word_cap,
                      "maximum words per segmentation")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  analyze->add_option("--candidate-cap", candidate_cap,
                      "maximum candidates per input")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  analyze->add_option("input", analyze_inputs,
                      "words to analyze (standard input when absent)");

  auto* evaluate = app.add_subcommand(
      "evaluate", "Score ranked analyses against gold bracketings");
  std::string eval_model, eval_gold, eval_measures = "cv1";
  bool eval_weighted = false, eval_no_prune = false, eval_tsv = false;
  add_common(evaluate, &common);
  evaluate->add_option("-m,--model", eval_model, "model file")->required();
  evaluate->add_option("gold", eval_gold,
                       "gold TSV (surface<TAB>bracketed segmentation)")
      ->required();
  evaluate
      ->add_option("--measure", eval_measures,
                   "comma-separated list from cv1, cv2, cv1q, cv2q")
      ->capture_default_str();
  evaluate->add_flag("--distance-weighted", eval_weighted,
                     "apply the distance decay to every listed measure");
  evaluate->add_flag("--no-prune", eval_no_prune,
                     "analyze every segmentation, not just minimum-word ones");
  evaluate->add_flag("--tsv", eval_tsv, "machine-readable TSV instead of the "
                                        "aligned table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (build->parsed()) return run_build_model(common, corpus_path, model_out);
  if (dump->parsed()) return run_dump_model(dump_model_path);
  if (segment->parsed())
    return run_segment(common, segment_inputs, segment_prune);
  if (analyze->parsed()) {
    MeasureSpec spec = parse_measure(analyze_measure);
    cnb_options opts;
    cnb_options_init(&opts);
    opts.measure = spec.measure;
    opts.distance_weighted = (spec.weighted || analyze_weighted) ? 1 : 0;
    opts.q_coefficient = common.q_coefficient;
    opts.q_exponent = common.q_exponent;
    opts.prune = analyze_no_prune ? 0 : 1;
    opts.length_cap = common.length_cap;
    opts.word_cap = word_cap;
    opts.candidate_cap = candidate_cap;
    return run_analyze(common, analyze_model, analyze_inputs, opts, top_k,
                       analyze_words, analyze_per_seg);
  }
  if (evaluate->parsed())
    return run_evaluate(common, eval_model, eval_gold, eval_measures,
                        eval_weighted, !eval_no_prune, eval_tsv);
  return 1;
}
