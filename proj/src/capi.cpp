#include "cnbracket.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <sstream>
#include <string>
#include <vector>

#include "analyzer.hpp"
#include "error.hpp"
#include "evaluator.hpp"
#include "ingest.hpp"
#include "model.hpp"
#include "segmenter.hpp"
#include "thesaurus.hpp"

namespace {

thread_local std::string g_last_error;

cnb_status status_of(cnb::ErrorCode code) {
  using cnb::ErrorCode;
  switch (code) {
    case ErrorCode::usage: return CNB_ERR_USAGE;
    case ErrorCode::not_found: return CNB_ERR_NOT_FOUND;
    case ErrorCode::io: return CNB_ERR_IO;
    case ErrorCode::parse: return CNB_ERR_PARSE;
    case ErrorCode::format: return CNB_ERR_FORMAT;
    case ErrorCode::version_mismatch: return CNB_ERR_VERSION;
    case ErrorCode::truncated: return CNB_ERR_TRUNCATED;
    case ErrorCode::checksum: return CNB_ERR_CHECKSUM;
    case ErrorCode::empty: return CNB_ERR_EMPTY;
    case ErrorCode::limit: return CNB_ERR_LIMIT;
    case ErrorCode::absent_word: return CNB_ERR_ABSENT_WORD;
    case ErrorCode::internal: return CNB_ERR_INTERNAL;
  }
  return CNB_ERR_INTERNAL;
}

template <typename Fn>
cnb_status guarded(Fn&& fn) {
  try {
    fn();
    return CNB_OK;
  } catch (const cnb::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CNB_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return CNB_ERR_INTERNAL;
  }
}

cnb_status invalid_argument(const char* what) {
  g_last_error = std::string("null argument: ") + what;
  return CNB_ERR_USAGE;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

cnb::AnalyzerOptions to_core(const cnb_options& opts) {
  cnb::AnalyzerOptions core;
  core.measure =
      opts.measure == CNB_MEASURE_CV2 ? cnb::Measure::cv2 : cnb::Measure::cv1;
  core.distance_weighted = opts.distance_weighted != 0;
  core.q_coefficient = opts.q_coefficient;
  core.q_exponent = opts.q_exponent;
  core.prune = opts.prune != 0;
  core.length_cap = opts.length_cap;
  core.word_cap = opts.word_cap;
  core.candidate_cap = opts.candidate_cap;
  return core;
}

void check_options(const cnb_options& opts) {
  if (opts.measure != CNB_MEASURE_CV1 && opts.measure != CNB_MEASURE_CV2)
    cnb::fail(cnb::ErrorCode::usage, "invalid measure");
  if (opts.q_coefficient <= 0.0)
    cnb::fail(cnb::ErrorCode::usage, "q coefficient must be positive");
  if (opts.q_exponent <= 0.0)
    cnb::fail(cnb::ErrorCode::usage, "q exponent must be positive");
  if (opts.word_cap < 1)
    cnb::fail(cnb::ErrorCode::usage, "word cap must be >= 1");
  if (opts.length_cap < 1)
    cnb::fail(cnb::ErrorCode::usage, "length cap must be >= 1");
}

}  // namespace

struct cnb_thesaurus {
  cnb::Thesaurus core;
};

struct cnb_model {
  cnb::CollocationModel core;
};

struct cnb_segmentations {
  std::vector<std::string> joined;
};

struct cnb_analysis {
  cnb::RankedAnalysis core;
  mutable std::string seg_scratch;
  mutable std::string bracket_scratch;
};

struct cnb_eval {
  cnb::EvalTable core;
  mutable std::string scratch;
  std::vector<std::string> issue_lines;
};

extern "C" {

void cnb_options_init(cnb_options* opts) {
  if (!opts) return;
  opts->measure = CNB_MEASURE_CV1;
  opts->distance_weighted = 0;
  opts->q_coefficient = cnb::kDefaultQCoefficient;
  opts->q_exponent = cnb::kDefaultQExponent;
  opts->prune = 1;
  opts->length_cap = cnb::kDefaultLengthCap;
  opts->word_cap = cnb::kDefaultWordCap;
  opts->candidate_cap = cnb::kDefaultCandidateCap;
}

const char* cnb_version(void) { return "cnbracket 1.0.0"; }

const char* cnb_status_name(cnb_status status) {
  switch (status) {
    case CNB_OK: return "ok";
    case CNB_ERR_USAGE: return "usage";
    case CNB_ERR_NOT_FOUND: return "not-found";
    case CNB_ERR_IO: return "io";
    case CNB_ERR_PARSE: return "parse";
    case CNB_ERR_FORMAT: return "format";
    case CNB_ERR_VERSION: return "version";
    case CNB_ERR_TRUNCATED: return "truncated";
    case CNB_ERR_CHECKSUM: return "checksum";
    case CNB_ERR_EMPTY: return "empty";
    case CNB_ERR_LIMIT: return "limit";
    case CNB_ERR_ABSENT_WORD: return "absent-word";
    case CNB_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* cnb_last_error(void) { return g_last_error.c_str(); }

void cnb_string_free(char* s) { std::free(s); }

/* ---- thesaurus ------------------------------------------------------- */

cnb_status cnb_thesaurus_load(const char* path, int level,
                              cnb_thesaurus** out) {
  if (!path || !out) return invalid_argument("path/out");
  *out = nullptr;
  return guarded([&] {
    auto handle = new cnb_thesaurus{cnb::Thesaurus::load(path, level)};
    *out = handle;
  });
}

void cnb_thesaurus_free(cnb_thesaurus* t) { delete t; }

cnb_status cnb_thesaurus_save(const cnb_thesaurus* t, const char* path) {
  if (!t || !path) return invalid_argument("thesaurus/path");
  return guarded([&] { t->core.save(path); });
}

int cnb_thesaurus_level(const cnb_thesaurus* t) {
  return t ? t->core.level() : 0;
}

size_t cnb_thesaurus_word_count(const cnb_thesaurus* t) {
  return t ? t->core.word_count() : 0;
}

cnb_status cnb_thesaurus_categories(const cnb_thesaurus* t, const char* word,
                                    char** out) {
  if (!t || !word || !out) return invalid_argument("thesaurus/word/out");
  *out = nullptr;
  return guarded([&] {
    const auto* cats = t->core.categories(word);
    if (!cats)
      cnb::fail(cnb::ErrorCode::absent_word,
                std::string("word not in thesaurus: ") + word);
    std::string joined;
    for (std::size_t i = 0; i < cats->size(); ++i) {
      if (i > 0) joined += ':';
      joined += (*cats)[i].code;
    }
    *out = dup_string(joined);
    if (!*out) cnb::fail(cnb::ErrorCode::internal, "out of memory");
  });
}

cnb_status cnb_thesaurus_is_ambiguous(const cnb_thesaurus* t,
                                      const char* word, int* out) {
  if (!t || !word || !out) return invalid_argument("thesaurus/word/out");
  return guarded([&] { *out = t->core.is_ambiguous(word) ? 1 : 0; });
}

/* ---- collocation model ----------------------------------------------- */

cnb_status cnb_model_build(const char* corpus_path, const cnb_thesaurus* t,
                           cnb_ingest_report* report, char** issues,
                           cnb_model** out) {
  if (!corpus_path || !t || !out) return invalid_argument("corpus/t/out");
  *out = nullptr;
  if (issues) *issues = nullptr;
  return guarded([&] {
    auto [pairs, rep] = cnb::ingest(corpus_path, t->core);
    if (report) {
      report->total_records = rep.total_records;
      report->malformed = rep.malformed;
      report->duplicates = rep.duplicates;
      report->discarded_not_in_thesaurus = rep.discarded_not_in_thesaurus;
      report->discarded_ambiguous = rep.discarded_ambiguous;
      report->unique_word_pairs = rep.unique_word_pairs;
      report->category_pair_tokens = rep.category_pair_tokens;
    }
    if (issues && !rep.issues.empty()) {
      std::ostringstream joined;
      for (const auto& issue : rep.issues)
        joined << corpus_path << ":" << issue.line << ": " << issue.reason
               << " (\"" << issue.text << "\")\n";
      *issues = dup_string(joined.str());
    }
    if (pairs.empty())
      cnb::fail(cnb::ErrorCode::empty,
                std::string(corpus_path) + ": corpus yielded no usable pairs");
    *out = new cnb_model{cnb::CollocationModel::build(pairs, t->core.level())};
  });
}

cnb_status cnb_model_load(const char* path, cnb_model** out) {
  if (!path || !out) return invalid_argument("path/out");
  *out = nullptr;
  return guarded(
      [&] { *out = new cnb_model{cnb::CollocationModel::load(path)}; });
}

cnb_status cnb_model_save(const cnb_model* m, const char* path) {
  if (!m || !path) return invalid_argument("model/path");
  return guarded([&] { m->core.save(path); });
}

void cnb_model_free(cnb_model* m) { delete m; }

int cnb_model_level(const cnb_model* m) { return m ? m->core.level() : 0; }

uint64_t cnb_model_total(const cnb_model* m) {
  return m ? m->core.total() : 0;
}

size_t cnb_model_pair_kinds(const cnb_model* m) {
  return m ? m->core.pair_kinds() : 0;
}

double cnb_model_prob(const cnb_model* m, const char* cat1,
                      const char* cat2) {
  if (!m || !cat1 || !cat2) return 0.0;
  return m->core.prob(cnb::CategoryId{cat1}, cnb::CategoryId{cat2});
}

double cnb_model_cv(const cnb_model* m, int measure, const char* cat1,
                    const char* cat2) {
  if (!m || !cat1 || !cat2) return 0.0;
  cnb::Measure mm =
      measure == CNB_MEASURE_CV2 ? cnb::Measure::cv2 : cnb::Measure::cv1;
  return m->core.cv(mm, cnb::CategoryId{cat1}, cnb::CategoryId{cat2});
}

cnb_status cnb_model_dump_tsv(const cnb_model* m, char** out) {
  if (!m || !out) return invalid_argument("model/out");
  *out = nullptr;
  return guarded([&] {
    std::ostringstream text;
    m->core.dump_tsv(text);
    *out = dup_string(text.str());
    if (!*out) cnb::fail(cnb::ErrorCode::internal, "out of memory");
  });
}

/* ---- segmentation ----------------------------------------------------- */

cnb_status cnb_segment(const cnb_thesaurus* t, const char* input, int prune,
                       size_t length_cap, cnb_segmentations** out) {
  if (!t || !input || !out) return invalid_argument("thesaurus/input/out");
  *out = nullptr;
  return guarded([&] {
    auto segs = cnb::enumerate_segmentations(input, t->core, length_cap);
    if (prune) segs = cnb::min_content_words(std::move(segs));
    auto handle = new cnb_segmentations{};
    handle->joined.reserve(segs.size());
    for (const auto& s : segs) handle->joined.push_back(s.joined());
    *out = handle;
  });
}

void cnb_segmentations_free(cnb_segmentations* s) { delete s; }

size_t cnb_segmentations_count(const cnb_segmentations* s) {
  return s ? s->joined.size() : 0;
}

const char* cnb_segmentations_get(const cnb_segmentations* s, size_t index) {
  if (!s || index >= s->joined.size()) return nullptr;
  return s->joined[index].c_str();
}

/* ---- structure analysis ----------------------------------------------- */

cnb_status cnb_analyze(const cnb_thesaurus* t, const cnb_model* m,
                       const char* input, const cnb_options* opts,
                       cnb_analysis** out) {
  if (!t || !m || !input || !out)
    return invalid_argument("thesaurus/model/input/out");
  *out = nullptr;
  return guarded([&] {
    cnb_options defaults;
    cnb_options_init(&defaults);
    const cnb_options& chosen = opts ? *opts : defaults;
    check_options(chosen);
    *out = new cnb_analysis{
        cnb::analyze(input, t->core, m->core, to_core(chosen)), {}, {}};
  });
}

void cnb_analysis_free(cnb_analysis* a) { delete a; }

size_t cnb_analysis_count(const cnb_analysis* a) {
  return a ? a->core.candidates.size() : 0;
}

int cnb_analysis_unparsable(const cnb_analysis* a) {
  return a && a->core.unparsable() ? 1 : 0;
}

size_t cnb_analysis_segmentations_total(const cnb_analysis* a) {
  return a ? a->core.segmentations_total : 0;
}

size_t cnb_analysis_segmentations_surviving(const cnb_analysis* a) {
  return a ? a->core.segmentations_surviving : 0;
}

int cnb_analysis_rank(const cnb_analysis* a, size_t index) {
  if (!a || index >= a->core.candidates.size()) return 0;
  return a->core.candidates[index].rank_group;
}

double cnb_analysis_score(const cnb_analysis* a, size_t index) {
  if (!a || index >= a->core.candidates.size()) return 0.0;
  return a->core.candidates[index].score;
}

const char* cnb_analysis_segmentation(const cnb_analysis* a, size_t index) {
  if (!a || index >= a->core.candidates.size()) return nullptr;
  a->seg_scratch = a->core.candidates[index].segmentation.joined();
  return a->seg_scratch.c_str();
}

const char* cnb_analysis_bracket(const cnb_analysis* a, size_t index,
                                 int style) {
  if (!a || index >= a->core.candidates.size()) return nullptr;
  const auto& cand = a->core.candidates[index];
  switch (style) {
    case CNB_BRACKET_WORDS: a->bracket_scratch = cand.bracket_words(); break;
    case CNB_BRACKET_BOTH:
      a->bracket_scratch = cand.bracket_words_categories();
      break;
    default: a->bracket_scratch = cand.bracket_categories(); break;
  }
  return a->bracket_scratch.c_str();
}

/* ---- evaluation -------------------------------------------------------- */

cnb_status cnb_evaluate(const char* gold_path, const cnb_thesaurus* t,
                        const cnb_model* m, const cnb_options* variants,
                        size_t variant_count, cnb_eval** out) {
  if (!gold_path || !t || !m || !variants || !out)
    return invalid_argument("gold/thesaurus/model/variants/out");
  if (variant_count == 0) {
    g_last_error = "evaluation needs at least one option variant";
    return CNB_ERR_USAGE;
  }
  *out = nullptr;
  return guarded([&] {
    std::vector<cnb::AnalyzerOptions> core_variants;
    core_variants.reserve(variant_count);
    for (size_t i = 0; i < variant_count; ++i) {
      check_options(variants[i]);
      core_variants.push_back(to_core(variants[i]));
    }
    auto handle = new cnb_eval{
        cnb::evaluate(gold_path, t->core, m->core, core_variants), {}, {}};
    for (const auto& issue : handle->core.issues) {
      std::ostringstream line;
      line << gold_path << ":" << issue.line << ": " << issue.reason;
      handle->issue_lines.push_back(line.str());
    }
    *out = handle;
  });
}

void cnb_eval_free(cnb_eval* e) { delete e; }

size_t cnb_eval_columns(const cnb_eval* e) {
  return e ? e->core.columns.size() : 0;
}

const char* cnb_eval_column_label(const cnb_eval* e, size_t column) {
  if (!e || column >= e->core.columns.size()) return nullptr;
  return e->core.columns[column].label.c_str();
}

uint64_t cnb_eval_count(const cnb_eval* e, size_t column, int bucket) {
  if (!e || column >= e->core.columns.size()) return 0;
  const auto& b = e->core.columns[column].buckets;
  switch (bucket) {
    case CNB_BUCKET_RANK1_NO_TIE: return b.rank1_no_tie;
    case CNB_BUCKET_LE1: return b.le1;
    case CNB_BUCKET_LE2: return b.le2;
    case CNB_BUCKET_LE3: return b.le3;
    case CNB_BUCKET_GE4: return b.ge4;
    case CNB_BUCKET_INF: return b.infinite;
    default: return 0;
  }
}

uint64_t cnb_eval_total(const cnb_eval* e, size_t column) {
  if (!e || column >= e->core.columns.size()) return 0;
  return e->core.columns[column].buckets.total;
}

size_t cnb_eval_issue_count(const cnb_eval* e) {
  return e ? e->issue_lines.size() : 0;
}

const char* cnb_eval_issue(const cnb_eval* e, size_t index) {
  if (!e || index >= e->issue_lines.size()) return nullptr;
  return e->issue_lines[index].c_str();
}

const char* cnb_eval_render(const cnb_eval* e) {
  if (!e) return nullptr;
  e->scratch = cnb::render_table(e->core);
  return e->scratch.c_str();
}

const char* cnb_eval_render_tsv(const cnb_eval* e) {
  if (!e) return nullptr;
  e->scratch = cnb::render_tsv(e->core);
  return e->scratch.c_str();
}

} /* extern "C" */
