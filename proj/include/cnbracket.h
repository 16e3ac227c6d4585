/* cnbracket — compound-noun segmentation and bracketing driven by
 * category-collocation statistics and a hierarchical thesaurus.
 *
 * C89-compatible interface over the C++ core. All functions that can fail
 * return cnb_status; cnb_last_error() gives a thread-local message for the
 * most recent failure on the calling thread. Handles are opaque and must be
 * released with their matching *_free function. Strings returned through
 * char** out-parameters are heap-allocated and must be released with
 * cnb_string_free. Pointers returned as const char* from accessor functions
 * stay owned by the handle and are valid until the next accessor call on
 * the same handle or the handle is freed.
 *
 * Thesaurus and model handles are immutable once created and safe to share
 * across threads. Analysis and evaluation result handles are not; confine
 * each to one thread.
 */

#ifndef CNBRACKET_H
#define CNBRACKET_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cnb_status {
  CNB_OK = 0,
  CNB_ERR_USAGE = 1,      /* invalid argument or option value */
  CNB_ERR_NOT_FOUND = 2,  /* file does not exist or cannot be opened */
  CNB_ERR_IO = 3,         /* read or write failure */
  CNB_ERR_PARSE = 4,      /* malformed text record */
  CNB_ERR_FORMAT = 5,     /* model file is not in the expected format */
  CNB_ERR_VERSION = 6,    /* model file version mismatch */
  CNB_ERR_TRUNCATED = 7,  /* model file shorter than declared */
  CNB_ERR_CHECKSUM = 8,   /* model file checksum mismatch */
  CNB_ERR_EMPTY = 9,      /* empty or degenerate input data */
  CNB_ERR_LIMIT = 10,     /* input exceeds a configured resource cap */
  CNB_ERR_ABSENT_WORD = 11,
  CNB_ERR_INTERNAL = 12
} cnb_status;

typedef enum cnb_measure {
  CNB_MEASURE_CV1 = 0, /* relative pair frequency P(cat1, cat2) */
  CNB_MEASURE_CV2 = 1  /* P(cat1,cat2) / (P(cat1,*) * P(*,cat2)) */
} cnb_measure;

/* Bracket rendering styles for analysis candidates. */
typedef enum cnb_bracket_style {
  CNB_BRACKET_CATEGORIES = 0, /* [[118,311],137] */
  CNB_BRACKET_WORDS = 1,      /* [[AB,CD],EF] */
  CNB_BRACKET_BOTH = 2        /* [[AB/118,CD/311],EF/137] */
} cnb_bracket_style;

typedef struct cnb_thesaurus cnb_thesaurus;
typedef struct cnb_model cnb_model;
typedef struct cnb_segmentations cnb_segmentations;
typedef struct cnb_analysis cnb_analysis;
typedef struct cnb_eval cnb_eval;

typedef struct cnb_options {
  int measure;           /* cnb_measure, default CNB_MEASURE_CV1 */
  int distance_weighted; /* multiply each cv factor by q(d), default 0 */
  double q_coefficient;  /* default 0.54 */
  double q_exponent;     /* default 1.896; q(d) = coeff * d^-exponent */
  int prune;             /* min-content-words pruning, default 1 */
  size_t length_cap;     /* max input length in characters, default 16 */
  int word_cap;          /* max words per segmentation, default 10 */
  size_t candidate_cap;  /* max candidates per input, default 100000 */
} cnb_options;

/* Fills every field with its default. */
void cnb_options_init(cnb_options* opts);

const char* cnb_version(void);
const char* cnb_status_name(cnb_status status);
const char* cnb_last_error(void);
void cnb_string_free(char* s);

/* ---- thesaurus ------------------------------------------------------- */

/* Loads a word<TAB>category-code TSV, truncating codes to `level` digits. */
cnb_status cnb_thesaurus_load(const char* path, int level,
                              cnb_thesaurus** out);
void cnb_thesaurus_free(cnb_thesaurus* t);
cnb_status cnb_thesaurus_save(const cnb_thesaurus* t, const char* path);
int cnb_thesaurus_level(const cnb_thesaurus* t);
size_t cnb_thesaurus_word_count(const cnb_thesaurus* t);
/* Categories joined with ':' in file order, e.g. "118:141:111". */
cnb_status cnb_thesaurus_categories(const cnb_thesaurus* t, const char* word,
                                    char** out);
/* *out = 1 when the word has two or more categories. Absent word fails. */
cnb_status cnb_thesaurus_is_ambiguous(const cnb_thesaurus* t,
                                      const char* word, int* out);

/* ---- collocation model ----------------------------------------------- */

typedef struct cnb_ingest_report {
  uint64_t total_records;
  uint64_t malformed;
  uint64_t duplicates;
  uint64_t discarded_not_in_thesaurus;
  uint64_t discarded_ambiguous;
  uint64_t unique_word_pairs;
  uint64_t category_pair_tokens;
} cnb_ingest_report;

/* Ingests a corpus of four-character words (one per line) and builds the
 * category-collocation model. `report` and `issues` may be NULL; when
 * `issues` is given it receives a newline-joined list of skipped records.
 * The report is filled even when the build fails with CNB_ERR_EMPTY. */
cnb_status cnb_model_build(const char* corpus_path, const cnb_thesaurus* t,
                           cnb_ingest_report* report, char** issues,
                           cnb_model** out);
cnb_status cnb_model_load(const char* path, cnb_model** out);
cnb_status cnb_model_save(const cnb_model* m, const char* path);
void cnb_model_free(cnb_model* m);
int cnb_model_level(const cnb_model* m);
uint64_t cnb_model_total(const cnb_model* m);
size_t cnb_model_pair_kinds(const cnb_model* m);
double cnb_model_prob(const cnb_model* m, const char* cat1, const char* cat2);
double cnb_model_cv(const cnb_model* m, int measure, const char* cat1,
                    const char* cat2);
/* TSV listing "cat1<TAB>cat2<TAB>count", sorted. */
cnb_status cnb_model_dump_tsv(const cnb_model* m, char** out);

/* ---- segmentation ----------------------------------------------------- */

/* Dictionary-consistent segmentations of `input`; with prune != 0 only
 * those with the minimum word count survive. Zero results is a data
 * condition, not an error. */
cnb_status cnb_segment(const cnb_thesaurus* t, const char* input, int prune,
                       size_t length_cap, cnb_segmentations** out);
void cnb_segmentations_free(cnb_segmentations* s);
size_t cnb_segmentations_count(const cnb_segmentations* s);
/* Slash-joined word sequence, e.g. "AB/CD/EF". */
const char* cnb_segmentations_get(const cnb_segmentations* s, size_t index);

/* ---- structure analysis ----------------------------------------------- */

/* Scores every (segmentation, category assignment, binary tree) candidate
 * and ranks them by descending preference. An input that cannot be
 * segmented yields a handle with zero candidates. */
cnb_status cnb_analyze(const cnb_thesaurus* t, const cnb_model* m,
                       const char* input, const cnb_options* opts,
                       cnb_analysis** out);
void cnb_analysis_free(cnb_analysis* a);
size_t cnb_analysis_count(const cnb_analysis* a);
int cnb_analysis_unparsable(const cnb_analysis* a);
size_t cnb_analysis_segmentations_total(const cnb_analysis* a);
size_t cnb_analysis_segmentations_surviving(const cnb_analysis* a);
/* 1-based rank group; candidates with equal scores share a group. */
int cnb_analysis_rank(const cnb_analysis* a, size_t index);
double cnb_analysis_score(const cnb_analysis* a, size_t index);
const char* cnb_analysis_segmentation(const cnb_analysis* a, size_t index);
const char* cnb_analysis_bracket(const cnb_analysis* a, size_t index,
                                 int style);

/* ---- evaluation -------------------------------------------------------- */

/* Rank buckets in table order. */
typedef enum cnb_eval_bucket {
  CNB_BUCKET_RANK1_NO_TIE = 0,
  CNB_BUCKET_LE1 = 1,
  CNB_BUCKET_LE2 = 2,
  CNB_BUCKET_LE3 = 3,
  CNB_BUCKET_GE4 = 4,
  CNB_BUCKET_INF = 5
} cnb_eval_bucket;

/* Evaluates a gold file of "surface<TAB>[[w1,w2],w3]" records under one or
 * more option variants (one table column each). */
cnb_status cnb_evaluate(const char* gold_path, const cnb_thesaurus* t,
                        const cnb_model* m, const cnb_options* variants,
                        size_t variant_count, cnb_eval** out);
void cnb_eval_free(cnb_eval* e);
size_t cnb_eval_columns(const cnb_eval* e);
const char* cnb_eval_column_label(const cnb_eval* e, size_t column);
uint64_t cnb_eval_count(const cnb_eval* e, size_t column, int bucket);
uint64_t cnb_eval_total(const cnb_eval* e, size_t column);
size_t cnb_eval_issue_count(const cnb_eval* e);
const char* cnb_eval_issue(const cnb_eval* e, size_t index);
const char* cnb_eval_render(const cnb_eval* e);
const char* cnb_eval_render_tsv(const cnb_eval* e);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* CNBRACKET_H */
