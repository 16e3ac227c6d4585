#ifndef CNB_EVALUATOR_HPP
#define CNB_EVALUATOR_HPP

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "analyzer.hpp"

namespace cnb {

// One gold-standard line: the raw surface and its manually bracketed
// segmentation, e.g. "[[AB,CD],EF]". Leaf concatenation equals the surface.
struct GoldRecord {
  std::string surface;
  Segmentation segmentation;
  std::shared_ptr<const TreeNode> tree;
  std::string bracket;  // normalized word bracket text
};

GoldRecord parse_gold_record(std::string_view line, std::size_t line_no,
                             const std::string& name);

struct RankResult {
  bool infinite = false;
  int rank = 0;
  bool tie = false;
};

// Rank group of the best candidate matching the gold segmentation and tree
// shape; category labels are ignored. Infinite when nothing matches.
RankResult rank_of_gold(const RankedAnalysis& analysis,
                        const GoldRecord& gold);

struct BucketCounts {
  std::size_t total = 0;
  std::size_t rank1_no_tie = 0;
  std::size_t le1 = 0;
  std::size_t le2 = 0;
  std::size_t le3 = 0;
  std::size_t ge4 = 0;
  std::size_t infinite = 0;

  void add(const RankResult& r);
};

struct EvalColumn {
  std::string label;
  AnalyzerOptions options;
  BucketCounts buckets;
};

struct EvalTable {
  std::vector<EvalColumn> columns;
  std::vector<RecordIssue> issues;  // unreadable records, excluded from total
};

std::string measure_label(const AnalyzerOptions& opts);

// Runs every gold record through analyze() once per requested option set and
// accumulates the rank buckets of Table 2: no-tie rank 1, cumulative ~1 ~2
// ~3, 4~, and infinity for records whose gold structure never appears.
EvalTable evaluate(const std::string& gold_path, const Thesaurus& t,
                   const CollocationModel& m,
                   const std::vector<AnalyzerOptions>& variants);
EvalTable evaluate_stream(std::istream& in, const Thesaurus& t,
                          const CollocationModel& m,
                          const std::vector<AnalyzerOptions>& variants,
                          const std::string& name);

// Integer percentages, one decimal below 1% (the "0.1" convention).
std::string percent_string(std::size_t count, std::size_t total);

std::string render_table(const EvalTable& table);
std::string render_tsv(const EvalTable& table);

}  // namespace cnb

#endif
