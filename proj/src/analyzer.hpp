#ifndef CNB_ANALYZER_HPP
#define CNB_ANALYZER_HPP

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "model.hpp"
#include "segmenter.hpp"
#include "thesaurus.hpp"

namespace cnb {

// Binary bracketing over ordered leaves. Leaves carry 1-based positions;
// head_leaf caches the rightmost leaf index of the subtree, which under the
// head-final assumption names the category slot of the whole subtree.
struct TreeNode {
  int leaf = 0;  // 1-based leaf index; 0 for internal nodes
  int head_leaf = 0;
  std::unique_ptr<TreeNode> left;
  std::unique_ptr<TreeNode> right;

  bool is_leaf() const { return leaf != 0; }
};

using TreePtr = std::unique_ptr<TreeNode>;

constexpr int kDefaultWordCap = 10;
constexpr std::size_t kDefaultCandidateCap = 100000;
constexpr double kDefaultQCoefficient = 0.54;
constexpr double kDefaultQExponent = 1.896;

// All binary tree shapes over n ordered leaves; Catalan(n-1) shapes,
// deterministic order (by split point, left subtree varying slowest).
std::vector<TreePtr> enumerate_trees(int n, int word_cap = kDefaultWordCap);

TreePtr clone_tree(const TreeNode& node);

// Bracket text in list notation, e.g. "[[w1,w2],w3]" for leaf_label(i)="wi".
template <typename LabelFn>
std::string bracket_string(const TreeNode& node, LabelFn&& leaf_label) {
  if (node.is_leaf()) return leaf_label(node.leaf);
  return "[" + bracket_string(*node.left, leaf_label) + "," +
         bracket_string(*node.right, leaf_label) + "]";
}

// Per-word category choices expanded to the full Cartesian product, file
// order per word, rightmost word varying fastest.
std::vector<std::vector<CategoryId>> expand_assignments(const Segmentation& seg,
                                                        const Thesaurus& t);

// Word distance between a modifier and its modifiee at an internal node:
// head leaf index of the right subtree minus head leaf index of the left.
int modifier_distance(const TreeNode& node);

// Decay weight for a modification relation at distance d (d >= 1).
double q_weight(int d, double coefficient = kDefaultQCoefficient,
                double exponent = kDefaultQExponent);

struct AnalyzerOptions {
  Measure measure = Measure::cv1;
  bool distance_weighted = false;
  double q_coefficient = kDefaultQCoefficient;
  double q_exponent = kDefaultQExponent;
  bool prune = true;
  std::size_t length_cap = kDefaultLengthCap;
  int word_cap = kDefaultWordCap;
  std::size_t candidate_cap = kDefaultCandidateCap;
};

// Recursive preference: 1 for a leaf, otherwise
// p(left) * p(right) * cv(cat(head(left)), cat(head(right))), the cv factor
// multiplied by q(d) when distance weighting is on. cats[i] labels leaf i+1.
double preference(const TreeNode& tree, std::span<const CategoryId> cats,
                  const CollocationModel& m, const AnalyzerOptions& opts);

struct ScoredStructure {
  Segmentation segmentation;
  std::vector<CategoryId> categories;  // one per leaf, left to right
  std::shared_ptr<const TreeNode> shape;
  double score = 0.0;
  int rank_group = 0;  // 1-based, assigned after sorting

  std::string bracket_categories() const;
  std::string bracket_words() const;
  std::string bracket_words_categories() const;
  const CategoryId& head_category() const;
};

// Candidates from every surviving segmentation in one pool, sorted by
// descending score; equal scores share a rank group, ordered within the
// group by canonical serialization. No candidates at all means the input
// could not be segmented (the evaluation-side infinity bucket).
struct RankedAnalysis {
  std::vector<ScoredStructure> candidates;
  std::size_t segmentations_total = 0;      // before pruning
  std::size_t segmentations_surviving = 0;  // after pruning (if enabled)

  bool unparsable() const { return candidates.empty(); }
  int rank_groups() const {
    return candidates.empty() ? 0 : candidates.back().rank_group;
  }
  std::size_t group_size(int rank_group) const;
};

RankedAnalysis analyze(std::string_view input, const Thesaurus& t,
                       const CollocationModel& m, const AnalyzerOptions& opts);

}  // namespace cnb

#endif
