#include "analyzer.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"

namespace cnb {

namespace {

TreePtr make_leaf(int index) {
  auto node = std::make_unique<TreeNode>();
  node->leaf = index;
  node->head_leaf = index;
  return node;
}

TreePtr make_node(TreePtr left, TreePtr right) {
  auto node = std::make_unique<TreeNode>();
  node->head_leaf = right->head_leaf;
  node->left = std::move(left);
  node->right = std::move(right);
  return node;
}

// All shapes over leaves first..first+count-1.
std::vector<TreePtr> shapes_over(int first, int count) {
  std::vector<TreePtr> out;
  if (count == 1) {
    out.push_back(make_leaf(first));
    return out;
  }
  for (int left_count = 1; left_count < count; ++left_count) {
    auto lefts = shapes_over(first, left_count);
    auto rights = shapes_over(first + left_count, count - left_count);
    for (const auto& l : lefts)
      for (const auto& r : rights)
        out.push_back(make_node(clone_tree(*l), clone_tree(*r)));
  }
  return out;
}

}  // namespace

std::vector<TreePtr> enumerate_trees(int n, int word_cap) {
  if (n < 1) fail(ErrorCode::usage, "tree enumeration needs n >= 1");
  if (n > word_cap)
    fail(ErrorCode::limit, "word count " + std::to_string(n) +
                               " exceeds cap " + std::to_string(word_cap));
  return shapes_over(1, n);
}

TreePtr clone_tree(const TreeNode& node) {
  auto copy = std::make_unique<TreeNode>();
  copy->leaf = node.leaf;
  copy->head_leaf = node.head_leaf;
  if (node.left) copy->left = clone_tree(*node.left);
  if (node.right) copy->right = clone_tree(*node.right);
  return copy;
}

std::vector<std::vector<CategoryId>> expand_assignments(const Segmentation& seg,
                                                        const Thesaurus& t) {
  std::vector<const std::vector<CategoryId>*> choices;
  choices.reserve(seg.words.size());
  for (const auto& word : seg.words) {
    const auto* cats = t.categories(word);
    if (!cats)
      fail(ErrorCode::absent_word, "word not in thesaurus: " + word);
    choices.push_back(cats);
  }

  std::vector<std::vector<CategoryId>> out;
  std::vector<CategoryId> current(seg.words.size(), CategoryId{});
  auto emit = [&](auto&& self, std::size_t i) -> void {
    if (i == choices.size()) {
      out.push_back(current);
      return;
    }
    for (const auto& cat : *choices[i]) {
      current[i] = cat;
      self(self, i + 1);
    }
  };
  emit(emit, 0);
  return out;
}

int modifier_distance(const TreeNode& node) {
  if (node.is_leaf())
    fail(ErrorCode::usage, "modifier distance is defined on internal nodes");
  return node.right->head_leaf - node.left->head_leaf;
}

double q_weight(int d, double coefficient, double exponent) {
  if (d < 1) fail(ErrorCode::usage, "modifier distance must be >= 1");
  return coefficient * std::pow(double(d), -exponent);
}

double preference(const TreeNode& tree, std::span<const CategoryId> cats,
                  const CollocationModel& m, const AnalyzerOptions& opts) {
  if (tree.is_leaf()) return 1.0;
  double left = preference(*tree.left, cats, m, opts);
  double right = preference(*tree.right, cats, m, opts);
  const CategoryId& head_left = cats[std::size_t(tree.left->head_leaf) - 1];
  const CategoryId& head_right = cats[std::size_t(tree.right->head_leaf) - 1];
  double factor = m.cv(opts.measure, head_left, head_right);
  if (opts.distance_weighted)
    factor *= q_weight(modifier_distance(tree), opts.q_coefficient,
                       opts.q_exponent);
  return left * right * factor;
}

std::string ScoredStructure::bracket_categories() const {
  return bracket_string(*shape, [&](int leaf) {
    return categories[std::size_t(leaf) - 1].code;
  });
}

std::string ScoredStructure::bracket_words() const {
  return bracket_string(*shape, [&](int leaf) {
    return segmentation.words[std::size_t(leaf) - 1];
  });
}

std::string ScoredStructure::bracket_words_categories() const {
  return bracket_string(*shape, [&](int leaf) {
    return segmentation.words[std::size_t(leaf) - 1] + "/" +
           categories[std::size_t(leaf) - 1].code;
  });
}

const CategoryId& ScoredStructure::head_category() const {
  return categories[std::size_t(shape->head_leaf) - 1];
}

std::size_t RankedAnalysis::group_size(int rank_group) const {
  std::size_t n = 0;
  for (const auto& c : candidates)
    if (c.rank_group == rank_group) ++n;
  return n;
}

namespace {

// Scores within this relative tolerance land in one rank group. Products of
// the same cv factors can differ by a few ulps depending on multiplication
// order, and those are genuine ties.
constexpr double kTieRelTolerance = 1e-12;

bool same_score(double a, double b) {
  double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
  return std::fabs(a - b) <= kTieRelTolerance * scale;
}

}  // namespace

RankedAnalysis analyze(std::string_view input, const Thesaurus& t,
                       const CollocationModel& m,
                       const AnalyzerOptions& opts) {
  RankedAnalysis result;

  auto segs = enumerate_segmentations(input, t, opts.length_cap);
  result.segmentations_total = segs.size();
  if (opts.prune) segs = min_content_words(std::move(segs));
  result.segmentations_surviving = segs.size();
  if (segs.empty()) return result;

  for (const auto& seg : segs) {
    int n = int(seg.words.size());
    auto shapes = enumerate_trees(n, opts.word_cap);
    auto assignments = expand_assignments(seg, t);

    std::vector<std::shared_ptr<const TreeNode>> shared_shapes;
    shared_shapes.reserve(shapes.size());
    for (auto& s : shapes)
      shared_shapes.emplace_back(std::shared_ptr<const TreeNode>(s.release()));

    std::size_t added =
        result.candidates.size() + assignments.size() * shared_shapes.size();
    if (added > opts.candidate_cap)
      fail(ErrorCode::limit,
           "candidate count exceeds cap " + std::to_string(opts.candidate_cap));

    for (const auto& cats : assignments) {
      for (const auto& shape : shared_shapes) {
        ScoredStructure cand;
        cand.segmentation = seg;
        cand.categories = cats;
        cand.shape = shape;
        cand.score = preference(*shape, cats, m, opts);
        result.candidates.push_back(std::move(cand));
      }
    }
  }

  struct Entry {
    std::size_t index;
    double score;
    std::string key;
  };
  std::vector<Entry> order;
  order.reserve(result.candidates.size());
  for (std::size_t i = 0; i < result.candidates.size(); ++i)
    order.push_back(
        {i, result.candidates[i].score,
         result.candidates[i].bracket_words_categories()});

  std::sort(order.begin(), order.end(), [](const Entry& a, const Entry& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.key < b.key;
  });

  // Group near-equal scores, then order each group canonically by key.
  std::vector<int> groups(order.size());
  int group = 0;
  double group_head = 0.0;
  std::size_t group_begin = 0;
  auto close_group = [&](std::size_t end) {
    std::sort(order.begin() + std::ptrdiff_t(group_begin),
              order.begin() + std::ptrdiff_t(end),
              [](const Entry& a, const Entry& b) { return a.key < b.key; });
    group_begin = end;
  };
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (group == 0 || !same_score(order[i].score, group_head)) {
      if (group > 0) close_group(i);
      ++group;
      group_head = order[i].score;
    }
    groups[i] = group;
  }
  if (!order.empty()) close_group(order.size());

  std::vector<ScoredStructure> sorted;
  sorted.reserve(result.candidates.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    sorted.push_back(std::move(result.candidates[order[i].index]));
    sorted.back().rank_group = groups[i];
  }
  result.candidates = std::move(sorted);
  return result;
}

}  // namespace cnb
