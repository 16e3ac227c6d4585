#ifndef CNB_MODEL_HPP
#define CNB_MODEL_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>

#include "ingest.hpp"
#include "thesaurus.hpp"

namespace cnb {

enum class Measure { cv1, cv2 };

const char* measure_name(Measure m);

// Frozen frequency table over ordered category pairs with left/right
// marginals. Counts are exact integers; probabilities are computed on
// demand. Immutable after build; concurrent reads are safe.
class CollocationModel {
 public:
  static CollocationModel build(const PairCounts& pairs, int level);

  // Versioned binary file: magic, version, level, N, sorted (c1, c2, count)
  // table, CRC32 trailer. load(save(m)) == m.
  static CollocationModel load(const std::string& path);
  void save(const std::string& path) const;

  // TSV debug listing: c1 <TAB> c2 <TAB> count, sorted.
  void dump_tsv(std::ostream& out) const;

  int level() const { return level_; }
  std::uint64_t total() const { return total_; }
  std::size_t pair_kinds() const { return pairs_.size(); }

  std::uint64_t pair_count(const CategoryId& c1, const CategoryId& c2) const;
  std::uint64_t left_count(const CategoryId& c) const;
  std::uint64_t right_count(const CategoryId& c) const;

  // Relative pair frequency P(c1, c2); 0 for unseen pairs.
  double prob(const CategoryId& c1, const CategoryId& c2) const;
  double prob_left(const CategoryId& c) const;   // P(c, *)
  double prob_right(const CategoryId& c) const;  // P(*, c)

  double cv1(const CategoryId& c1, const CategoryId& c2) const;
  // P(c1,c2) / (P(c1,*) * P(*,c2)); 0 when the pair is unseen.
  double cv2(const CategoryId& c1, const CategoryId& c2) const;
  double cv(Measure m, const CategoryId& c1, const CategoryId& c2) const;

  const PairCounts& pairs() const { return pairs_; }

  bool operator==(const CollocationModel& other) const {
    return level_ == other.level_ && total_ == other.total_ &&
           pairs_ == other.pairs_;
  }

 private:
  int level_ = 3;
  std::uint64_t total_ = 0;
  PairCounts pairs_;
  std::map<CategoryId, std::uint64_t> left_;
  std::map<CategoryId, std::uint64_t> right_;
};

}  // namespace cnb

#endif
