#ifndef CNB_INGEST_HPP
#define CNB_INGEST_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "thesaurus.hpp"

namespace cnb {

// Ordered category pair multiset: (left, right) -> occurrence count.
// std::map keeps iteration canonical for model building and dumps.
using PairCounts =
    std::map<std::pair<CategoryId, CategoryId>, std::uint64_t>;

struct WordPair {
  std::string left;
  std::string right;

  auto operator<=>(const WordPair&) const = default;
};

struct RecordIssue {
  std::size_t line = 0;
  std::string text;
  std::string reason;
};

// Bookkeeping for one ingest run. Every non-comment record lands in exactly
// one of: malformed, duplicates, discarded_not_in_thesaurus,
// discarded_ambiguous, unique_word_pairs.
struct IngestReport {
  std::size_t total_records = 0;
  std::size_t malformed = 0;
  std::size_t duplicates = 0;
  std::size_t discarded_not_in_thesaurus = 0;
  std::size_t discarded_ambiguous = 0;
  std::size_t unique_word_pairs = 0;
  std::size_t category_pair_tokens = 0;
  std::vector<RecordIssue> issues;

  bool reconciles() const {
    return total_records == malformed + duplicates +
                                discarded_not_in_thesaurus +
                                discarded_ambiguous + unique_word_pairs &&
           category_pair_tokens == unique_word_pairs;
  }
};

// Splits a four-character word into its 2+2 character halves.
WordPair split_middle(std::string_view word);

// Reads a corpus of one four-character word per line ('#' comments allowed),
// deduplicates word pairs, keeps a pair only when both halves are in the
// thesaurus and unambiguous, and tallies the resulting category pairs.
// Duplicate lines and word pairs with missing or ambiguous halves are
// counted, never tallied. Wrong-length lines are reported, not fatal.
std::pair<PairCounts, IngestReport> ingest(const std::string& corpus_path,
                                           const Thesaurus& t);
std::pair<PairCounts, IngestReport> ingest_stream(std::istream& in,
                                                  const Thesaurus& t,
                                                  const std::string& name);

}  // namespace cnb

#endif
