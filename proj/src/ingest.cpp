#include "ingest.hpp"

#include <fstream>
#include <set>

#include "error.hpp"
#include "text.hpp"

namespace cnb {

WordPair split_middle(std::string_view word) {
  auto chars = utf8_chars(word);
  if (chars.size() != 4)
    fail(ErrorCode::parse, "expected a four-character word, got \"" +
                               std::string(word) + "\" (" +
                               std::to_string(chars.size()) + " characters)");
  return WordPair{join_range(chars, 0, 2), join_range(chars, 2, 2)};
}

std::pair<PairCounts, IngestReport> ingest(const std::string& corpus_path,
                                           const Thesaurus& t) {
  std::ifstream in(corpus_path, std::ios::binary);
  if (!in)
    fail(ErrorCode::not_found, "cannot open corpus file: " + corpus_path);
  return ingest_stream(in, t, corpus_path);
}

std::pair<PairCounts, IngestReport> ingest_stream(std::istream& in,
                                                  const Thesaurus& t,
                                                  const std::string& name) {
  PairCounts counts;
  IngestReport report;
  std::set<WordPair> seen;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string word = trim(line);
    if (word.empty() || word[0] == '#') continue;

    ++report.total_records;
    auto chars = utf8_chars(word);
    if (chars.size() != 4) {
      ++report.malformed;
      report.issues.push_back(
          {line_no, word,
           "expected 4 characters, got " + std::to_string(chars.size())});
      continue;
    }
    WordPair pair{join_range(chars, 0, 2), join_range(chars, 2, 2)};
    if (!seen.insert(pair).second) {
      ++report.duplicates;
      continue;
    }
    const auto* left = t.categories(pair.left);
    const auto* right = t.categories(pair.right);
    if (!left || !right) {
      ++report.discarded_not_in_thesaurus;
      continue;
    }
    if (left->size() >= 2 || right->size() >= 2) {
      ++report.discarded_ambiguous;
      continue;
    }
    ++report.unique_word_pairs;
    ++counts[{left->front(), right->front()}];
  }
  report.category_pair_tokens = report.unique_word_pairs;
  return {std::move(counts), std::move(report)};
}

}  // namespace cnb
