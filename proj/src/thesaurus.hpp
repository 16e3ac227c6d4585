#ifndef CNB_THESAURUS_HPP
#define CNB_THESAURUS_HPP

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cnb {

// A thesaurus category code truncated to the hierarchy level of the
// containing thesaurus (three decimal digits at the default level 3).
struct CategoryId {
  std::string code;

  auto operator<=>(const CategoryId&) const = default;
};

// Word -> ordered category set mapping loaded from a flat TSV file,
// one "word<TAB>full-category-code" record per line, '#' comments skipped.
// Full codes are truncated to the configured level at load time.
// Immutable after load; concurrent reads are safe.
class Thesaurus {
 public:
  static constexpr int kMinLevel = 1;
  static constexpr int kMaxLevel = 6;

  static Thesaurus load(const std::string& path, int level = 3);
  static Thesaurus parse(std::istream& in, int level, const std::string& name);

  int level() const { return level_; }

  // Categories of a word in file order, or nullptr when the word is absent.
  const std::vector<CategoryId>* categories(std::string_view word) const;

  bool contains(std::string_view word) const;

  // True iff the word carries two or more categories. The word must exist.
  bool is_ambiguous(std::string_view word) const;

  std::size_t word_count() const { return order_.size(); }

  // Longest headword, in code points. Bounds the segmentation lattice scan.
  std::size_t max_word_chars() const { return max_word_chars_; }

  // Headwords in first-seen file order.
  const std::vector<std::string>& words() const { return order_; }

  void save(const std::string& path) const;
  void write(std::ostream& out) const;

  bool operator==(const Thesaurus& other) const;

 private:
  int level_ = 3;
  std::vector<std::string> order_;
  std::unordered_map<std::string, std::vector<CategoryId>> entries_;
  std::size_t max_word_chars_ = 0;
};

}  // namespace cnb

#endif
