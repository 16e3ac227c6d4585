#include "segmenter.hpp"

#include <algorithm>

#include "error.hpp"
#include "text.hpp"

namespace cnb {

std::string Segmentation::joined(const char* sep) const {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i > 0) out += sep;
    out += words[i];
  }
  return out;
}

std::vector<Segmentation> enumerate_segmentations(std::string_view input,
                                                  const Thesaurus& t,
                                                  std::size_t length_cap) {
  if (input.empty()) fail(ErrorCode::usage, "empty input string");
  auto chars = utf8_chars(input);
  const std::size_t n = chars.size();
  if (n > length_cap)
    fail(ErrorCode::limit, "input of " + std::to_string(n) +
                               " characters exceeds length cap " +
                               std::to_string(length_cap));

  const std::size_t max_len = std::min(t.max_word_chars(), n);

  // word_at[i] holds the lengths of headwords starting at position i,
  // ascending, so the DFS emits split-position vectors in lexicographic
  // order.
  std::vector<std::vector<std::size_t>> word_at(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t len = 1; len <= max_len && i + len <= n; ++len) {
      if (t.contains(join_range(chars, i, len))) word_at[i].push_back(len);
    }
  }

  // reachable[i]: some cover of chars[i..n) exists
  std::vector<bool> reachable(n + 1, false);
  reachable[n] = true;
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t len : word_at[i]) {
      if (reachable[i + len]) {
        reachable[i] = true;
        break;
      }
    }
  }

  std::vector<Segmentation> out;
  if (!reachable[0]) return out;

  std::vector<std::string> current;
  auto dfs = [&](auto&& self, std::size_t pos) -> void {
    if (pos == n) {
      out.push_back(Segmentation{current});
      return;
    }
    for (std::size_t len : word_at[pos]) {
      if (!reachable[pos + len]) continue;
      current.push_back(join_range(chars, pos, len));
      self(self, pos + len);
      current.pop_back();
    }
  };
  dfs(dfs, 0);
  return out;
}

std::vector<Segmentation> min_content_words(std::vector<Segmentation> segs) {
  if (segs.empty()) return segs;
  std::size_t best = segs.front().words.size();
  for (const auto& s : segs) best = std::min(best, s.words.size());
  std::erase_if(segs, [&](const Segmentation& s) {
    return s.words.size() != best;
  });
  return segs;
}

}  // namespace cnb
