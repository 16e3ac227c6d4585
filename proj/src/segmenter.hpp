#ifndef CNB_SEGMENTER_HPP
#define CNB_SEGMENTER_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "thesaurus.hpp"

namespace cnb {

// A word sequence whose concatenation is exactly the input string and whose
// members are all thesaurus headwords.
struct Segmentation {
  std::vector<std::string> words;

  std::string joined(const char* sep = "/") const;
  auto operator<=>(const Segmentation&) const = default;
};

constexpr std::size_t kDefaultLengthCap = 16;

// All dictionary-consistent segmentations, ordered lexicographically by
// split positions. Empty result when no cover exists. Inputs longer than
// length_cap (in code points) are a resource error.
std::vector<Segmentation> enumerate_segmentations(
    std::string_view input, const Thesaurus& t,
    std::size_t length_cap = kDefaultLengthCap);

// Keeps every segmentation whose word count equals the minimum, ties
// retained. Empty in, empty out.
std::vector<Segmentation> min_content_words(std::vector<Segmentation> segs);

}  // namespace cnb

#endif
