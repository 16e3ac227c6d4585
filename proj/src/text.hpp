#ifndef CNB_TEXT_HPP
#define CNB_TEXT_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace cnb {

// Splits a UTF-8 string into one std::string per code point. Bytes that do
// not start a valid sequence are kept as single-byte units so noisy input
// still round-trips.
std::vector<std::string> utf8_chars(std::string_view s);

std::size_t utf8_length(std::string_view s);

// Joins chars[first, first+count) back into a string.
std::string join_range(const std::vector<std::string>& chars,
                       std::size_t first, std::size_t count);

std::string trim(std::string_view s);

}  // namespace cnb

#endif
