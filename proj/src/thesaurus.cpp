#include "thesaurus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "error.hpp"
#include "text.hpp"

namespace cnb {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isdigit(c) != 0;
  });
}

}  // namespace

Thesaurus Thesaurus::load(const std::string& path, int level) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::not_found, "cannot open thesaurus file: " + path);
  return parse(in, level, path);
}

Thesaurus Thesaurus::parse(std::istream& in, int level,
                           const std::string& name) {
  if (level < kMinLevel || level > kMaxLevel)
    fail(ErrorCode::usage,
         "thesaurus level must be in 1..6, got " + std::to_string(level));

  Thesaurus t;
  t.level_ = level;

  std::string line;
  std::size_t line_no = 0;
  std::size_t records = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;

    auto where = [&] { return name + ":" + std::to_string(line_no); };
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos)
      fail(ErrorCode::parse, where() + ": missing tab separator");
    std::string word = line.substr(0, tab);
    std::string code = trim(line.substr(tab + 1));
    if (word.empty()) fail(ErrorCode::parse, where() + ": empty word");
    if (!all_digits(code))
      fail(ErrorCode::parse, where() + ": category code is not all digits");
    if (code.size() < static_cast<std::size_t>(level))
      fail(ErrorCode::parse,
           where() + ": category code shorter than level " +
               std::to_string(level));
    ++records;

    CategoryId cat{code.substr(0, static_cast<std::size_t>(level))};
    auto it = t.entries_.find(word);
    if (it == t.entries_.end()) {
      t.order_.push_back(word);
      t.entries_.emplace(word, std::vector<CategoryId>{std::move(cat)});
      t.max_word_chars_ = std::max(t.max_word_chars_, utf8_length(word));
    } else {
      auto& cats = it->second;
      if (std::find(cats.begin(), cats.end(), cat) == cats.end())
        cats.push_back(std::move(cat));
    }
  }
  if (records == 0)
    fail(ErrorCode::empty, name + ": thesaurus file has no records");
  return t;
}

const std::vector<CategoryId>* Thesaurus::categories(
    std::string_view word) const {
  auto it = entries_.find(std::string(word));
  if (it == entries_.end()) return nullptr;
  return &it->second;
}

bool Thesaurus::contains(std::string_view word) const {
  return categories(word) != nullptr;
}

bool Thesaurus::is_ambiguous(std::string_view word) const {
  const auto* cats = categories(word);
  if (!cats)
    fail(ErrorCode::absent_word,
         "word not in thesaurus: " + std::string(word));
  return cats->size() >= 2;
}

void Thesaurus::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::io, "cannot write thesaurus file: " + path);
  write(out);
  if (!out) fail(ErrorCode::io, "write failed: " + path);
}

void Thesaurus::write(std::ostream& out) const {
  for (const auto& word : order_) {
    for (const auto& cat : entries_.at(word))
      out << word << '\t' << cat.code << '\n';
  }
}

bool Thesaurus::operator==(const Thesaurus& other) const {
  return level_ == other.level_ && order_ == other.order_ &&
         entries_ == other.entries_;
}

}  // namespace cnb
