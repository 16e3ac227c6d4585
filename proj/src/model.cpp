#include "model.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <ostream>

#include "error.hpp"

namespace cnb {

namespace {

constexpr char kMagic[4] = {'C', 'N', 'B', 'M'};
constexpr std::uint32_t kVersion = 1;

std::uint32_t crc32(const char* data, std::size_t len) {
  static const auto table = [] {
    std::array<std::uint32_t, 256> t{};
    for (std::uint32_t i = 0; i < 256; ++i) {
      std::uint32_t c = i;
      for (int k = 0; k < 8; ++k)
        c = (c & 1) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
      t[i] = c;
    }
    return t;
  }();
  std::uint32_t crc = 0xFFFFFFFFu;
  for (std::size_t i = 0; i < len; ++i)
    crc = table[(crc ^ static_cast<unsigned char>(data[i])) & 0xFFu] ^
          (crc >> 8);
  return crc ^ 0xFFFFFFFFu;
}

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(char((v >> (8 * i)) & 0xFF));
}

void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(char((v >> (8 * i)) & 0xFF));
}

std::uint32_t get_u32(const std::string& in, std::size_t pos) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i)
    v |= std::uint32_t(static_cast<unsigned char>(in[pos + i])) << (8 * i);
  return v;
}

std::uint64_t get_u64(const std::string& in, std::size_t pos) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i)
    v |= std::uint64_t(static_cast<unsigned char>(in[pos + i])) << (8 * i);
  return v;
}

bool valid_code(const std::string& code, int level) {
  if (code.size() != static_cast<std::size_t>(level)) return false;
  return std::all_of(code.begin(), code.end(), [](unsigned char c) {
    return std::isdigit(c) != 0;
  });
}

}  // namespace

const char* measure_name(Measure m) {
  return m == Measure::cv1 ? "cv1" : "cv2";
}

CollocationModel CollocationModel::build(const PairCounts& pairs, int level) {
  if (pairs.empty())
    fail(ErrorCode::empty, "cannot build a model from an empty pair multiset");
  if (level < Thesaurus::kMinLevel || level > Thesaurus::kMaxLevel)
    fail(ErrorCode::usage, "model level must be in 1..6");

  CollocationModel m;
  m.level_ = level;
  for (const auto& [pair, count] : pairs) {
    if (count == 0) continue;
    if (!valid_code(pair.first.code, level) ||
        !valid_code(pair.second.code, level))
      fail(ErrorCode::usage, "category code does not match model level: " +
                                 pair.first.code + "," + pair.second.code);
    m.pairs_[pair] = count;
    m.left_[pair.first] += count;
    m.right_[pair.second] += count;
    m.total_ += count;
  }
  if (m.total_ == 0)
    fail(ErrorCode::empty, "cannot build a model from all-zero counts");
  return m;
}

std::uint64_t CollocationModel::pair_count(const CategoryId& c1,
                                           const CategoryId& c2) const {
  auto it = pairs_.find({c1, c2});
  return it == pairs_.end() ? 0 : it->second;
}

std::uint64_t CollocationModel::left_count(const CategoryId& c) const {
  auto it = left_.find(c);
  return it == left_.end() ? 0 : it->second;
}

std::uint64_t CollocationModel::right_count(const CategoryId& c) const {
  auto it = right_.find(c);
  return it == right_.end() ? 0 : it->second;
}

double CollocationModel::prob(const CategoryId& c1,
                              const CategoryId& c2) const {
  return double(pair_count(c1, c2)) / double(total_);
}

double CollocationModel::prob_left(const CategoryId& c) const {
  return double(left_count(c)) / double(total_);
}

double CollocationModel::prob_right(const CategoryId& c) const {
  return double(right_count(c)) / double(total_);
}

double CollocationModel::cv1(const CategoryId& c1,
                             const CategoryId& c2) const {
  return prob(c1, c2);
}

double CollocationModel::cv2(const CategoryId& c1,
                             const CategoryId& c2) const {
  std::uint64_t n = pair_count(c1, c2);
  if (n == 0) return 0.0;  // also sidesteps 0/0 when a marginal is empty
  return prob(c1, c2) / (prob_left(c1) * prob_right(c2));
}

double CollocationModel::cv(Measure m, const CategoryId& c1,
                            const CategoryId& c2) const {
  return m == Measure::cv1 ? cv1(c1, c2) : cv2(c1, c2);
}

void CollocationModel::save(const std::string& path) const {
  std::string buf;
  buf.append(kMagic, 4);
  put_u32(buf, kVersion);
  put_u32(buf, std::uint32_t(level_));
  put_u64(buf, total_);
  put_u64(buf, pairs_.size());
  for (const auto& [pair, count] : pairs_) {
    buf += pair.first.code;
    buf += pair.second.code;
    put_u64(buf, count);
  }
  put_u32(buf, crc32(buf.data(), buf.size()));

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::io, "cannot write model file: " + path);
  out.write(buf.data(), std::streamsize(buf.size()));
  if (!out) fail(ErrorCode::io, "write failed: " + path);
}

CollocationModel CollocationModel::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::not_found, "cannot open model file: " + path);
  std::string buf((std::istreambuf_iterator<char>(in)),
                  std::istreambuf_iterator<char>());

  constexpr std::size_t kHeader = 4 + 4 + 4 + 8 + 8;
  if (buf.empty()) fail(ErrorCode::format, path + ": empty model file");
  if (buf.size() < kHeader + 4)
    fail(ErrorCode::truncated, path + ": model file shorter than header");
  if (buf.compare(0, 4, kMagic, 4) != 0)
    fail(ErrorCode::format, path + ": bad magic, not a model file");
  std::uint32_t version = get_u32(buf, 4);
  if (version != kVersion)
    fail(ErrorCode::version_mismatch,
         path + ": unsupported model version " + std::to_string(version));
  std::uint32_t level = get_u32(buf, 8);
  if (level < 1 || level > 6)
    fail(ErrorCode::format, path + ": level out of range");
  std::uint64_t total = get_u64(buf, 12);
  std::uint64_t records = get_u64(buf, 20);
  std::size_t record_size = 2 * level + 8;
  std::size_t expected = kHeader + records * record_size + 4;
  if (buf.size() < expected)
    fail(ErrorCode::truncated, path + ": model file truncated");
  if (buf.size() > expected)
    fail(ErrorCode::format, path + ": trailing bytes after checksum");
  std::uint32_t stored = get_u32(buf, buf.size() - 4);
  if (crc32(buf.data(), buf.size() - 4) != stored)
    fail(ErrorCode::checksum, path + ": checksum mismatch");

  PairCounts pairs;
  std::size_t pos = kHeader;
  std::pair<CategoryId, CategoryId> prev;
  for (std::uint64_t i = 0; i < records; ++i) {
    CategoryId c1{buf.substr(pos, level)};
    CategoryId c2{buf.substr(pos + level, level)};
    std::uint64_t count = get_u64(buf, pos + 2 * level);
    pos += record_size;
    if (!valid_code(c1.code, int(level)) || !valid_code(c2.code, int(level)))
      fail(ErrorCode::format, path + ": non-digit category code in record " +
                                  std::to_string(i));
    std::pair<CategoryId, CategoryId> key{c1, c2};
    if (i > 0 && !(prev < key))
      fail(ErrorCode::format, path + ": pair table not strictly sorted");
    if (count == 0)
      fail(ErrorCode::format, path + ": zero count in pair table");
    pairs.emplace(key, count);
    prev = std::move(key);
  }
  if (pairs.empty()) fail(ErrorCode::format, path + ": model has no pairs");

  CollocationModel m = build(pairs, int(level));
  if (m.total_ != total)
    fail(ErrorCode::format, path + ": stored total does not match pair sum");
  return m;
}

void CollocationModel::dump_tsv(std::ostream& out) const {
  for (const auto& [pair, count] : pairs_)
    out << pair.first.code << '\t' << pair.second.code << '\t' << count
        << '\n';
}

}  // namespace cnb
