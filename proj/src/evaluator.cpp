#include "evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "error.hpp"
#include "text.hpp"

namespace cnb {

namespace {

struct GoldParser {
  std::string_view text;
  std::size_t pos = 0;
  const std::string& where;

  [[noreturn]] void err(const std::string& msg) const {
    fail(ErrorCode::parse, where + ": " + msg);
  }

  char peek() const { return pos < text.size() ? text[pos] : '\0'; }

  void skip_spaces() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }

  void expect(char c) {
    skip_spaces();
    if (peek() != c) err(std::string("expected '") + c + "'");
    ++pos;
  }

  // node := word | '[' node ',' node ']'; spaces around tokens are dropped
  TreePtr parse_node(std::vector<std::string>& leaves) {
    skip_spaces();
    if (peek() == '[') {
      ++pos;
      auto left = parse_node(leaves);
      expect(',');
      auto right = parse_node(leaves);
      expect(']');
      auto node = std::make_unique<TreeNode>();
      node->head_leaf = right->head_leaf;
      node->left = std::move(left);
      node->right = std::move(right);
      return node;
    }
    std::size_t start = pos;
    while (pos < text.size() && text[pos] != '[' && text[pos] != ']' &&
           text[pos] != ',')
      ++pos;
    std::string word = trim(text.substr(start, pos - start));
    if (word.empty()) err("empty word in bracket expression");
    leaves.push_back(word);
    auto node = std::make_unique<TreeNode>();
    node->leaf = int(leaves.size());
    node->head_leaf = node->leaf;
    return node;
  }
};

}  // namespace

GoldRecord parse_gold_record(std::string_view line, std::size_t line_no,
                             const std::string& name) {
  std::string where = name + ":" + std::to_string(line_no);
  std::size_t tab = line.find('\t');
  if (tab == std::string_view::npos)
    fail(ErrorCode::parse, where + ": missing tab separator");

  GoldRecord rec;
  rec.surface = trim(line.substr(0, tab));
  if (rec.surface.empty()) fail(ErrorCode::parse, where + ": empty surface");

  std::string bracket_text = trim(line.substr(tab + 1));
  if (bracket_text.empty())
    fail(ErrorCode::parse, where + ": empty bracket expression");

  GoldParser parser{bracket_text, 0, where};
  std::vector<std::string> leaves;
  auto tree = parser.parse_node(leaves);
  if (parser.pos != bracket_text.size())
    parser.err("trailing text after bracket expression");

  std::string joined;
  for (const auto& w : leaves) joined += w;
  if (joined != rec.surface)
    fail(ErrorCode::parse,
         where + ": bracket leaves \"" + joined +
             "\" do not concatenate to surface \"" + rec.surface + "\"");

  rec.segmentation.words = std::move(leaves);
  rec.bracket = bracket_string(*tree, [&](int leaf) {
    return rec.segmentation.words[std::size_t(leaf) - 1];
  });
  rec.tree = std::shared_ptr<const TreeNode>(tree.release());
  return rec;
}

RankResult rank_of_gold(const RankedAnalysis& analysis,
                        const GoldRecord& gold) {
  RankResult result;
  for (const auto& cand : analysis.candidates) {
    if (cand.segmentation.words != gold.segmentation.words) continue;
    if (cand.bracket_words() != gold.bracket) continue;
    result.rank = cand.rank_group;
    result.tie = analysis.group_size(cand.rank_group) > 1;
    return result;
  }
  result.infinite = true;
  return result;
}

void BucketCounts::add(const RankResult& r) {
  ++total;
  if (r.infinite) {
    ++infinite;
    return;
  }
  if (r.rank == 1 && !r.tie) ++rank1_no_tie;
  if (r.rank <= 1) ++le1;
  if (r.rank <= 2) ++le2;
  if (r.rank <= 3) ++le3;
  if (r.rank >= 4) ++ge4;
}

std::string measure_label(const AnalyzerOptions& opts) {
  std::string label = measure_name(opts.measure);
  if (opts.distance_weighted) label += "q";
  return label;
}

EvalTable evaluate(const std::string& gold_path, const Thesaurus& t,
                   const CollocationModel& m,
                   const std::vector<AnalyzerOptions>& variants) {
  std::ifstream in(gold_path, std::ios::binary);
  if (!in) fail(ErrorCode::not_found, "cannot open gold file: " + gold_path);
  return evaluate_stream(in, t, m, variants, gold_path);
}

EvalTable evaluate_stream(std::istream& in, const Thesaurus& t,
                          const CollocationModel& m,
                          const std::vector<AnalyzerOptions>& variants,
                          const std::string& name) {
  if (variants.empty())
    fail(ErrorCode::usage, "evaluation needs at least one measure");

  EvalTable table;
  for (const auto& opts : variants)
    table.columns.push_back({measure_label(opts), opts, {}});

  std::string line;
  std::size_t line_no = 0;
  std::size_t valid_records = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || line[0] == '#') continue;

    GoldRecord gold;
    try {
      gold = parse_gold_record(line, line_no, name);
    } catch (const Error& e) {
      table.issues.push_back({line_no, line, e.what()});
      continue;
    }
    ++valid_records;

    for (auto& column : table.columns) {
      auto analysis = analyze(gold.surface, t, m, column.options);
      column.buckets.add(rank_of_gold(analysis, gold));
    }
  }
  if (valid_records == 0)
    fail(ErrorCode::empty, name + ": gold file has no usable records");
  return table;
}

std::string percent_string(std::size_t count, std::size_t total) {
  if (total == 0) return "-";
  double pct = 100.0 * double(count) / double(total);
  std::ostringstream out;
  if (count > 0 && pct < 1.0) {
    double tenth = std::round(pct * 10.0) / 10.0;
    if (tenth < 0.1) tenth = 0.1;  // a nonzero bucket never prints as 0
    out.setf(std::ios::fixed);
    out.precision(1);
    out << tenth;
  } else {
    out << std::llround(pct);
  }
  return out.str();
}

namespace {

const char* kRowLabels[] = {"1", "~1", "~2", "~3", "4~", "inf"};

std::size_t row_count(const BucketCounts& b, std::size_t row) {
  switch (row) {
    case 0: return b.rank1_no_tie;
    case 1: return b.le1;
    case 2: return b.le2;
    case 3: return b.le3;
    case 4: return b.ge4;
    default: return b.infinite;
  }
}

}  // namespace

std::string render_table(const EvalTable& table) {
  // rows: header, six buckets, total; columns: label + one per measure
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> header{"rank"};
  for (const auto& col : table.columns) header.push_back(col.label);
  cells.push_back(header);
  for (std::size_t row = 0; row < 6; ++row) {
    std::vector<std::string> line{kRowLabels[row]};
    for (const auto& col : table.columns)
      line.push_back(
          percent_string(row_count(col.buckets, row), col.buckets.total));
    cells.push_back(line);
  }
  std::vector<std::string> totals{"total"};
  for (const auto& col : table.columns)
    totals.push_back(std::to_string(col.buckets.total));
  cells.push_back(totals);

  std::vector<std::size_t> widths(cells[0].size(), 0);
  for (const auto& line : cells)
    for (std::size_t c = 0; c < line.size(); ++c)
      widths[c] = std::max(widths[c], line[c].size());

  std::ostringstream out;
  for (const auto& line : cells) {
    for (std::size_t c = 0; c < line.size(); ++c) {
      if (c == 0) {
        out << line[c] << std::string(widths[c] - line[c].size(), ' ');
      } else {
        out << "  " << std::string(widths[c] - line[c].size(), ' ')
            << line[c];
      }
    }
    out << '\n';
  }
  return out.str();
}

std::string render_tsv(const EvalTable& table) {
  std::ostringstream out;
  out << "measure\tbucket\tcount\tpercent\n";
  for (const auto& col : table.columns) {
    for (std::size_t row = 0; row < 6; ++row) {
      std::size_t count = row_count(col.buckets, row);
      out << col.label << '\t' << kRowLabels[row] << '\t' << count << '\t'
          << percent_string(count, col.buckets.total) << '\n';
    }
    out << col.label << "\ttotal\t" << col.buckets.total << "\t100\n";
  }
  return out.str();
}

}  // namespace cnb
