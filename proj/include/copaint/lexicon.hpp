#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "data/demo_lexicon.hpp"
#include "errors.hpp"
#include "va.hpp"

namespace copaint {

struct LexiconEntry {
  std::string word;
  double rawValence = 5.0;      // [1, 9]
  double rawArousal = 5.0;      // [1, 9]
  double concreteness = 1.0;    // [1, 5]
  VAPoint affect;

  friend bool operator==(const LexiconEntry&, const LexiconEntry&) = default;
};

inline VAPoint normalizeNineScale(double rawValence, double rawArousal) {
  return {(rawValence - 5.0) / 4.0, (rawArousal - 5.0) / 4.0};
}

inline std::string caseFold(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

class Lexicon {
 public:
  // Inserts or replaces; returns false when an existing word was replaced.
  bool insert(LexiconEntry entry) {
    entry.word = caseFold(entry.word);
    auto [it, fresh] = entries_.insert_or_assign(entry.word, entry);
    return fresh;
  }

  const LexiconEntry* find(std::string_view word) const {
    auto it = entries_.find(caseFold(word));
    return it == entries_.end() ? nullptr : &it->second;
  }

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::map<std::string, LexiconEntry>& entries() const { return entries_; }

 private:
  std::map<std::string, LexiconEntry> entries_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> splitCommas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

inline std::optional<double> parseNumber(std::string_view s) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

}  // namespace detail

// CSV with header `word,valence,arousal,concreteness`. Duplicate words keep
// the last row; each replacement adds a message to `warnings` when given.
inline Lexicon loadLexicon(std::string_view csv, std::vector<std::string>* warnings = nullptr) {
  Lexicon lex;
  std::size_t lineNo = 0;
  bool headerSeen = false;
  while (!csv.empty()) {
    const std::size_t nl = csv.find('\n');
    std::string_view line = csv.substr(0, nl);
    csv = nl == std::string_view::npos ? std::string_view{} : csv.substr(nl + 1);
    ++lineNo;
    if (lineNo == 1 && line.starts_with("\xEF\xBB\xBF")) line.remove_prefix(3);
    line = detail::trim(line);
    if (line.empty()) continue;
    if (!headerSeen) {
      if (caseFold(line) != "word,valence,arousal,concreteness")
        throw ParseError(lineNo, "expected header 'word,valence,arousal,concreteness'");
      headerSeen = true;
      continue;
    }
    const auto fields = detail::splitCommas(line);
    if (fields.size() != 4) throw ParseError(lineNo, "expected 4 fields, got " + std::to_string(fields.size()));
    if (fields[0].empty()) throw ParseError(lineNo, "empty word");
    LexiconEntry e;
    e.word = caseFold(fields[0]);
    auto v = detail::parseNumber(fields[1]);
    auto a = detail::parseNumber(fields[2]);
    auto c = detail::parseNumber(fields[3]);
    if (!v || !a || !c) throw ParseError(lineNo, "non-numeric score for '" + e.word + "'");
    if (*v < 1 || *v > 9 || *a < 1 || *a > 9)
      throw RangeError("line " + std::to_string(lineNo) + ": valence/arousal outside [1,9] for '" + e.word + "'");
    if (*c < 1 || *c > 5)
      throw RangeError("line " + std::to_string(lineNo) + ": concreteness outside [1,5] for '" + e.word + "'");
    e.rawValence = *v;
    e.rawArousal = *a;
    e.concreteness = *c;
    e.affect = normalizeNineScale(*v, *a);
    if (!lex.insert(e) && warnings)
      warnings->push_back("line " + std::to_string(lineNo) + ": duplicate word '" + e.word + "', keeping last");
  }
  if (!headerSeen) throw ParseError(lineNo, "missing header");
  return lex;
}

inline const Lexicon& demoLexicon() {
  static const Lexicon lex = loadLexicon(data::kDemoLexiconCsv);
  return lex;
}

struct MetaphorQuery {
  VAPoint target;
  double minConcreteness = 3.5;
  std::set<std::string> excluded;
  std::size_t maxResults = 5;
};

// Nearest entries to the target affect, ordered by (distance, word).
inline std::vector<LexiconEntry> queryMetaphor(const Lexicon& lex, const MetaphorQuery& q) {
  if (q.maxResults < 1) throw InvalidArgument("maxResults must be >= 1");
  std::set<std::string> excluded;
  for (const auto& w : q.excluded) excluded.insert(caseFold(w));

  std::vector<std::pair<double, const LexiconEntry*>> hits;
  for (const auto& [word, entry] : lex.entries()) {
    if (entry.concreteness < q.minConcreteness || excluded.contains(word)) continue;
    hits.emplace_back(distance(entry.affect, q.target), &entry);
  }
  if (hits.empty()) throw EmptyResult("no lexicon entry satisfies the query constraints");
  const std::size_t keep = std::min(q.maxResults, hits.size());
  // entries() iterates alphabetically, so a stable sort on distance keeps word order on ties
  std::stable_sort(hits.begin(), hits.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<LexiconEntry> out;
  out.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i) out.push_back(*hits[i].second);
  return out;
}

}  // namespace copaint
