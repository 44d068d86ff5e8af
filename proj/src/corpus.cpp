#include "keyforge/corpus.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <istream>
#include <string>

#include "keyforge/error.hpp"

namespace keyforge {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool parse_count(std::string_view field, double& out) {
  field = trim(field);
  if (field.empty()) return false;
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, out);
  return ec == std::errc() && ptr == end;
}

char ascii_lower(char c) {
  return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
}

}  // namespace

std::vector<WordFrequencyRecord> read_word_frequency_csv(std::istream& in, IngestStats* stats) {
  std::vector<WordFrequencyRecord> out;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    std::string_view view = trim(line);
    if (view.empty()) continue;
    const auto comma = view.find_last_of(",\t;");
    double count = 0.0;
    const bool ok = comma != std::string_view::npos && parse_count(view.substr(comma + 1), count);
    if (first) {
      first = false;
      if (!ok) continue;  // header
    }
    if (stats) ++stats->records;
    if (!ok || !std::isfinite(count) || count < 0.0 || trim(view.substr(0, comma)).empty()) {
      if (stats) ++stats->malformed;
      continue;
    }
    out.push_back({std::string(trim(view.substr(0, comma))), count});
  }
  return out;
}

std::vector<std::string> word_segments(std::string_view word, const Alphabet& alphabet) {
  std::vector<std::string> segments(1);
  for (char raw : word) {
    const char c = ascii_lower(raw);
    if (alphabet.contains(c)) {
      segments.back().push_back(c);
    } else if (!segments.back().empty()) {
      segments.emplace_back();
    }
  }
  if (segments.back().empty()) segments.pop_back();
  return segments;
}

BigramCounts ingest_word_frequencies(std::span<const WordFrequencyRecord> records,
                                     const Alphabet& alphabet, IngestStats* stats) {
  const auto n = static_cast<Eigen::Index>(alphabet.size());
  BigramCounts result{alphabet, Eigen::MatrixXd::Zero(n, n)};
  std::size_t used = 0;
  for (const auto& rec : records) {
    if (stats) ++stats->records;
    if (!std::isfinite(rec.count) || rec.count < 0.0) {
      if (stats) ++stats->malformed;
      continue;
    }
    const auto segments = word_segments(rec.word, alphabet);
    std::size_t letters = 0;
    for (const auto& s : segments) letters += s.size();
    if (letters < 2) {
      if (stats) ++stats->skipped;
      continue;
    }
    ++used;
    if (stats) ++stats->used;
    for (const auto& s : segments)
      for (std::size_t k = 0; k + 1 < s.size(); ++k)
        result.counts(alphabet.index(s[k]), alphabet.index(s[k + 1])) += rec.count;
  }
  if (used == 0 || !(result.counts.sum() > 0.0)) throw DataError("empty corpus");
  return result;
}

Eigen::VectorXd letter_frequencies(std::span<const WordFrequencyRecord> records,
                                   const Alphabet& alphabet) {
  Eigen::VectorXd f = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(alphabet.size()));
  for (const auto& rec : records) {
    if (!std::isfinite(rec.count) || rec.count < 0.0) continue;
    for (char raw : rec.word) {
      const int i = alphabet.index(ascii_lower(raw));
      if (i >= 0) f(i) += rec.count;
    }
  }
  if (!(f.sum() > 0.0)) throw DataError("empty corpus");
  return f / f.sum();
}

std::string normalize_text(std::string_view raw, const Alphabet& alphabet) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    const char lower = ascii_lower(c);
    if (alphabet.contains(lower)) out.push_back(lower);
  }
  return out;
}

}  // namespace keyforge
