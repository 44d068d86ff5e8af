#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "keyforge/alphabet.hpp"

namespace keyforge {

struct WordFrequencyRecord {
  std::string word;
  double count = 0.0;
};

/// Square count matrix; counts(i, j) is the weight of the bigram i→j.
struct BigramCounts {
  Alphabet alphabet;
  Eigen::MatrixXd counts;
};

/// Per-record tally kept while reading and ingesting corpora.
struct IngestStats {
  std::size_t records = 0;    // records seen
  std::size_t used = 0;       // records that contributed to the counts
  std::size_t skipped = 0;    // too short after filtering
  std::size_t malformed = 0;  // unparsable line or negative/NaN count
};

/// Reads `word,count` lines. A first line whose count field is not numeric is
/// treated as a header. Malformed lines are tallied and dropped.
std::vector<WordFrequencyRecord> read_word_frequency_csv(std::istream& in,
                                                         IngestStats* stats = nullptr);

/// Splits a word into maximal runs of alphabet symbols after ASCII
/// lowercasing. Bigrams never cross a removed character.
std::vector<std::string> word_segments(std::string_view word, const Alphabet& alphabet);

/// Accumulates count × (occurrences of each adjacent pair) over the records.
/// Throws DataError("empty corpus") when nothing usable remains.
BigramCounts ingest_word_frequencies(std::span<const WordFrequencyRecord> records,
                                     const Alphabet& alphabet,
                                     IngestStats* stats = nullptr);

/// Letter frequencies weighted by word count, normalized to sum to one.
Eigen::VectorXd letter_frequencies(std::span<const WordFrequencyRecord> records,
                                   const Alphabet& alphabet);

/// Lowercases ASCII and drops every symbol outside the alphabet.
std::string normalize_text(std::string_view raw, const Alphabet& alphabet = Alphabet());

}  // namespace keyforge
