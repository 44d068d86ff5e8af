#pragma once

#include <fstream>
#include <string>

#include "keyforge/corpus.hpp"
#include "keyforge/error.hpp"
#include "keyforge/markov.hpp"

namespace fixtures {

inline std::string data_path(const std::string& name) { return std::string(KEYFORGE_DATA_DIR) + "/" + name; }

inline keyforge::TransitionModel model_from_csv(const std::string& name) {
  std::ifstream in(data_path(name));
  if (!in) throw keyforge::DataError("missing fixture " + name);
  const auto records = keyforge::read_word_frequency_csv(in);
  return keyforge::build_model(keyforge::ingest_word_frequencies(records, keyforge::Alphabet()));
}

/// Model of the bundled English word list, built once.
inline const keyforge::TransitionModel& english() {
  static const keyforge::TransitionModel model = model_from_csv("words_en.csv");
  return model;
}

inline std::string alice_text() {
  std::ifstream in(data_path("alice.txt"), std::ios::binary);
  std::string raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return keyforge::normalize_text(raw);
}

}  // namespace fixtures
