#include "keyforge/alphabet.hpp"

#include "keyforge/error.hpp"

namespace keyforge {

Alphabet::Alphabet() : Alphabet("abcdefghijklmnopqrstuvwxyz") {}

Alphabet::Alphabet(std::string_view letters) : letters_(letters) {
  index_.fill(-1);
  if (letters_.empty()) throw DataError("alphabet is empty");
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    auto& slot = index_[static_cast<unsigned char>(letters_[i])];
    if (slot >= 0) throw DataError(std::string("duplicate alphabet symbol '") + letters_[i] + "'");
    slot = static_cast<int>(i);
  }
}

int Alphabet::require_index(char c) const {
  const int i = index(c);
  if (i < 0) throw DataError(std::string("symbol '") + c + "' is not in the alphabet");
  return i;
}

Alphabet Alphabet::subset(std::span<const int> indices) const {
  std::string s;
  s.reserve(indices.size());
  for (int i : indices) s.push_back(letters_.at(static_cast<std::size_t>(i)));
  return Alphabet(s);
}

}  // namespace keyforge
