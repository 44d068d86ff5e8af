#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>

namespace keyforge {

/// Ordered set of distinct single-byte symbols. The order defines every
/// matrix index in the library.
class Alphabet {
 public:
  /// The 26 lowercase Latin letters.
  Alphabet();
  explicit Alphabet(std::string_view letters);

  static Alphabet latin() { return Alphabet(); }

  std::size_t size() const noexcept { return letters_.size(); }
  const std::string& letters() const noexcept { return letters_; }
  char operator[](std::size_t i) const { return letters_[i]; }

  bool contains(char c) const noexcept { return index(c) >= 0; }
  int index(char c) const noexcept {
    return index_[static_cast<unsigned char>(c)];
  }
  /// Like index() but throws DataError for unknown symbols.
  int require_index(char c) const;

  /// Sub-alphabet made of the given indices, in the given order.
  Alphabet subset(std::span<const int> indices) const;

  bool operator==(const Alphabet& other) const noexcept {
    return letters_ == other.letters_;
  }

 private:
  std::string letters_;
  std::array<int, 256> index_{};
};

}  // namespace keyforge
