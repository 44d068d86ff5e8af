#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "keyforge/alphabet.hpp"

namespace keyforge {

/// Two-cluster split of an alphabet (at most 64 symbols). Bit i of the mask set
/// means letter i belongs to cluster A. The stored form is canonical: letter 0
/// is always in A.
class Partition {
 public:
  Partition(Alphabet alphabet, std::uint64_t mask);

  /// Cluster A given by its letters; the rest form B.
  static Partition from_letters(const Alphabet& alphabet, std::string_view cluster_a);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::uint64_t mask() const noexcept { return mask_; }
  bool in_a(int i) const noexcept { return (mask_ >> i) & 1u; }

  std::vector<int> cluster_a() const;
  std::vector<int> cluster_b() const;
  std::string letters_a() const;
  std::string letters_b() const;

  bool operator==(const Partition& other) const noexcept {
    return alphabet_ == other.alphabet_ && mask_ == other.mask_;
  }

  static std::uint64_t full_mask(std::size_t n) noexcept {
    return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  }

 private:
  Alphabet alphabet_;
  std::uint64_t mask_;
};

}  // namespace keyforge
