#include "keyforge/partition.hpp"

#include <bit>

#include "keyforge/error.hpp"

namespace keyforge {

Partition::Partition(Alphabet alphabet, std::uint64_t mask) : alphabet_(std::move(alphabet)) {
  const std::size_t n = alphabet_.size();
  if (n > 64) throw DataError("partitions support at most 64 letters");
  const std::uint64_t full = full_mask(n);
  mask &= full;
  if (!(mask & 1u)) mask = full & ~mask;
  if (mask == full || mask == 0) throw DataError("both clusters must be non-empty");
  mask_ = mask;
}

Partition Partition::from_letters(const Alphabet& alphabet, std::string_view cluster_a) {
  std::uint64_t mask = 0;
  for (char c : cluster_a) mask |= std::uint64_t{1} << alphabet.require_index(c);
  return Partition(alphabet, mask);
}

std::vector<int> Partition::cluster_a() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < alphabet_.size(); ++i)
    if (in_a(static_cast<int>(i))) out.push_back(static_cast<int>(i));
  return out;
}

std::vector<int> Partition::cluster_b() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < alphabet_.size(); ++i)
    if (!in_a(static_cast<int>(i))) out.push_back(static_cast<int>(i));
  return out;
}

std::string Partition::letters_a() const {
  std::string s;
  for (int i : cluster_a()) s.push_back(alphabet_[i]);
  return s;
}

std::string Partition::letters_b() const {
  std::string s;
  for (int i : cluster_b()) s.push_back(alphabet_[i]);
  return s;
}

}  // namespace keyforge
