#pragma once

#include <cstdint>
#include <functional>

#include "keyforge/markov.hpp"
#include "keyforge/partition.hpp"

namespace keyforge {

/// (π_A P_AB 1 + π_B P_BA 1) · (1/√(π_A 1) + 1/√(π_B 1)).
double partition_objective(const TransitionModel& model, const Partition& p);

struct PartitionSearchOptions {
  int min_size = 1;      // smallest admissible cluster
  unsigned threads = 1;  // enumeration workers; the result does not depend on it
};

inline constexpr std::size_t kMaxExactAlphabet = 26;

/// Exhaustive Gray-code search over the 2^(n-1) - 1 canonical masks. Ties go
/// to the lowest mask.
Partition best_partition_exact(const TransitionModel& model,
                               const PartitionSearchOptions& opts = {});

/// Serial Gray-code walk over every canonical mask with both clusters
/// non-empty and of positive mass, reporting the incrementally maintained
/// objective. Used to audit the incremental update.
void enumerate_partitions(const TransitionModel& model,
                          const std::function<void(std::uint64_t mask, double objective)>& visit);

/// Best-improvement hill climbing over single-letter moves and A/B swaps from
/// `restarts` random balanced starts drawn from one seeded stream.
Partition best_partition_local(const TransitionModel& model, int restarts, std::uint64_t seed,
                               const PartitionSearchOptions& opts = {});

}  // namespace keyforge
