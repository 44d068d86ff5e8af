#include "keyforge/cluster.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "keyforge/error.hpp"
#include "keyforge/parallel.hpp"

namespace keyforge {
namespace {

/// S = F + Fᵀ with F = diag(π) P: the symmetric traffic between letters.
Eigen::MatrixXd traffic(const TransitionModel& model) {
  const Eigen::MatrixXd F = model.pi.asDiagonal() * model.P;
  return F + F.transpose();
}

double mass_floor(const TransitionModel& model) { return 1e-15 * model.pi.sum(); }

double naive_objective(const Eigen::MatrixXd& S, const Eigen::VectorXd& pi, std::uint64_t mask,
                       double floor) {
  const Eigen::Index n = S.rows();
  double cross = 0.0, ma = 0.0, mb = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const bool ai = (mask >> i) & 1u;
    (ai ? ma : mb) += pi(i);
    if (!ai) continue;
    for (Eigen::Index j = 0; j < n; ++j)
      if (!((mask >> j) & 1u)) cross += S(i, j);
  }
  if (ma <= floor || mb <= floor) return -std::numeric_limits<double>::infinity();
  return cross * (1.0 / std::sqrt(ma) + 1.0 / std::sqrt(mb));
}

/// Incremental state of a Gray-code walk.
struct WalkState {
  const Eigen::MatrixXd& S;
  const Eigen::VectorXd& pi;
  Eigen::VectorXd row_sum;
  Eigen::VectorXd sum_a;  // sum_a(j) = Σ_{i∈A} S(j, i)
  std::uint64_t mask = 0;
  double cross = 0.0, mass_a = 0.0, mass_b = 0.0;
  int size_a = 0;

  WalkState(const Eigen::MatrixXd& s, const Eigen::VectorXd& p, std::uint64_t start)
      : S(s), pi(p), row_sum(s.rowwise().sum()), sum_a(Eigen::VectorXd::Zero(s.rows())) {
    mask = start;
    const Eigen::Index n = S.rows();
    for (Eigen::Index i = 0; i < n; ++i) {
      if ((mask >> i) & 1u) {
        mass_a += pi(i);
        ++size_a;
        sum_a += S.col(i);
      } else {
        mass_b += pi(i);
      }
    }
    for (Eigen::Index i = 0; i < n; ++i)
      if ((mask >> i) & 1u) cross += row_sum(i) - sum_a(i);
  }

  void flip(int l) {
    if ((mask >> l) & 1u) {  // A → B
      cross += 2.0 * sum_a(l) - S(l, l) - row_sum(l);
      mass_a -= pi(l);
      mass_b += pi(l);
      --size_a;
      sum_a -= S.col(l);
    } else {  // B → A
      cross += row_sum(l) - S(l, l) - 2.0 * sum_a(l);
      mass_a += pi(l);
      mass_b -= pi(l);
      ++size_a;
      sum_a += S.col(l);
    }
    mask ^= std::uint64_t{1} << l;
  }

  double objective(double floor) const {
    if (mass_a <= floor || mass_b <= floor) return -std::numeric_limits<double>::infinity();
    return cross * (1.0 / std::sqrt(mass_a) + 1.0 / std::sqrt(mass_b));
  }
};

std::uint64_t gray_mask(std::uint64_t k) { return 1u | ((k ^ (k >> 1)) << 1); }

struct Candidate {
  double value = -std::numeric_limits<double>::infinity();
  std::uint64_t mask = 0;
};

bool better(double v, std::uint64_t m, const Candidate& c) {
  return v > c.value || (v == c.value && m < c.mask);
}

}  // namespace

double partition_objective(const TransitionModel& model, const Partition& p) {
  if (!(p.alphabet() == model.alphabet)) throw DataError("partition alphabet mismatch");
  const double v = naive_objective(traffic(model), model.pi, p.mask(), 0.0);
  if (!std::isfinite(v)) throw DataError("zero-mass cluster");
  return v;
}

void enumerate_partitions(const TransitionModel& model,
                          const std::function<void(std::uint64_t, double)>& visit) {
  const std::size_t n = model.size();
  if (n > kMaxExactAlphabet) throw DataError("alphabet too large for exhaustive search; use local search");
  const Eigen::MatrixXd S = traffic(model);
  const double floor = mass_floor(model);
  const std::uint64_t total = std::uint64_t{1} << (n - 1);
  const std::uint64_t full = Partition::full_mask(n);
  WalkState st(S, model.pi, gray_mask(0));
  for (std::uint64_t k = 0; k < total; ++k) {
    if (st.mask != full) {
      const double v = st.objective(floor);
      if (std::isfinite(v)) visit(st.mask, v);
    }
    if (k + 1 < total) st.flip(std::countr_zero(k + 1) + 1);
  }
}

Partition best_partition_exact(const TransitionModel& model, const PartitionSearchOptions& opts) {
  const std::size_t n = model.size();
  if (n > kMaxExactAlphabet) throw DataError("alphabet too large for exhaustive search; use local search");
  const Eigen::MatrixXd S = traffic(model);
  const double floor = mass_floor(model);
  const std::uint64_t total = std::uint64_t{1} << (n - 1);
  const std::uint64_t full = Partition::full_mask(n);
  const int min_size = std::max(1, opts.min_size);

  // Fixed chunking keeps the floating-point path independent of the thread count.
  const unsigned chunk_bits = static_cast<unsigned>(std::min<std::size_t>(n - 1, 8));
  const std::uint64_t chunks = std::uint64_t{1} << chunk_bits;
  const std::uint64_t per_chunk = total / chunks;

  // Near-ties (relative 1e-9) are kept and re-scored from scratch at the end.
  std::vector<std::vector<Candidate>> shortlist(chunks);
  parallel_for(chunks, opts.threads, [&](std::size_t c) {
    const std::uint64_t k0 = c * per_chunk, k1 = k0 + per_chunk;
    WalkState st(S, model.pi, gray_mask(k0));
    double best = -std::numeric_limits<double>::infinity();
    auto& list = shortlist[c];
    for (std::uint64_t k = k0; k < k1; ++k) {
      const int size_b = static_cast<int>(n) - st.size_a;
      if (st.mask != full && st.size_a >= min_size && size_b >= min_size) {
        const double v = st.objective(floor);
        if (v >= best - 1e-9 * std::abs(best)) {
          if (v > best) {
            best = v;
            std::erase_if(list, [&](const Candidate& x) { return x.value < best - 1e-9 * std::abs(best); });
          }
          list.push_back({v, st.mask});
        }
      }
      if (k + 1 < k1) st.flip(std::countr_zero(k + 1) + 1);
    }
  });

  double best_value = -std::numeric_limits<double>::infinity();
  for (const auto& list : shortlist)
    for (const auto& cand : list) best_value = std::max(best_value, cand.value);
  if (!std::isfinite(best_value)) throw DataError("no admissible partition");

  Candidate winner;
  for (const auto& list : shortlist)
    for (const auto& cand : list) {
      if (cand.value < best_value - 1e-9 * std::abs(best_value)) continue;
      const double exact = naive_objective(S, model.pi, cand.mask, floor);
      const double tie = 1e-12 * std::abs(exact);
      if (exact > winner.value + tie ||
          (std::abs(exact - winner.value) <= tie && cand.mask < winner.mask))
        winner = {exact, cand.mask};
    }
  return Partition(model.alphabet, winner.mask);
}

Partition best_partition_local(const TransitionModel& model, int restarts, std::uint64_t seed,
                               const PartitionSearchOptions& opts) {
  const std::size_t n = model.size();
  if (n > 64) throw DataError("partitions support at most 64 letters");
  const Eigen::MatrixXd S = traffic(model);
  const double floor = mass_floor(model);
  const int min_size = std::max(1, opts.min_size);
  const int N = static_cast<int>(n);

  auto admissible = [&](std::uint64_t mask) {
    const int a = std::popcount(mask);
    return a >= min_size && N - a >= min_size;
  };
  auto score = [&](std::uint64_t mask) {
    return admissible(mask) ? naive_objective(S, model.pi, mask, floor)
                            : -std::numeric_limits<double>::infinity();
  };

  std::mt19937_64 rng(seed);
  Candidate best;
  for (int r = 0; r < std::max(1, restarts); ++r) {
    std::vector<int> perm(n);
    for (int i = 0; i < N; ++i) perm[i] = i;
    for (int i = N - 1; i > 0; --i) std::swap(perm[i], perm[rng() % static_cast<std::uint64_t>(i + 1)]);
    std::uint64_t mask = 0;
    for (int i = 0; i < N / 2; ++i) mask |= std::uint64_t{1} << perm[i];
    if (!admissible(mask)) mask = 1;
    double cur = score(mask);

    for (;;) {
      std::uint64_t next = mask;
      double next_v = cur;
      auto consider = [&](std::uint64_t m) {
        const double v = score(m);
        if (v > next_v + 1e-14 * std::max(1.0, std::abs(next_v)) ||
            (!std::isfinite(next_v) && std::isfinite(v))) {
          next = m;
          next_v = v;
        }
      };
      for (int i = 0; i < N; ++i) consider(mask ^ (std::uint64_t{1} << i));
      for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
          if (((mask >> i) & 1u) && !((mask >> j) & 1u))
            consider(mask ^ (std::uint64_t{1} << i) ^ (std::uint64_t{1} << j));
      if (next == mask) break;
      mask = next;
      cur = next_v;
    }

    const std::uint64_t canon = Partition(model.alphabet, mask).mask();
    if (std::isfinite(cur) && better(cur, canon, best)) best = {cur, canon};
  }
  if (!std::isfinite(best.value)) throw DataError("no admissible partition");
  return Partition(model.alphabet, best.mask);
}

}  // namespace keyforge
