#pragma once

#include <cstdint>
#include <vector>

#include "bfpqc/classify.hpp"
#include "bfpqc/pattern.hpp"

namespace bfpqc {

// Everything Alice can pin down about the hidden cluster function after a
// partial verdict. She knows f (idenfied by index), so for a left cluster
// g * f every block of the hidden pattern is p_f or its negation with the
// signs unknown, and for a right cluster f * g the equal/negated flag of
// every block is already fixed by the bits of p_f while g itself stays
// unknown. Extra revealed bits are folded in by propagate_bit.
struct ClusterKnowledge {
  enum class Side { kLeft, kRight };

  Side side = Side::kLeft;
  int n = 1;  // half rank of the f part
  int m = 1;  // half rank of the g part
  std::uint64_t f_index = 0;
  PatternVector f_pattern;  // member f_index of I_2n

  // Left: resolved sign per block (-1 unknown, 0 equals p_f, 1 negated).
  std::vector<std::int8_t> block_sign;
  // Right: resolved bits of p_g (-1 unknown).
  std::vector<std::int8_t> g_bits;

  std::uint64_t block_length() const {
    return std::uint64_t{1} << (side == Side::kLeft ? 2 * n : 2 * m);
  }
  std::uint64_t num_blocks() const {
    return std::uint64_t{1} << (side == Side::kLeft ? 2 * m : 2 * n);
  }
  int total_rank() const { return 2 * (n + m); }

  // Right side only: block r is the negation of p_g exactly when bit r of
  // p_f is set.
  bool right_block_negated(std::uint64_t r) const;
};

// Builds the knowledge ledger from a partial verdict. Throws unless the
// verdict is PartialLeft (left-cluster announcement) or PartialRight.
ClusterKnowledge derive_knowledge(const ClassificationResult& result,
                                  const ClassTag& announced);

// True iff the candidate pattern satisfies every recorded constraint:
// blockwise p_f/negation structure (left) or the fixed equal/negated block
// relations (right), plus any bits pinned by propagate_bit.
bool check_consistency(const ClusterKnowledge& knowledge,
                       const PatternVector& candidate);

// All completions h = g * f (left) or f * g (right) with g running over
// B_2m, filtered through check_consistency. Exhaustive, so the total rank is
// capped.
std::vector<PatternVector> enumerate_completions(const ClusterKnowledge& knowledge,
                                                 int max_total_rank = 12);

// Folds in one revealed bit of the hidden pattern (global position, LSB
// first). Left: fixes the sign of the containing block. Right: fixes one bit
// of p_g, i.e. the corresponding bit of every block. Throws if the value
// contradicts what is already known; re-revealing a known bit is a no-op.
ClusterKnowledge propagate_bit(const ClusterKnowledge& knowledge,
                               std::uint64_t position, int value);

}  // namespace bfpqc
