#include "bfpqc/knowledge.hpp"

#include <stdexcept>

namespace bfpqc {

bool ClusterKnowledge::right_block_negated(std::uint64_t r) const {
  if (side != Side::kRight) {
    throw std::logic_error("block flags are only resolved on the right side");
  }
  return f_pattern.bit(r) != 0;
}

ClusterKnowledge derive_knowledge(const ClassificationResult& result,
                                  const ClassTag& announced) {
  announced.validate();
  const VerdictKind kind = result.verdict.kind;
  if (kind == VerdictKind::kPartialLeft &&
      announced.kind != ClassTag::Kind::kLeftCluster) {
    throw std::invalid_argument("left verdict needs a left-cluster announcement");
  }
  if (kind == VerdictKind::kPartialRight &&
      announced.kind != ClassTag::Kind::kRightCluster) {
    throw std::invalid_argument("right verdict needs a right-cluster announcement");
  }
  if (kind != VerdictKind::kPartialLeft && kind != VerdictKind::kPartialRight) {
    throw std::invalid_argument("knowledge is only defined for cluster verdicts");
  }

  ClusterKnowledge k{
      kind == VerdictKind::kPartialLeft ? ClusterKnowledge::Side::kLeft
                                        : ClusterKnowledge::Side::kRight,
      announced.n,
      announced.m,
      result.verdict.f_index,
      basis_member(BasisFamily::kImbalancedI, announced.n, result.verdict.f_index),
      {},
      {}};
  if (k.side == ClusterKnowledge::Side::kLeft) {
    k.block_sign.assign(k.num_blocks(), -1);
  } else {
    k.g_bits.assign(k.block_length(), -1);
  }
  return k;
}

bool check_consistency(const ClusterKnowledge& knowledge,
                       const PatternVector& candidate) {
  if (candidate.arity() != knowledge.total_rank()) {
    throw std::invalid_argument("candidate arity does not match the cluster rank");
  }

  if (knowledge.side == ClusterKnowledge::Side::kLeft) {
    const PatternVector& f = knowledge.f_pattern;
    const PatternVector nf = f.negated();
    for (std::uint64_t r = 0; r < knowledge.num_blocks(); ++r) {
      const PatternVector block = extract_block(candidate, r, 2 * knowledge.n);
      int sign;
      if (block == f) {
        sign = 0;
      } else if (block == nf) {
        sign = 1;
      } else {
        return false;
      }
      if (knowledge.block_sign[r] >= 0 && knowledge.block_sign[r] != sign) {
        return false;
      }
    }
    return true;
  }

  // Right side: block 0's relation to p_g is known, so the implied p_g must
  // reproduce every other block under its flag, and must agree with any
  // pinned bits.
  const PatternVector block0 = extract_block(candidate, 0, 2 * knowledge.m);
  const PatternVector base =
      knowledge.right_block_negated(0) ? block0.negated() : block0;
  for (std::uint64_t r = 1; r < knowledge.num_blocks(); ++r) {
    const PatternVector block = extract_block(candidate, r, 2 * knowledge.m);
    const PatternVector expected =
        knowledge.right_block_negated(r) ? base.negated() : base;
    if (!(block == expected)) return false;
  }
  for (std::uint64_t pos = 0; pos < knowledge.block_length(); ++pos) {
    if (knowledge.g_bits[pos] >= 0 && knowledge.g_bits[pos] != base.bit(pos)) {
      return false;
    }
  }
  return true;
}

std::vector<PatternVector> enumerate_completions(const ClusterKnowledge& knowledge,
                                                 int max_total_rank) {
  if (knowledge.total_rank() > max_total_rank) {
    throw std::length_error("completion enumeration is capped at total rank " +
                            std::to_string(max_total_rank));
  }
  std::vector<PatternVector> out;
  const std::uint64_t count = std::uint64_t{1} << (2 * knowledge.m);
  for (std::uint64_t j = 0; j < count; ++j) {
    const PatternVector g = basis_member(BasisFamily::kBalancedB, knowledge.m, j);
    const PatternVector h = knowledge.side == ClusterKnowledge::Side::kLeft
                                ? product(g, knowledge.f_pattern)
                                : product(knowledge.f_pattern, g);
    if (check_consistency(knowledge, h)) out.push_back(h);
  }
  return out;
}

ClusterKnowledge propagate_bit(const ClusterKnowledge& knowledge,
                               std::uint64_t position, int value) {
  if (value != 0 && value != 1) {
    throw std::invalid_argument("revealed bit must be 0 or 1");
  }
  if (position >= (std::uint64_t{1} << knowledge.total_rank())) {
    throw std::out_of_range("revealed position out of range");
  }

  ClusterKnowledge next = knowledge;
  const std::uint64_t r = position / knowledge.block_length();
  const std::uint64_t offset = position % knowledge.block_length();

  if (knowledge.side == ClusterKnowledge::Side::kLeft) {
    // Any one bit decides whether the whole block is p_f or its negation.
    const int sign = value ^ knowledge.f_pattern.bit(offset);
    if (knowledge.block_sign[r] >= 0 && knowledge.block_sign[r] != sign) {
      throw std::invalid_argument("revealed bit contradicts a resolved block");
    }
    next.block_sign[r] = static_cast<std::int8_t>(sign);
  } else {
    // One bit of a block pins the same position of p_g, hence of every block.
    const int g_bit = value ^ (knowledge.right_block_negated(r) ? 1 : 0);
    if (knowledge.g_bits[offset] >= 0 && knowledge.g_bits[offset] != g_bit) {
      throw std::invalid_argument("revealed bit contradicts a known g bit");
    }
    next.g_bits[offset] = static_cast<std::int8_t>(g_bit);
  }
  return next;
}

}  // namespace bfpqc
