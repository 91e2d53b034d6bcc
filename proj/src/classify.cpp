#include "bfpqc/classify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bfpqc {

void ClassTag::validate() const {
  if (n < 1) throw std::invalid_argument("promised half rank must be >= 1");
  if (kind == Kind::kPromised) {
    if (m != 0) throw std::invalid_argument("promised class carries no g part");
  } else if (m < 1) {
    throw std::invalid_argument("cluster half rank must be >= 1");
  }
}

void OracleSpec::validate() const {
  announced.validate();
  if (pattern.arity() != announced.total_rank()) {
    throw std::invalid_argument(
        "pattern arity " + std::to_string(pattern.arity()) +
        " does not match the announced rank " +
        std::to_string(announced.total_rank()));
  }
}

OutcomeDistribution run_circuit(const OracleSpec& oracle, PipelineTrace* trace,
                                int max_qubits) {
  oracle.validate();
  StateVector state = StateVector::zero_state(oracle.pattern.arity(), max_qubits);
  hadamard_all(state);
  apply_phase_oracle(oracle.pattern, state);
  if (trace) ++trace->oracle_queries;
  apply_classifier(state);
  return measure_distribution(state);
}

namespace {

// Marginal over the low `low_bits` index bits (summing the rest out), and
// its complement.
std::vector<double> marginal_low(const OutcomeDistribution& dist, int low_bits) {
  std::vector<double> out(std::uint64_t{1} << low_bits, 0.0);
  const std::uint64_t mask = (std::uint64_t{1} << low_bits) - 1;
  for (std::uint64_t x = 0; x < dist.probabilities.size(); ++x) {
    out[x & mask] += dist.probabilities[x];
  }
  return out;
}

std::vector<double> marginal_high(const OutcomeDistribution& dist, int low_bits) {
  std::vector<double> out(dist.probabilities.size() >> low_bits, 0.0);
  for (std::uint64_t x = 0; x < dist.probabilities.size(); ++x) {
    out[x >> low_bits] += dist.probabilities[x];
  }
  return out;
}

bool is_point_mass(const std::vector<double>& probs, std::uint64_t* where) {
  const auto it = std::max_element(probs.begin(), probs.end());
  if (*it < kPointMassThreshold) return false;
  *where = static_cast<std::uint64_t>(it - probs.begin());
  return true;
}

bool is_uniform(const std::vector<double>& probs) {
  const double expected = 1.0 / static_cast<double>(probs.size());
  for (double p : probs) {
    if (std::abs(p - expected) > kUniformTolerance) return false;
  }
  return true;
}

}  // namespace

ClassificationResult classify(const OutcomeDistribution& dist,
                              const ClassTag& announced) {
  announced.validate();
  if (dist.num_qubits != announced.total_rank()) {
    throw std::invalid_argument("distribution rank does not match the announcement");
  }

  ClassificationResult result;
  result.distribution = dist;

  std::uint64_t where = 0;
  switch (announced.kind) {
    case ClassTag::Kind::kPromised:
      if (is_point_mass(dist.probabilities, &where)) {
        result.verdict = {VerdictKind::kIdentified, where, std::nullopt};
      }
      break;
    case ClassTag::Kind::kLeftCluster: {
      const std::vector<double> low = marginal_low(dist, 2 * announced.n);
      const std::vector<double> high = marginal_high(dist, 2 * announced.n);
      if (is_point_mass(low, &where) && is_uniform(high)) {
        result.verdict = {VerdictKind::kPartialLeft, where, std::nullopt};
      }
      break;
    }
    case ClassTag::Kind::kRightCluster: {
      const std::vector<double> low = marginal_low(dist, 2 * announced.m);
      const std::vector<double> high = marginal_high(dist, 2 * announced.m);
      if (is_point_mass(high, &where) && is_uniform(low)) {
        result.verdict = {VerdictKind::kPartialRight, where, std::nullopt};
      }
      break;
    }
  }

  result.winner = result.verdict.kind == VerdictKind::kInconclusive
                      ? Winner::kBob
                      : Winner::kAlice;
  return result;
}

ClassificationResult play_game(const OracleSpec& bob, std::uint64_t seed,
                               int max_qubits) {
  const OutcomeDistribution dist = run_circuit(bob, nullptr, max_qubits);
  ClassificationResult result = classify(dist, bob.announced);

  const auto counts = sample_counts(dist, 1, seed);
  const std::uint64_t shot = counts.begin()->first;
  result.sampled_outcome = shot;
  if (result.verdict.kind == VerdictKind::kPartialLeft) {
    result.verdict.random_part = shot >> (2 * bob.announced.n);
  } else if (result.verdict.kind == VerdictKind::kPartialRight) {
    result.verdict.random_part = shot & ((std::uint64_t{1} << (2 * bob.announced.m)) - 1);
  }
  return result;
}

std::string to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::kIdentified: return "identified";
    case VerdictKind::kPartialLeft: return "partial_left";
    case VerdictKind::kPartialRight: return "partial_right";
    case VerdictKind::kInconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::string to_string(Winner winner) {
  return winner == Winner::kAlice ? "alice" : "bob";
}

}  // namespace bfpqc
