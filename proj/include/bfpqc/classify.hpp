#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "bfpqc/pattern.hpp"
#include "bfpqc/sim.hpp"

namespace bfpqc {

// The simulator is exact up to rounding; these thresholds only absorb
// floating-point noise and would be retuned for a noisy backend.
inline constexpr double kPointMassThreshold = 1.0 - 1e-6;
inline constexpr double kUniformTolerance = 1e-6;

// What Bob announces before the game: the promised class F_2n, or a cluster
// of it by G_2m. For clusters the f-part half-rank is n and the g-part
// half-rank is m; left means g * f (g on the most significant qubits), right
// means f * g.
struct ClassTag {
  enum class Kind { kPromised, kLeftCluster, kRightCluster };

  Kind kind = Kind::kPromised;
  int n = 1;
  int m = 0;

  static ClassTag promised(int n) { return {Kind::kPromised, n, 0}; }
  static ClassTag left_cluster(int m, int n) { return {Kind::kLeftCluster, n, m}; }
  static ClassTag right_cluster(int n, int m) { return {Kind::kRightCluster, n, m}; }

  int total_rank() const { return 2 * (n + m); }
  void validate() const;
};

// Bob's move: the hidden function plus the announced class. The announcement
// is trusted (game rule: Bob must announce truthfully).
struct OracleSpec {
  PatternVector pattern;
  ClassTag announced;

  void validate() const;  // pattern arity must equal the announced rank
};

enum class VerdictKind { kIdentified, kPartialLeft, kPartialRight, kInconclusive };
enum class Winner { kAlice, kBob };

struct Verdict {
  VerdictKind kind = VerdictKind::kInconclusive;
  std::uint64_t f_index = 0;  // meaningful unless inconclusive
  // The content of the unresolved sub-register in a single sampled shot;
  // only filled by play_game for cluster verdicts.
  std::optional<std::uint64_t> random_part;
};

struct ClassificationResult {
  Verdict verdict;
  OutcomeDistribution distribution;
  Winner winner = Winner::kBob;
  std::optional<std::uint64_t> sampled_outcome;  // filled by play_game
};

// Counts oracle queries across one pipeline run; the algorithm uses exactly
// one.
struct PipelineTrace {
  std::size_t oracle_queries = 0;
};

// The full pipeline: |0...0> -> Hadamard layer -> phase oracle -> classifier
// -> exact measurement distribution.
OutcomeDistribution run_circuit(const OracleSpec& oracle,
                                PipelineTrace* trace = nullptr,
                                int max_qubits = kDefaultMaxRank);

// Reads the verdict off an exact distribution. Promised: a point mass at i
// identifies f_i. Left cluster: the low 2n bits must be deterministic and
// the high 2m bits uniform; right cluster mirrors that. Anything else is
// inconclusive (never an error), and Bob wins.
ClassificationResult classify(const OutcomeDistribution& dist,
                              const ClassTag& announced);

// One round of the game: run the circuit once, sample a single shot with the
// given seed, classify from the exact distribution.
ClassificationResult play_game(const OracleSpec& bob, std::uint64_t seed,
                               int max_qubits = kDefaultMaxRank);

std::string to_string(VerdictKind kind);
std::string to_string(Winner winner);

}  // namespace bfpqc
