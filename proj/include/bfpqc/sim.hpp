#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bfpqc/pattern.hpp"

namespace bfpqc {

// Absolute tolerance for norms, unitarity and amplitude comparisons. Every
// gate in scope keeps amplitudes dyadic, so this is generous.
inline constexpr double kSimTolerance = 1e-9;

// Real-amplitude register state. Qubit 0 is the least significant index bit;
// printed outcome strings are MSB-first. Gates mutate the buffer in place:
// one state, one writer.
class StateVector {
 public:
  static StateVector zero_state(int num_qubits, int max_qubits = kDefaultMaxRank);
  static StateVector from_amplitudes(std::vector<double> amplitudes);

  int num_qubits() const { return num_qubits_; }
  std::uint64_t dimension() const { return std::uint64_t{1} << num_qubits_; }

  double amplitude(std::uint64_t index) const { return amps_.at(index); }
  const std::vector<double>& amplitudes() const { return amps_; }
  std::vector<double>& amplitudes() { return amps_; }

  double squared_norm() const;

 private:
  StateVector(int num_qubits, std::vector<double> amps)
      : num_qubits_(num_qubits), amps_(std::move(amps)) {}

  int num_qubits_;
  std::vector<double> amps_;
};

double inner_product(const StateVector& a, const StateVector& b);

// 2^(-k/2) on every basis state.
StateVector perfect_superposition(int num_qubits, int max_qubits = kDefaultMaxRank);

// Amplitude i is +2^(-n/2) when pattern bit i is 0 and -2^(-n/2) when it is
// 1; this is exactly the post-oracle image of the perfect superposition.
StateVector pattern_ket(const PatternVector& p, int max_qubits = kDefaultMaxRank);

// Multiplies amplitude x by (-1)^f(x). The |-> output register is carried
// implicitly (phase kickback) and never simulated.
void apply_phase_oracle(const PatternVector& p, StateVector& state);

// In-place fast Walsh-Hadamard transform with 1/sqrt(2) per qubit.
void hadamard_all(StateVector& state);

// The 4x4 classifier block on qubit pair (low_qubit, low_qubit+1). The
// matrix is J/2 - I (J all ones), so each 4-amplitude group maps to
// group_sum/2 - a without any matmul.
void apply_ci2(StateVector& state, int low_qubit);

// Classifier for the full register: the two-qubit block on every adjacent
// pair (0,1), (2,3), ... Requires an even qubit count.
void apply_classifier(StateVector& state);

struct OutcomeDistribution {
  int num_qubits = 0;
  std::vector<double> probabilities;

  double total() const;
};

// Born rule over the computational basis.
OutcomeDistribution measure_distribution(const StateVector& state);

// Deterministic multinomial draw: same seed, same counts. Keys are outcome
// indices; values sum to shots.
std::map<std::uint64_t, std::uint64_t> sample_counts(
    const OutcomeDistribution& dist, std::uint64_t shots, std::uint64_t seed);

// MSB-first bitstring of an outcome index, e.g. (3, 4 qubits) -> "0011".
std::string format_outcome(std::uint64_t value, int num_qubits);

// Small dense real matrix, used as the brute-force cross-check for the
// matrix-free kernels. All operators in scope are real, so transpose is the
// adjoint.
class DenseOperator {
 public:
  static DenseOperator zero(std::uint64_t dimension);
  static DenseOperator identity(std::uint64_t dimension);

  std::uint64_t dimension() const { return dim_; }
  double entry(std::uint64_t row, std::uint64_t col) const;
  void set_entry(std::uint64_t row, std::uint64_t col, double value);

  DenseOperator matmul(const DenseOperator& other) const;
  DenseOperator kron(const DenseOperator& other) const;  // other on low qubits
  DenseOperator transposed() const;
  StateVector apply(const StateVector& state) const;

  // max |M^T M - I| over all entries.
  double unitarity_defect() const;

 private:
  explicit DenseOperator(std::uint64_t dimension)
      : dim_(dimension), entries_(dimension * dimension, 0.0) {}

  std::uint64_t dim_;
  std::vector<double> entries_;
};

// Explicit classifier matrix for rank 2*half_rank: the half_rank-fold
// Kronecker power of the 4x4 block. Dense path, half_rank <= 5.
DenseOperator classifier_matrix(int half_rank);

// Elementary gates for the decomposition cross-check.
DenseOperator hadamard_gate();
DenseOperator pauli_z_gate();
DenseOperator cz_gate();

}  // namespace bfpqc
