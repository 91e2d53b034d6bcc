#include "bfpqc/sim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>

namespace bfpqc {

namespace {

void check_qubit_limit(int num_qubits, int max_qubits) {
  if (num_qubits < 1) {
    throw std::invalid_argument("need at least one qubit");
  }
  if (num_qubits > max_qubits) {
    throw std::length_error("register of " + std::to_string(num_qubits) +
                            " qubits exceeds the configured limit of " +
                            std::to_string(max_qubits));
  }
}

// 2^(-k/2), exact for even k.
double half_power_scale(int k) {
  if (k % 2 == 0) return std::ldexp(1.0, -k / 2);
  return std::sqrt(std::ldexp(1.0, -k));
}

}  // namespace

StateVector StateVector::zero_state(int num_qubits, int max_qubits) {
  check_qubit_limit(num_qubits, max_qubits);
  std::vector<double> amps(std::uint64_t{1} << num_qubits, 0.0);
  amps[0] = 1.0;
  return StateVector(num_qubits, std::move(amps));
}

StateVector StateVector::from_amplitudes(std::vector<double> amplitudes) {
  const std::size_t n = amplitudes.size();
  if (n < 2 || (n & (n - 1)) != 0) {
    throw std::invalid_argument("amplitude count must be a power of two >= 2");
  }
  const int k = std::countr_zero(n);
  return StateVector(k, std::move(amplitudes));
}

double StateVector::squared_norm() const {
  double total = 0.0;
  for (double a : amps_) total += a * a;
  return total;
}

double inner_product(const StateVector& a, const StateVector& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw std::invalid_argument("inner product requires equal register sizes");
  }
  double total = 0.0;
  for (std::uint64_t i = 0; i < a.dimension(); ++i) {
    total += a.amplitude(i) * b.amplitude(i);
  }
  return total;
}

StateVector perfect_superposition(int num_qubits, int max_qubits) {
  check_qubit_limit(num_qubits, max_qubits);
  const double a = half_power_scale(num_qubits);
  return StateVector::from_amplitudes(
      std::vector<double>(std::uint64_t{1} << num_qubits, a));
}

StateVector pattern_ket(const PatternVector& p, int max_qubits) {
  check_qubit_limit(p.arity(), max_qubits);
  const double a = half_power_scale(p.arity());
  std::vector<double> amps(p.size(), a);
  for (std::uint64_t i = 0; i < p.size(); ++i) {
    if (p.bit(i)) amps[i] = -a;
  }
  return StateVector::from_amplitudes(std::move(amps));
}

void apply_phase_oracle(const PatternVector& p, StateVector& state) {
  if (p.arity() != state.num_qubits()) {
    throw std::invalid_argument("oracle arity does not match the register");
  }
  std::vector<double>& amps = state.amplitudes();
  const std::vector<std::uint64_t>& words = p.words();
  for (std::size_t w = 0; w < words.size(); ++w) {
    std::uint64_t bits = words[w];
    while (bits) {
      const int b = std::countr_zero(bits);
      bits &= bits - 1;
      const std::uint64_t x = (std::uint64_t{w} << 6) | static_cast<unsigned>(b);
      amps[x] = -amps[x];
    }
  }
}

void hadamard_all(StateVector& state) {
  std::vector<double>& amps = state.amplitudes();
  const std::uint64_t dim = state.dimension();
  for (std::uint64_t len = 1; len < dim; len <<= 1) {
    for (std::uint64_t i = 0; i < dim; i += len << 1) {
      for (std::uint64_t j = i; j < i + len; ++j) {
        const double a = amps[j];
        const double b = amps[j + len];
        amps[j] = a + b;
        amps[j + len] = a - b;
      }
    }
  }
  const double scale = half_power_scale(state.num_qubits());
  for (double& a : amps) a *= scale;
}

void apply_ci2(StateVector& state, int low_qubit) {
  if (low_qubit < 0 || low_qubit + 1 >= state.num_qubits()) {
    throw std::out_of_range("qubit pair out of range");
  }
  std::vector<double>& amps = state.amplitudes();
  const std::uint64_t step = std::uint64_t{1} << low_qubit;
  const std::uint64_t low_mask = step - 1;
  const std::uint64_t groups = state.dimension() >> 2;
  for (std::uint64_t g = 0; g < groups; ++g) {
    // Spread the group id around the two target bits.
    const std::uint64_t base = ((g & ~low_mask) << 2) | (g & low_mask);
    const std::uint64_t i0 = base;
    const std::uint64_t i1 = base + step;
    const std::uint64_t i2 = base + 2 * step;
    const std::uint64_t i3 = base + 3 * step;
    const double half = 0.5 * (amps[i0] + amps[i1] + amps[i2] + amps[i3]);
    amps[i0] = half - amps[i0];
    amps[i1] = half - amps[i1];
    amps[i2] = half - amps[i2];
    amps[i3] = half - amps[i3];
  }
}

void apply_classifier(StateVector& state) {
  if (state.num_qubits() % 2 != 0) {
    throw std::invalid_argument("the classifier needs an even qubit count");
  }
  for (int q = 0; q < state.num_qubits(); q += 2) {
    apply_ci2(state, q);
  }
}

double OutcomeDistribution::total() const {
  double sum = 0.0;
  for (double p : probabilities) sum += p;
  return sum;
}

OutcomeDistribution measure_distribution(const StateVector& state) {
  OutcomeDistribution dist;
  dist.num_qubits = state.num_qubits();
  dist.probabilities.resize(state.dimension());
  for (std::uint64_t i = 0; i < state.dimension(); ++i) {
    const double a = state.amplitude(i);
    dist.probabilities[i] = a * a;
  }
  return dist;
}

std::map<std::uint64_t, std::uint64_t> sample_counts(
    const OutcomeDistribution& dist, std::uint64_t shots, std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("shots must be at least 1");
  std::vector<double> cumulative(dist.probabilities.size());
  double running = 0.0;
  for (std::size_t i = 0; i < dist.probabilities.size(); ++i) {
    running += dist.probabilities[i];
    cumulative[i] = running;
  }

  std::mt19937_64 rng(seed);
  std::map<std::uint64_t, std::uint64_t> counts;
  for (std::uint64_t s = 0; s < shots; ++s) {
    // 53 uniform bits; avoids the library-dependent distribution adaptors.
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * running;
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    std::uint64_t outcome = it == cumulative.end()
                                ? cumulative.size() - 1
                                : static_cast<std::uint64_t>(it - cumulative.begin());
    ++counts[outcome];
  }
  return counts;
}

std::string format_outcome(std::uint64_t value, int num_qubits) {
  std::string out(static_cast<std::size_t>(num_qubits), '0');
  for (int b = 0; b < num_qubits; ++b) {
    if ((value >> b) & 1) out[num_qubits - 1 - b] = '1';
  }
  return out;
}

DenseOperator DenseOperator::zero(std::uint64_t dimension) {
  if (dimension < 1) throw std::invalid_argument("dimension must be positive");
  return DenseOperator(dimension);
}

DenseOperator DenseOperator::identity(std::uint64_t dimension) {
  DenseOperator op = zero(dimension);
  for (std::uint64_t i = 0; i < dimension; ++i) op.set_entry(i, i, 1.0);
  return op;
}

double DenseOperator::entry(std::uint64_t row, std::uint64_t col) const {
  if (row >= dim_ || col >= dim_) throw std::out_of_range("entry out of range");
  return entries_[row * dim_ + col];
}

void DenseOperator::set_entry(std::uint64_t row, std::uint64_t col, double value) {
  if (row >= dim_ || col >= dim_) throw std::out_of_range("entry out of range");
  entries_[row * dim_ + col] = value;
}

DenseOperator DenseOperator::matmul(const DenseOperator& other) const {
  if (dim_ != other.dim_) {
    throw std::invalid_argument("matmul requires equal dimensions");
  }
  DenseOperator out = zero(dim_);
  for (std::uint64_t r = 0; r < dim_; ++r) {
    for (std::uint64_t k = 0; k < dim_; ++k) {
      const double v = entries_[r * dim_ + k];
      if (v == 0.0) continue;
      for (std::uint64_t c = 0; c < dim_; ++c) {
        out.entries_[r * dim_ + c] += v * other.entries_[k * dim_ + c];
      }
    }
  }
  return out;
}

DenseOperator DenseOperator::kron(const DenseOperator& other) const {
  DenseOperator out = zero(dim_ * other.dim_);
  for (std::uint64_t r1 = 0; r1 < dim_; ++r1) {
    for (std::uint64_t c1 = 0; c1 < dim_; ++c1) {
      const double v = entries_[r1 * dim_ + c1];
      if (v == 0.0) continue;
      for (std::uint64_t r2 = 0; r2 < other.dim_; ++r2) {
        for (std::uint64_t c2 = 0; c2 < other.dim_; ++c2) {
          out.set_entry(r1 * other.dim_ + r2, c1 * other.dim_ + c2,
                        v * other.entries_[r2 * other.dim_ + c2]);
        }
      }
    }
  }
  return out;
}

DenseOperator DenseOperator::transposed() const {
  DenseOperator out = zero(dim_);
  for (std::uint64_t r = 0; r < dim_; ++r) {
    for (std::uint64_t c = 0; c < dim_; ++c) {
      out.entries_[c * dim_ + r] = entries_[r * dim_ + c];
    }
  }
  return out;
}

StateVector DenseOperator::apply(const StateVector& state) const {
  if (state.dimension() != dim_) {
    throw std::invalid_argument("operator and state dimensions differ");
  }
  std::vector<double> out(dim_, 0.0);
  for (std::uint64_t r = 0; r < dim_; ++r) {
    double acc = 0.0;
    for (std::uint64_t c = 0; c < dim_; ++c) {
      acc += entries_[r * dim_ + c] * state.amplitude(c);
    }
    out[r] = acc;
  }
  return StateVector::from_amplitudes(std::move(out));
}

double DenseOperator::unitarity_defect() const {
  const DenseOperator gram = transposed().matmul(*this);
  double defect = 0.0;
  for (std::uint64_t r = 0; r < dim_; ++r) {
    for (std::uint64_t c = 0; c < dim_; ++c) {
      const double expected = r == c ? 1.0 : 0.0;
      defect = std::max(defect, std::abs(gram.entry(r, c) - expected));
    }
  }
  return defect;
}

DenseOperator classifier_matrix(int half_rank) {
  if (half_rank < 1 || half_rank > 5) {
    throw std::invalid_argument("dense classifier only built for half rank 1..5");
  }
  DenseOperator block = DenseOperator::zero(4);
  for (std::uint64_t r = 0; r < 4; ++r) {
    for (std::uint64_t c = 0; c < 4; ++c) {
      block.set_entry(r, c, r == c ? -0.5 : 0.5);
    }
  }
  DenseOperator out = block;
  for (int step = 1; step < half_rank; ++step) {
    out = block.kron(out);
  }
  return out;
}

DenseOperator hadamard_gate() {
  DenseOperator h = DenseOperator::zero(2);
  const double s = 1.0 / std::sqrt(2.0);
  h.set_entry(0, 0, s);
  h.set_entry(0, 1, s);
  h.set_entry(1, 0, s);
  h.set_entry(1, 1, -s);
  return h;
}

DenseOperator pauli_z_gate() {
  DenseOperator z = DenseOperator::zero(2);
  z.set_entry(0, 0, 1.0);
  z.set_entry(1, 1, -1.0);
  return z;
}

DenseOperator cz_gate() {
  DenseOperator cz = DenseOperator::identity(4);
  cz.set_entry(3, 3, -1.0);
  return cz;
}

}  // namespace bfpqc
