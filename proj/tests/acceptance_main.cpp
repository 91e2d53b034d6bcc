// End-to-end acceptance suite. Each criterion prints exactly one PASS/FAIL
// line; the process exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bfpqc/classify.hpp"
#include "bfpqc/knowledge.hpp"
#include "bfpqc/pattern.hpp"
#include "bfpqc/sim.hpp"

using namespace bfpqc;

namespace {

constexpr double kTol = 1e-9;

// I_4 in index order, as printed in the source tables.
const char* kI4Members[16] = {
    "0001000100011110", "0010001000101101", "0100010001001011", "1000100010000111",
    "0001000111100001", "0010001011010010", "0100010010110100", "1000100001111000",
    "0001111000010001", "0010110100100010", "0100101101000100", "1000011110001000",
    "1110000100010001", "1101001000100010", "1011010001000100", "0111100010001000",
};

// Published sign pattern of the 16x16 classifier; every entry is 1/4 in
// magnitude.
const char* kC4Signs[16] = {
    "+----+++-+++-+++", "-+--+-+++-+++-++", "--+-++-+++-+++-+", "---++++-+++-+++-",
    "-++++----+++-+++", "+-++-+--+-+++-++", "++-+--+-++-+++-+", "+++----++++-+++-",
    "-+++-++++----+++", "+-+++-++-+--+-++", "++-+++-+--+-++-+", "+++-+++----++++-",
    "-+++-+++-++++---", "+-+++-+++-++-+--", "++-+++-+++-+--+-", "+++-+++-+++----+",
};

// Truth table of f0 * f3 worked out input by input in the source example.
const int kF0StarF3Values[16] = {1, 1, 1, 0, 0, 0, 0, 1,
                                 0, 0, 0, 1, 0, 0, 0, 1};

struct Outcome {
  bool passed = false;
  std::string detail;
};

Outcome pass(const std::string& detail) { return {true, detail}; }
Outcome fail(const std::string& detail) { return {false, detail}; }

Outcome criterion_promised_certainty() {
  std::uint64_t cases = 0;
  double min_peak = 1.0;
  for (int n = 1; n <= 3; ++n) {
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << (2 * n)); ++i) {
      const OutcomeDistribution dist = run_circuit(
          {basis_member(BasisFamily::kImbalancedI, n, i), ClassTag::promised(n)});
      min_peak = std::min(min_peak, dist.probabilities[i]);
      if (dist.probabilities[i] < 1.0 - kTol) {
        return fail("probability below 1-1e-9 at n=" + std::to_string(n) +
                    " i=" + std::to_string(i));
      }
      ++cases;
    }
  }
  std::ostringstream os;
  os << cases << " circuits, min peak probability " << min_peak;
  return pass(os.str());
}

Outcome criterion_outside_uniformity() {
  std::uint64_t cases = 0;
  double worst = 0.0;
  for (int m = 1; m <= 3; ++m) {
    const double expected = std::ldexp(1.0, -2 * m);
    for (std::uint64_t j = 0; j < (std::uint64_t{1} << (2 * m)); ++j) {
      const OutcomeDistribution dist = run_circuit(
          {basis_member(BasisFamily::kBalancedB, m, j), ClassTag::promised(m)});
      for (double p : dist.probabilities) {
        worst = std::max(worst, std::abs(p - expected));
      }
      if (worst > kTol) {
        return fail("non-uniform outcome at m=" + std::to_string(m) +
                    " j=" + std::to_string(j));
      }
      ++cases;
    }
  }
  std::ostringstream os;
  os << cases << " circuits, max |p - 2^-2m| = " << worst;
  return pass(os.str());
}

Outcome criterion_cluster_structure() {
  std::uint64_t cases = 0;
  double worst = 0.0;
  for (int m = 1; m <= 2; ++m) {
    for (int n = 1; n <= 2; ++n) {
      const double expected = std::ldexp(1.0, -2 * m);
      const std::uint64_t low_mask = (std::uint64_t{1} << (2 * n)) - 1;
      for (std::uint64_t j = 0; j < (std::uint64_t{1} << (2 * m)); ++j) {
        const PatternVector g = basis_member(BasisFamily::kBalancedB, m, j);
        for (std::uint64_t i = 0; i < (std::uint64_t{1} << (2 * n)); ++i) {
          const PatternVector f = basis_member(BasisFamily::kImbalancedI, n, i);

          const OutcomeDistribution left =
              run_circuit({product(g, f), ClassTag::left_cluster(m, n)});
          for (std::uint64_t x = 0; x < left.probabilities.size(); ++x) {
            const double want = (x & low_mask) == i ? expected : 0.0;
            worst = std::max(worst, std::abs(left.probabilities[x] - want));
          }

          const OutcomeDistribution right =
              run_circuit({product(f, g), ClassTag::right_cluster(n, m)});
          for (std::uint64_t x = 0; x < right.probabilities.size(); ++x) {
            const double want = (x >> (2 * m)) == i ? expected : 0.0;
            worst = std::max(worst, std::abs(right.probabilities[x] - want));
          }
          if (worst > kTol) {
            return fail("support mismatch at m=" + std::to_string(m) +
                        " n=" + std::to_string(n));
          }
          cases += 2;
        }
      }
    }
  }

  // The worked example: g3 * f3 lands on x.11, f3 * g3 on 11.x, 1/4 each.
  const PatternVector g3 = basis_member(BasisFamily::kBalancedB, 1, 3);
  const PatternVector f3 = basis_member(BasisFamily::kImbalancedI, 1, 3);
  const OutcomeDistribution left =
      run_circuit({product(g3, f3), ClassTag::left_cluster(1, 1)});
  for (std::uint64_t x : {3u, 7u, 11u, 15u}) {
    if (std::abs(left.probabilities[x] - 0.25) > kTol) {
      return fail("g3*f3 support is not x.11 at 1/4");
    }
  }
  const OutcomeDistribution right =
      run_circuit({product(f3, g3), ClassTag::right_cluster(1, 1)});
  for (std::uint64_t x : {12u, 13u, 14u, 15u}) {
    if (std::abs(right.probabilities[x] - 0.25) > kTol) {
      return fail("f3*g3 support is not 11.x at 1/4");
    }
  }

  std::ostringstream os;
  os << cases << " circuits, max deviation " << worst;
  return pass(os.str());
}

Outcome criterion_table_fidelity() {
  if (product(PatternVector::parse("01"), PatternVector::parse("1100")).format() !=
      "11000011") {
    return fail("01 (.) 1100 mismatch");
  }
  if (product(PatternVector::parse("0101"), PatternVector::parse("0001")).format() !=
      "0001111000011110") {
    return fail("0101 (.) 0001 mismatch");
  }
  const PatternBasis i4 = basis_I(2);
  for (std::uint64_t i = 0; i < 16; ++i) {
    if (i4.member(i).format() != kI4Members[i]) {
      return fail("I_4 member " + std::to_string(i) + " mismatch");
    }
  }
  const PatternVector star = extended_product(PatternVector::parse("0001"),
                                              PatternVector::parse("1000"));
  if (star.format() != "1000100010000111") {
    return fail("f0 * f3 mismatch");
  }
  for (std::uint64_t k = 0; k < 16; ++k) {
    if (star.bit(k) != kF0StarF3Values[k]) {
      return fail("f0 * f3 truth table mismatch at input " + std::to_string(k));
    }
  }
  return pass("products, I_4 listing and f0 * f3 all byte-exact");
}

Outcome criterion_matrix_identities() {
  const DenseOperator c2 = classifier_matrix(1);
  for (std::uint64_t r = 0; r < 4; ++r) {
    for (std::uint64_t c = 0; c < 4; ++c) {
      if (c2.entry(r, c) != (r == c ? -0.5 : 0.5)) {
        return fail("4x4 classifier entry mismatch");
      }
    }
  }
  const DenseOperator hh = hadamard_gate().kron(hadamard_gate());
  const DenseOperator zz = pauli_z_gate().kron(pauli_z_gate());
  const DenseOperator composed = hh.matmul(cz_gate()).matmul(zz).matmul(hh);
  for (std::uint64_t r = 0; r < 4; ++r) {
    for (std::uint64_t c = 0; c < 4; ++c) {
      if (std::abs(composed.entry(r, c) - c2.entry(r, c)) > 1e-12) {
        return fail("gate decomposition diverges from the explicit matrix");
      }
    }
  }
  const DenseOperator c4 = classifier_matrix(2);
  for (std::uint64_t r = 0; r < 16; ++r) {
    for (std::uint64_t c = 0; c < 16; ++c) {
      const double expected = kC4Signs[r][c] == '+' ? 0.25 : -0.25;
      if (c4.entry(r, c) != expected) {
        return fail("16x16 sign pattern mismatch at (" + std::to_string(r) +
                    "," + std::to_string(c) + ")");
      }
    }
  }
  if (c2.unitarity_defect() > kTol || c4.unitarity_defect() > kTol) {
    return fail("unitarity defect above 1e-9");
  }
  return pass("explicit matrices, gate decomposition and unitarity all hold");
}

Outcome criterion_oracle_equivalence() {
  std::uint64_t cases = 0;
  double worst = 0.0;
  std::mt19937_64 rng(0xacce97edull);
  for (int qubits = 2; qubits <= 10; qubits += 2) {
    const DenseOperator dense = classifier_matrix(qubits / 2);
    const std::uint64_t dim = std::uint64_t{1} << qubits;
    for (std::uint64_t b = 0; b < dim; ++b) {
      std::vector<double> amps(dim, 0.0);
      amps[b] = 1.0;
      StateVector fast = StateVector::from_amplitudes(amps);
      const StateVector slow =
          dense.apply(StateVector::from_amplitudes(std::move(amps)));
      apply_classifier(fast);
      for (std::uint64_t x = 0; x < dim; ++x) {
        worst = std::max(worst, std::abs(fast.amplitude(x) - slow.amplitude(x)));
      }
      ++cases;
    }
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<double> amps(dim);
      double norm2 = 0.0;
      for (auto& a : amps) {
        const double u1 = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
        const double u2 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        a = std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
        norm2 += a * a;
      }
      for (auto& a : amps) a /= std::sqrt(norm2);
      StateVector fast = StateVector::from_amplitudes(amps);
      const StateVector slow =
          dense.apply(StateVector::from_amplitudes(std::move(amps)));
      apply_classifier(fast);
      for (std::uint64_t x = 0; x < dim; ++x) {
        worst = std::max(worst, std::abs(fast.amplitude(x) - slow.amplitude(x)));
      }
      ++cases;
    }
  }
  if (worst > kTol) return fail("matrix-free kernel diverges from dense matrix");
  std::ostringstream os;
  os << cases << " states up to 10 qubits, max |diff| = " << worst;
  return pass(os.str());
}

Outcome criterion_property_suites() {
  // Orthogonality transfer: exhaustive at arity <= 3, every basis pair up to
  // rank 8, plus constructed orthogonal pairs at arity <= 8.
  for (int arity = 1; arity <= 3; ++arity) {
    const std::uint64_t len = std::uint64_t{1} << arity;
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << len); ++a) {
      std::vector<int> va(len);
      for (std::uint64_t k = 0; k < len; ++k) va[k] = (a >> k) & 1;
      const PatternVector p = PatternVector::from_truth_table(va);
      for (std::uint64_t b = 0; b < (std::uint64_t{1} << len); ++b) {
        std::vector<int> vb(len);
        for (std::uint64_t k = 0; k < len; ++k) vb[k] = (b >> k) & 1;
        const PatternVector q = PatternVector::from_truth_table(vb);
        const double ip = inner_product(pattern_ket(p), pattern_ket(q));
        if (is_orthogonal(p, q) != (std::abs(ip) < kTol)) {
          return fail("orthogonality transfer broken at arity " +
                      std::to_string(arity));
        }
      }
    }
  }
  for (int hr = 1; hr <= 4; ++hr) {
    for (BasisFamily fam : {BasisFamily::kImbalancedI, BasisFamily::kBalancedB}) {
      const PatternBasis basis = fam == BasisFamily::kImbalancedI
                                     ? basis_I(hr)
                                     : basis_B(hr);
      for (std::uint64_t a = 0; a < basis.size(); ++a) {
        for (std::uint64_t b = a + 1; b < basis.size(); ++b) {
          if (std::abs(inner_product(pattern_ket(basis.member(a)),
                                     pattern_ket(basis.member(b)))) > kTol) {
            return fail("basis kets not orthogonal at rank " +
                        std::to_string(2 * hr));
          }
        }
      }
    }
  }

  // Tensor-product and star/product equivalence, exhaustive small plus
  // random up to total rank 8.
  std::mt19937_64 rng(0x7e57ull);
  for (int trial = 0; trial < 400; ++trial) {
    const int ap = 1 + static_cast<int>(rng() % 6);
    const int aq = 1 + static_cast<int>(rng() % std::max(1, 8 - ap));
    std::vector<int> pv(std::size_t{1} << ap), qv(std::size_t{1} << aq);
    for (auto& v : pv) v = static_cast<int>(rng() & 1);
    for (auto& v : qv) v = static_cast<int>(rng() & 1);
    const PatternVector p = PatternVector::from_truth_table(pv);
    const PatternVector q = PatternVector::from_truth_table(qv);
    if (!(extended_product(p, q) == product(p, q))) {
      return fail("star and pattern products diverge");
    }
    const StateVector kp = pattern_ket(p);
    const StateVector kq = pattern_ket(q);
    const StateVector kr = pattern_ket(product(p, q));
    for (std::uint64_t i = 0; i < kp.dimension(); ++i) {
      for (std::uint64_t j = 0; j < kq.dimension(); ++j) {
        if (std::abs(kr.amplitude((i << aq) | j) -
                     kp.amplitude(i) * kq.amplitude(j)) > kTol) {
          return fail("product ket is not the tensor product of kets");
        }
      }
    }
  }

  // Basis-product closure up to total rank 8.
  for (BasisFamily fa : {BasisFamily::kImbalancedI, BasisFamily::kBalancedB}) {
    for (BasisFamily fb : {BasisFamily::kImbalancedI, BasisFamily::kBalancedB}) {
      for (int n = 1; n <= 3; ++n) {
        for (int m = 1; n + m <= 4; ++m) {
          const PatternBasis left =
              fa == BasisFamily::kImbalancedI ? basis_I(n) : basis_B(n);
          const PatternBasis right =
              fb == BasisFamily::kImbalancedI ? basis_I(m) : basis_B(m);
          if (!verify_basis(basis_product(left, right))) {
            return fail("basis product closure fails");
          }
        }
      }
    }
  }

  // Left-cluster bit correlations, exhaustive to total rank 12.
  for (int m = 1; 2 * (m + 1) <= 12; ++m) {
    for (int n = 1; 2 * (m + n) <= 12; ++n) {
      for (std::uint64_t j = 0; j < (std::uint64_t{1} << (2 * m)); ++j) {
        const PatternVector g = basis_member(BasisFamily::kBalancedB, m, j);
        for (std::uint64_t i = 0; i < (std::uint64_t{1} << (2 * n)); ++i) {
          const PatternVector f = basis_member(BasisFamily::kImbalancedI, n, i);
          const PatternVector h = product(g, f);
          const PatternVector block0 = extract_block(h, 0, 2 * n);
          for (std::uint64_t r = 1; r < g.size(); ++r) {
            const PatternVector diff = extract_block(h, r, 2 * n) ^ block0;
            const std::uint64_t ones = diff.popcount();
            if (ones != 0 && ones != diff.size()) {
              return fail("intra-block XOR profile differs between blocks");
            }
          }
        }
      }
    }
  }
  return pass("orthogonality transfer, product equivalences, closure and XOR law");
}

Outcome criterion_non_reconstructibility() {
  std::uint64_t instances = 0;
  for (int m = 1; m <= 2; ++m) {
    for (int n = 1; n <= 2; ++n) {
      for (bool left : {true, false}) {
        for (std::uint64_t j = 0; j < (std::uint64_t{1} << (2 * m)); ++j) {
          const PatternVector g = basis_member(BasisFamily::kBalancedB, m, j);
          for (std::uint64_t i = 0; i < (std::uint64_t{1} << (2 * n)); ++i) {
            const PatternVector f = basis_member(BasisFamily::kImbalancedI, n, i);
            const PatternVector h = left ? product(g, f) : product(f, g);
            const ClassTag tag = left ? ClassTag::left_cluster(m, n)
                                      : ClassTag::right_cluster(n, m);
            ClusterKnowledge k =
                derive_knowledge(classify(run_circuit({h, tag}), tag), tag);
            std::size_t count = enumerate_completions(k).size();
            if (count != (std::uint64_t{1} << (2 * m)) || count < 2) {
              return fail("completion count is not 2^2m");
            }
            for (std::uint64_t pos = 0; pos < h.size(); ++pos) {
              k = propagate_bit(k, pos, h.bit(pos));
              const std::size_t next = enumerate_completions(k).size();
              if (next > count || next < 1) {
                return fail("propagation grew the candidate set");
              }
              count = next;
            }
            ++instances;
          }
        }
      }
    }
  }
  std::ostringstream os;
  os << instances << " knowledge instances, all with 2^2m completions";
  return pass(os.str());
}

struct Criterion {
  std::string name;
  std::function<Outcome()> run;
  double time_budget_s;  // 0 = no bound stated
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"promised-class certainty", criterion_promised_certainty, 5.0},
      {"outside-class uniformity", criterion_outside_uniformity, 5.0},
      {"cluster structure", criterion_cluster_structure, 30.0},
      {"table fidelity", criterion_table_fidelity, 0.0},
      {"matrix identities", criterion_matrix_identities, 0.0},
      {"oracle equivalence", criterion_oracle_equivalence, 0.0},
      {"property suites", criterion_property_suites, 0.0},
      {"non-reconstructibility", criterion_non_reconstructibility, 0.0},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome outcome = criteria[i].run();
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (outcome.passed && criteria[i].time_budget_s > 0.0 &&
        elapsed > criteria[i].time_budget_s) {
      outcome = fail("exceeded the " + std::to_string(criteria[i].time_budget_s) +
                     "s budget");
    }
    std::printf("[%s] criterion %zu: %s — %s (%.2f s)\n",
                outcome.passed ? "PASS" : "FAIL", i + 1,
                criteria[i].name.c_str(), outcome.detail.c_str(), elapsed);
    if (!outcome.passed) ++failures;
  }
  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all %zu acceptance criteria hold\n", criteria.size());
  return 0;
}
