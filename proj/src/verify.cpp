#include "bfpqc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <random>
#include <sstream>

#include "bfpqc/classify.hpp"
#include "bfpqc/knowledge.hpp"
#include "bfpqc/pattern.hpp"
#include "bfpqc/sim.hpp"

namespace bfpqc {

namespace {

constexpr double kTol = kSimTolerance;

std::string count_detail(std::uint64_t cases, const std::string& extra = "") {
  std::ostringstream os;
  os << cases << " cases";
  if (!extra.empty()) os << ", " << extra;
  return os.str();
}

PatternVector pattern_from_value(std::uint64_t value, int arity) {
  std::vector<int> values(std::size_t{1} << arity);
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = (value >> i) & 1;
  return PatternVector::from_truth_table(values);
}

PatternVector random_pattern(std::mt19937_64& rng, int arity) {
  std::vector<int> values(std::size_t{1} << arity);
  for (auto& v : values) v = static_cast<int>(rng() & 1);
  return PatternVector::from_truth_table(values);
}

// A pattern orthogonal to p: flip exactly half of the positions.
PatternVector random_orthogonal_partner(std::mt19937_64& rng,
                                        const PatternVector& p) {
  std::vector<std::uint64_t> positions(p.size());
  for (std::uint64_t i = 0; i < p.size(); ++i) positions[i] = i;
  std::shuffle(positions.begin(), positions.end(), rng);
  std::vector<int> values(p.size());
  for (std::uint64_t i = 0; i < p.size(); ++i) values[i] = p.bit(i);
  for (std::uint64_t i = 0; i < p.size() / 2; ++i) values[positions[i]] ^= 1;
  return PatternVector::from_truth_table(values);
}

StateVector random_unit_state(std::mt19937_64& rng, int num_qubits) {
  std::vector<double> amps(std::uint64_t{1} << num_qubits);
  double norm2 = 0.0;
  for (auto& a : amps) {
    // Box-Muller from raw 53-bit uniforms keeps this reproducible across
    // standard libraries.
    const double u1 = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
    const double u2 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    a = std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    norm2 += a * a;
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& a : amps) a *= inv;
  return StateVector::from_amplitudes(std::move(amps));
}

CheckResult orthogonality_symmetry(const VerifyOptions&) {
  std::uint64_t cases = 0;
  for (int arity = 1; arity <= 3; ++arity) {
    const std::uint64_t len = std::uint64_t{1} << arity;
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << len); ++a) {
      const PatternVector p = pattern_from_value(a, arity);
      for (std::uint64_t b = 0; b < (std::uint64_t{1} << len); ++b) {
        const PatternVector q = pattern_from_value(b, arity);
        const bool forward = is_orthogonal(p, q);
        if (forward != is_orthogonal(q, p)) {
          return {"pattern/orthogonality_symmetry", false,
                  "asymmetry at " + p.format() + " / " + q.format()};
        }
        if (forward != ((p ^ q).popcount() == p.size() / 2)) {
          return {"pattern/orthogonality_symmetry", false,
                  "popcount mismatch at " + p.format() + " / " + q.format()};
        }
        ++cases;
      }
    }
  }
  return {"pattern/orthogonality_symmetry", true, count_detail(cases)};
}

bool product_blocks_ok(const PatternVector& p, const PatternVector& q) {
  const PatternVector r = product(p, q);
  if (r.arity() != p.arity() + q.arity()) return false;
  const PatternVector nq = q.negated();
  for (std::uint64_t i = 0; i < p.size(); ++i) {
    const PatternVector block = extract_block(r, i, q.arity());
    if (!(block == (p.bit(i) ? nq : q))) return false;
  }
  return true;
}

CheckResult product_block_structure(const VerifyOptions& options) {
  std::uint64_t cases = 0;
  for (int ap = 1; ap <= 2; ++ap) {
    for (int aq = 1; aq <= 2; ++aq) {
      const std::uint64_t lp = std::uint64_t{1} << ap;
      const std::uint64_t lq = std::uint64_t{1} << aq;
      for (std::uint64_t a = 0; a < (std::uint64_t{1} << lp); ++a) {
        for (std::uint64_t b = 0; b < (std::uint64_t{1} << lq); ++b) {
          if (!product_blocks_ok(pattern_from_value(a, ap),
                                 pattern_from_value(b, aq))) {
            return {"pattern/product_block_structure", false,
                    "block mismatch in exhaustive sweep"};
          }
          ++cases;
        }
      }
    }
  }
  std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
  const int cap = std::min(2 * options.max_half_rank + 2, 12);
  for (int trial = 0; trial < 200; ++trial) {
    const int ap = 1 + static_cast<int>(rng() % 7);
    const int aq = 1 + static_cast<int>(rng() % std::max(1, cap - ap));
    if (ap + aq > cap) continue;
    if (!product_blocks_ok(random_pattern(rng, ap), random_pattern(rng, aq))) {
      return {"pattern/product_block_structure", false, "block mismatch (random)"};
    }
    ++cases;
  }
  return {"pattern/product_block_structure", true, count_detail(cases)};
}

CheckResult extended_equals_product(const VerifyOptions& options) {
  std::uint64_t cases = 0;
  for (int af = 1; af <= 2; ++af) {
    for (int ag = 1; ag <= 3 - af + 1; ++ag) {
      const std::uint64_t lf = std::uint64_t{1} << af;
      const std::uint64_t lg = std::uint64_t{1} << ag;
      for (std::uint64_t a = 0; a < (std::uint64_t{1} << lf); ++a) {
        for (std::uint64_t b = 0; b < (std::uint64_t{1} << lg); ++b) {
          const PatternVector f = pattern_from_value(a, af);
          const PatternVector g = pattern_from_value(b, ag);
          if (!(extended_product(f, g) == product(f, g))) {
            return {"pattern/extended_equals_product", false,
                    "divergence at " + f.format() + " * " + g.format()};
          }
          ++cases;
        }
      }
    }
  }
  std::mt19937_64 rng(0xc0ffee123ull);
  const int cap = std::min(2 * options.max_half_rank + 2, 12);
  for (int trial = 0; trial < 100; ++trial) {
    const int af = 1 + static_cast<int>(rng() % (cap - 1));
    const int ag = 1 + static_cast<int>(rng() % std::max(1, cap - af));
    const PatternVector f = random_pattern(rng, af);
    const PatternVector g = random_pattern(rng, ag);
    if (!(extended_product(f, g) == product(f, g))) {
      return {"pattern/extended_equals_product", false, "divergence (random)"};
    }
    ++cases;
  }
  return {"pattern/extended_equals_product", true, count_detail(cases)};
}

CheckResult basis_recursion(const VerifyOptions& options) {
  std::uint64_t cases = 0;
  const int cap = std::min(options.max_half_rank, 4);
  for (BasisFamily family :
       {BasisFamily::kImbalancedI, BasisFamily::kBalancedB}) {
    for (int hr = 2; hr <= cap; ++hr) {
      const PatternBasis direct =
          family == BasisFamily::kImbalancedI ? basis_I(hr) : basis_B(hr);
      const PatternBasis base =
          family == BasisFamily::kImbalancedI ? basis_I(1) : basis_B(1);
      const PatternBasis previous =
          family == BasisFamily::kImbalancedI ? basis_I(hr - 1) : basis_B(hr - 1);
      const PatternBasis rebuilt = basis_product(base, previous);
      if (direct.size() != rebuilt.size()) {
        return {"pattern/basis_recursion", false, "size mismatch"};
      }
      for (std::uint64_t i = 0; i < direct.size(); ++i) {
        if (!(direct.member(i) == rebuilt.member(i))) {
          return {"pattern/basis_recursion", false,
                  "member " + std::to_string(i) + " differs at half rank " +
                      std::to_string(hr)};
        }
        if (!(direct.member(i) ==
              basis_member(family, hr, i))) {
          return {"pattern/basis_recursion", false,
                  "lazy member " + std::to_string(i) + " differs"};
        }
        ++cases;
      }
    }
  }
  return {"pattern/basis_recursion", true, count_detail(cases)};
}

CheckResult basis_closure(const VerifyOptions& options) {
  std::uint64_t cases = 0;
  const int cap = std::min(options.max_half_rank + 1, 4);  // total rank <= 8
  for (BasisFamily fa : {BasisFamily::kImbalancedI, BasisFamily::kBalancedB}) {
    for (BasisFamily fb : {BasisFamily::kImbalancedI, BasisFamily::kBalancedB}) {
      for (int n = 1; n < cap; ++n) {
        for (int m = 1; m + n <= cap; ++m) {
          const PatternBasis left =
              fa == BasisFamily::kImbalancedI ? basis_I(n) : basis_B(n);
          const PatternBasis right =
              fb == BasisFamily::kImbalancedI ? basis_I(m) : basis_B(m);
          if (!verify_basis(basis_product(left, right))) {
            return {"pattern/basis_closure", false,
                    "product basis fails orthogonality"};
          }
          ++cases;
        }
      }
    }
  }
  return {"pattern/basis_closure", true, count_detail(cases)};
}

CheckResult balance_profile(const VerifyOptions& options) {
  std::uint64_t cases = 0;
  const int cap = std::min(options.max_half_rank, 4);
  for (int hr = 1; hr <= cap; ++hr) {
    const PatternBasis bal = basis_B(hr);
    const std::uint64_t half = bal.member(0).size() / 2;
    if (bal.member(0).popcount() != 0) {
      return {"pattern/balance_profile", false, "B member 0 is not constant zero"};
    }
    for (std::uint64_t i = 1; i < bal.size(); ++i) {
      if (bal.member(i).popcount() != half) {
        return {"pattern/balance_profile", false,
                "B member " + std::to_string(i) + " is not balanced"};
      }
      ++cases;
    }
    const PatternBasis imb = basis_I(hr);
    for (std::uint64_t i = 0; i < imb.size(); ++i) {
      if (imb.member(i).popcount() == half) {
        return {"pattern/balance_profile", false,
                "I member " + std::to_string(i) + " is balanced"};
      }
      ++cases;
    }
  }
  return {"pattern/balance_profile", true, count_detail(cases)};
}

CheckResult orthogonality_transfer(const VerifyOptions& options) {
  std::uint64_t cases = 0;
  double worst = 0.0;
  for (int arity = 1; arity <= 3; ++arity) {
    const std::uint64_t len = std::uint64_t{1} << arity;
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << len); ++a) {
      const StateVector ka = pattern_ket(pattern_from_value(a, arity));
      for (std::uint64_t b = 0; b < (std::uint64_t{1} << len); ++b) {
        const PatternVector q = pattern_from_value(b, arity);
        const double ip = inner_product(ka, pattern_ket(q));
        const bool orthogonal =
            is_orthogonal(pattern_from_value(a, arity), q);
        if (orthogonal) {
          worst = std::max(worst, std::abs(ip));
          if (std::abs(ip) > kTol) {
            return {"sim/orthogonality_transfer", false, "nonzero inner product"};
          }
        } else if (std::abs(ip) < kTol) {
          return {"sim/orthogonality_transfer", false,
                  "zero inner product without orthogonality"};
        }
        ++cases;
      }
    }
  }
  std::mt19937_64 rng(0x5eedull);
  const int cap = std::min(2 * options.max_half_rank, 8);
  for (int arity = 4; arity <= cap; ++arity) {
    for (int trial = 0; trial < 50; ++trial) {
      const PatternVector p = random_pattern(rng, arity);
      const PatternVector q = random_orthogonal_partner(rng, p);
      const double ip = inner_product(pattern_ket(p), pattern_ket(q));
      worst = std::max(worst, std::abs(ip));
      if (std::abs(ip) > kTol) {
        return {"sim/orthogonality_transfer", false, "nonzero inner product"};
      }
      ++cases;
    }
  }
  std::ostringstream os;
  os << "max |<a_q|a_p>| = " << worst;
  return {"sim/orthogonality_transfer", true, count_detail(cases, os.str())};
}

bool tensor_equivalence_ok(const PatternVector& p, const PatternVector& q) {
  const StateVector kp = pattern_ket(p);
  const StateVector kq = pattern_ket(q);
  const StateVector kr = pattern_ket(product(p, q));
  for (std::uint64_t i = 0; i < kp.dimension(); ++i) {
    for (std::uint64_t j = 0; j < kq.dimension(); ++j) {
      const double expected = kp.amplitude(i) * kq.amplitude(j);
      if (std::abs(kr.amplitude((i << q.arity()) | j) - expected) > kTol) {
        return false;
      }
    }
  }
  return true;
}

CheckResult tensor_product_equivalence(const VerifyOptions& options) {
  std::uint64_t cases = 0;
  for (int ap = 1; ap <= 2; ++ap) {
    for (int aq = 1; aq <= 2; ++aq) {
      for (std::uint64_t a = 0; a < (std::uint64_t{1} << (1 << ap)); ++a) {
        for (std::uint64_t b = 0; b < (std::uint64_t{1} << (1 << aq)); ++b) {
          if (!tensor_equivalence_ok(pattern_from_value(a, ap),
                                     pattern_from_value(b, aq))) {
            return {"sim/tensor_product_equivalence", false,
                    "kron mismatch in exhaustive sweep"};
          }
          ++cases;
        }
      }
    }
  }
  std::mt19937_64 rng(0xfeedface01ull);
  const int cap = std::min(2 * options.max_half_rank + 2, 8);
  for (int trial = 0; trial < 100; ++trial) {
    const int ap = 1 + static_cast<int>(rng() % (cap - 1));
    const int aq = 1 + static_cast<int>(rng() % std::max(1, cap - ap));
    if (!tensor_equivalence_ok(random_pattern(rng, ap), random_pattern(rng, aq))) {
      return {"sim/tensor_product_equivalence", false, "kron mismatch (random)"};
    }
    ++cases;
  }
  return {"sim/tensor_product_equivalence", true, count_detail(cases)};
}

CheckResult classifier_unitarity(const VerifyOptions& options) {
  double worst = 0.0;
  const int cap = std::min(options.max_half_rank, 3);
  for (int hr = 1; hr <= cap; ++hr) {
    worst = std::max(worst, classifier_matrix(hr).unitarity_defect());
  }
  std::ostringstream os;
  os << "max defect = " << worst;
  if (worst > kTol) return {"sim/classifier_unitarity", false, os.str()};
  return {"sim/classifier_unitarity", true, os.str()};
}

CheckResult matrix_free_dense_equivalence(const VerifyOptions& options) {
  std::uint64_t cases = 0;
  double worst = 0.0;
  std::mt19937_64 rng(0xabcdef987ull);
  const int cap = std::min(2 * options.max_half_rank, 10);
  for (int qubits = 2; qubits <= cap; qubits += 2) {
    const DenseOperator dense = classifier_matrix(qubits / 2);
    const std::uint64_t dim = std::uint64_t{1} << qubits;
    for (std::uint64_t basis = 0; basis < dim; ++basis) {
      std::vector<double> amps(dim, 0.0);
      amps[basis] = 1.0;
      StateVector fast = StateVector::from_amplitudes(amps);
      apply_classifier(fast);
      const StateVector slow =
          dense.apply(StateVector::from_amplitudes(std::move(amps)));
      for (std::uint64_t i = 0; i < dim; ++i) {
        worst = std::max(worst, std::abs(fast.amplitude(i) - slow.amplitude(i)));
      }
      ++cases;
    }
    for (int trial = 0; trial < 100; ++trial) {
      StateVector fast = random_unit_state(rng, qubits);
      const StateVector slow = dense.apply(fast);
      apply_classifier(fast);
      for (std::uint64_t i = 0; i < dim; ++i) {
        worst = std::max(worst, std::abs(fast.amplitude(i) - slow.amplitude(i)));
      }
      ++cases;
    }
  }
  std::ostringstream os;
  os << "max |fast - dense| = " << worst;
  if (worst > kTol) {
    return {"sim/matrix_free_dense_equivalence", false, os.str()};
  }
  return {"sim/matrix_free_dense_equivalence", true, count_detail(cases, os.str())};
}

CheckResult norm_preservation(const VerifyOptions& options) {
  std::uint64_t cases = 0;
  double worst = 0.0;
  std::mt19937_64 rng(0x0ddba11ull);
  const int cap = std::min(2 * options.max_half_rank, 10);
  for (int qubits = 2; qubits <= cap; qubits += 2) {
    for (int trial = 0; trial < 50; ++trial) {
      StateVector state = random_unit_state(rng, qubits);
      hadamard_all(state);
      worst = std::max(worst, std::abs(state.squared_norm() - 1.0));
      apply_phase_oracle(random_pattern(rng, qubits), state);
      worst = std::max(worst, std::abs(state.squared_norm() - 1.0));
      apply_classifier(state);
      worst = std::max(worst, std::abs(state.squared_norm() - 1.0));
      ++cases;
    }
  }
  std::ostringstream os;
  os << "max |norm^2 - 1| = " << worst;
  if (worst > kTol) return {"sim/norm_preservation", false, os.str()};
  return {"sim/norm_preservation", true, count_detail(cases, os.str())};
}

CheckResult classifier_action(const VerifyOptions& options) {
  std::uint64_t cases = 0;
  const int cap = std::min(options.max_half_rank, 4);
  for (int n = 1; n <= cap; ++n) {
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << (2 * n)); ++i) {
      StateVector state =
          pattern_ket(basis_member(BasisFamily::kImbalancedI, n, i));
      apply_classifier(state);
      for (std::uint64_t x = 0; x < state.dimension(); ++x) {
        const double expected = x == i ? 1.0 : 0.0;
        if (std::abs(state.amplitude(x) - expected) > kTol) {
          return {"sim/classifier_action", false,
                  "ket " + std::to_string(i) + " missed basis state"};
        }
      }
      ++cases;
    }
  }
  return {"sim/classifier_action", true, count_detail(cases)};
}

CheckResult promised_completeness(const VerifyOptions& options) {
  std::uint64_t cases = 0;
  double worst = 1.0;
  for (int n = 1; n <= options.max_half_rank; ++n) {
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << (2 * n)); ++i) {
      const OracleSpec spec{basis_member(BasisFamily::kImbalancedI, n, i),
                            ClassTag::promised(n)};
      const OutcomeDistribution dist = run_circuit(spec);
      worst = std::min(worst, dist.probabilities[i]);
      if (dist.probabilities[i] < 1.0 - kTol) {
        return {"bfpqc/promised_completeness", false,
                "probability fell below 1 at n=" + std::to_string(n) +
                    ", i=" + std::to_string(i)};
      }
      const ClassificationResult res = classify(dist, spec.announced);
      if (res.verdict.kind != VerdictKind::kIdentified ||
          res.verdict.f_index != i || res.winner != Winner::kAlice) {
        return {"bfpqc/promised_completeness", false, "wrong verdict"};
      }
      ++cases;
    }
  }
  std::ostringstream os;
  os << "min peak prob = " << worst;
  return {"bfpqc/promised_completeness", true, count_detail(cases, os.str())};
}

CheckResult outside_uniformity(const VerifyOptions& options) {
  std::uint64_t cases = 0;
  double worst = 0.0;
  for (int m = 1; m <= options.max_half_rank; ++m) {
    const double expected = std::ldexp(1.0, -2 * m);
    for (std::uint64_t j = 0; j < (std::uint64_t{1} << (2 * m)); ++j) {
      const OracleSpec spec{basis_member(BasisFamily::kBalancedB, m, j),
                            ClassTag::promised(m)};
      const OutcomeDistribution dist = run_circuit(spec);
      for (double p : dist.probabilities) {
        worst = std::max(worst, std::abs(p - expected));
      }
      if (worst > kTol) {
        return {"bfpqc/outside_uniformity", false,
                "non-uniform outcome at m=" + std::to_string(m)};
      }
      const ClassificationResult res = classify(dist, spec.announced);
      if (res.verdict.kind != VerdictKind::kInconclusive ||
          res.winner != Winner::kBob) {
        return {"bfpqc/outside_uniformity", false, "verdict should be inconclusive"};
      }
      ++cases;
    }
  }
  std::ostringstream os;
  os << "max |p - 2^-2m| = " << worst;
  return {"bfpqc/outside_uniformity", true, count_detail(cases, os.str())};
}

// Shared sweep for the two cluster-structure checks.
CheckResult cluster_structure(const VerifyOptions& options, bool left) {
  const std::string id =
      left ? "bfpqc/left_cluster_structure" : "bfpqc/right_cluster_structure";
  std::uint64_t cases = 0;
  double worst = 0.0;
  const int total_cap = std::min(4 * options.max_half_rank, 12);
  for (int m = 1; 2 * (m + 1) <= total_cap; ++m) {
    for (int n = 1; 2 * (m + n) <= total_cap; ++n) {
      const double expected = std::ldexp(1.0, -2 * m);
      const std::uint64_t low_mask = (std::uint64_t{1} << (2 * n)) - 1;
      for (std::uint64_t j = 0; j < (std::uint64_t{1} << (2 * m)); ++j) {
        const PatternVector g = basis_member(BasisFamily::kBalancedB, m, j);
        for (std::uint64_t i = 0; i < (std::uint64_t{1} << (2 * n)); ++i) {
          const PatternVector f = basis_member(BasisFamily::kImbalancedI, n, i);
          const OracleSpec spec{left ? product(g, f) : product(f, g),
                                left ? ClassTag::left_cluster(m, n)
                                     : ClassTag::right_cluster(n, m)};
          const OutcomeDistribution dist = run_circuit(spec);
          for (std::uint64_t x = 0; x < dist.probabilities.size(); ++x) {
            const bool supported = left ? (x & low_mask) == i
                                        : (x >> (2 * m)) == i;
            const double want = supported ? expected : 0.0;
            worst = std::max(worst, std::abs(dist.probabilities[x] - want));
          }
          if (worst > kTol) {
            return {id, false, "support mismatch at m=" + std::to_string(m) +
                                   ", n=" + std::to_string(n)};
          }
          const ClassificationResult res = classify(dist, spec.announced);
          const VerdictKind want_kind =
              left ? VerdictKind::kPartialLeft : VerdictKind::kPartialRight;
          if (res.verdict.kind != want_kind || res.verdict.f_index != i) {
            return {id, false, "wrong partial verdict"};
          }
          ++cases;
        }
      }
    }
  }
  std::ostringstream os;
  os << "max deviation = " << worst;
  return {id, true, count_detail(cases, os.str())};
}

CheckResult single_query(const VerifyOptions& options) {
  std::uint64_t cases = 0;
  for (int n = 1; n <= std::min(options.max_half_rank, 3); ++n) {
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << (2 * n)); ++i) {
      PipelineTrace trace;
      run_circuit({basis_member(BasisFamily::kImbalancedI, n, i),
                   ClassTag::promised(n)},
                  &trace);
      if (trace.oracle_queries != 1) {
        return {"bfpqc/single_query", false,
                std::to_string(trace.oracle_queries) + " oracle queries"};
      }
      ++cases;
    }
  }
  return {"bfpqc/single_query", true, count_detail(cases)};
}

CheckResult knowledge_consistency(const VerifyOptions& options) {
  std::uint64_t cases = 0;
  const int side_cap = std::min(options.max_half_rank, 3);
  for (int n = 1; n <= side_cap; ++n) {
    for (int m = 1; m <= side_cap; ++m) {
      if (2 * (n + m) > 12) continue;
      for (std::uint64_t j = 0; j < (std::uint64_t{1} << (2 * m)); ++j) {
        const PatternVector g = basis_member(BasisFamily::kBalancedB, m, j);
        for (std::uint64_t i = 0; i < (std::uint64_t{1} << (2 * n)); ++i) {
          const PatternVector f = basis_member(BasisFamily::kImbalancedI, n, i);
          for (bool left : {true, false}) {
            const PatternVector h = left ? product(g, f) : product(f, g);
            const ClassTag tag = left ? ClassTag::left_cluster(m, n)
                                      : ClassTag::right_cluster(n, m);
            const ClassificationResult res = classify(run_circuit({h, tag}), tag);
            const ClusterKnowledge k = derive_knowledge(res, tag);
            if (!check_consistency(k, h)) {
              return {"knowledge/derived_consistency", false,
                      "true function rejected by its own constraints"};
            }
            ++cases;
          }
        }
      }
    }
  }
  return {"knowledge/derived_consistency", true, count_detail(cases)};
}

CheckResult knowledge_xor_law(const VerifyOptions& options) {
  std::uint64_t cases = 0;
  const int total_cap = std::min(4 * options.max_half_rank, 12);
  for (int m = 1; 2 * (m + 1) <= total_cap; ++m) {
    for (int n = 1; 2 * (m + n) <= total_cap; ++n) {
      for (std::uint64_t j = 0; j < (std::uint64_t{1} << (2 * m)); ++j) {
        const PatternVector g = basis_member(BasisFamily::kBalancedB, m, j);
        for (std::uint64_t i = 0; i < (std::uint64_t{1} << (2 * n)); ++i) {
          const PatternVector f = basis_member(BasisFamily::kImbalancedI, n, i);
          const PatternVector h = product(g, f);
          // Bitwise-constant block differences are exactly the statement
          // that intra-block XORs agree across blocks.
          const PatternVector block0 = extract_block(h, 0, 2 * n);
          for (std::uint64_t r = 1; r < g.size(); ++r) {
            const PatternVector diff = extract_block(h, r, 2 * n) ^ block0;
            const std::uint64_t ones = diff.popcount();
            if (ones != 0 && ones != diff.size()) {
              return {"knowledge/left_xor_law", false,
                      "blocks differ in a non-constant way"};
            }
          }
          ++cases;
        }
      }
    }
  }
  return {"knowledge/left_xor_law", true, count_detail(cases)};
}

CheckResult knowledge_completion_counts(const VerifyOptions& options) {
  std::uint64_t cases = 0;
  const int side_cap = std::min(options.max_half_rank, 2);
  for (int n = 1; n <= side_cap; ++n) {
    for (int m = 1; m <= side_cap; ++m) {
      for (std::uint64_t j = 0; j < (std::uint64_t{1} << (2 * m)); ++j) {
        const PatternVector g = basis_member(BasisFamily::kBalancedB, m, j);
        for (std::uint64_t i = 0; i < (std::uint64_t{1} << (2 * n)); ++i) {
          const PatternVector f = basis_member(BasisFamily::kImbalancedI, n, i);
          for (bool left : {true, false}) {
            const PatternVector h = left ? product(g, f) : product(f, g);
            const ClassTag tag = left ? ClassTag::left_cluster(m, n)
                                      : ClassTag::right_cluster(n, m);
            const ClusterKnowledge k =
                derive_knowledge(classify(run_circuit({h, tag}), tag), tag);
            const auto completions = enumerate_completions(k);
            if (completions.size() != (std::uint64_t{1} << (2 * m))) {
              return {"knowledge/completion_counts", false,
                      std::to_string(completions.size()) + " completions"};
            }
            bool found = false;
            for (const PatternVector& c : completions) {
              if (c == h) found = true;
            }
            if (!found) {
              return {"knowledge/completion_counts", false,
                      "true function missing from completions"};
            }
            ++cases;
          }
        }
      }
    }
  }
  return {"knowledge/completion_counts", true, count_detail(cases)};
}

CheckResult knowledge_propagation_monotone(const VerifyOptions&) {
  std::uint64_t cases = 0;
  for (int n = 1; n <= 2; ++n) {
    for (int m = 1; m <= 2; ++m) {
      for (bool left : {true, false}) {
        const std::uint64_t i = (std::uint64_t{1} << (2 * n)) - 1;
        const PatternVector f = basis_member(BasisFamily::kImbalancedI, n, i);
        const PatternVector g =
            basis_member(BasisFamily::kBalancedB, m,
                         (std::uint64_t{1} << (2 * m)) - 1);
        const PatternVector h = left ? product(g, f) : product(f, g);
        const ClassTag tag = left ? ClassTag::left_cluster(m, n)
                                  : ClassTag::right_cluster(n, m);
        ClusterKnowledge k =
            derive_knowledge(classify(run_circuit({h, tag}), tag), tag);
        std::size_t count = enumerate_completions(k).size();
        for (std::uint64_t pos = 0; pos < h.size(); ++pos) {
          const ClusterKnowledge next = propagate_bit(k, pos, h.bit(pos));
          const std::size_t next_count = enumerate_completions(next).size();
          if (next_count > count || next_count == 0) {
            return {"knowledge/propagation_monotone", false,
                    "count grew after a reveal"};
          }
          k = next;
          count = next_count;
          ++cases;
        }
      }
    }
  }
  return {"knowledge/propagation_monotone", true, count_detail(cases)};
}

}  // namespace

int write_report(const std::vector<CheckResult>& results, std::ostream& out) {
  int failures = 0;
  for (const CheckResult& r : results) {
    out << (r.passed ? "PASS " : "FAIL ") << r.id;
    if (!r.detail.empty()) out << " (" << r.detail << ")";
    out << "\n";
    if (!r.passed) ++failures;
  }
  return failures;
}

std::vector<CheckResult> run_standard_suite(const VerifyOptions& options) {
  return {
      orthogonality_symmetry(options),
      product_block_structure(options),
      extended_equals_product(options),
      basis_recursion(options),
      basis_closure(options),
      balance_profile(options),
      orthogonality_transfer(options),
      tensor_product_equivalence(options),
      classifier_unitarity(options),
      matrix_free_dense_equivalence(options),
      norm_preservation(options),
      classifier_action(options),
      promised_completeness(options),
      outside_uniformity(options),
      cluster_structure(options, true),
      cluster_structure(options, false),
      single_query(options),
      knowledge_consistency(options),
      knowledge_xor_law(options),
      knowledge_completion_counts(options),
      knowledge_propagation_monotone(options),
  };
}

}  // namespace bfpqc
