#include "bfpqc/serialize.hpp"

#include <cstdio>

namespace bfpqc {

namespace {

std::string probability_text(double p) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", p);
  return buf;
}

}  // namespace

Json pattern_to_json(const PatternVector& p) {
  return Json{{"arity", p.arity()}, {"bits", p.format()}};
}

PatternVector pattern_from_json(const Json& j) {
  const PatternVector p = PatternVector::parse(j.at("bits").get<std::string>());
  if (p.arity() != j.at("arity").get<int>()) {
    throw std::invalid_argument("arity field does not match the bit string");
  }
  return p;
}

Json distribution_to_json(const OutcomeDistribution& dist) {
  Json probs = Json::object();
  for (std::uint64_t x = 0; x < dist.probabilities.size(); ++x) {
    if (dist.probabilities[x] > kProbabilityFloor) {
      probs[format_outcome(x, dist.num_qubits)] = dist.probabilities[x];
    }
  }
  return Json{{"qubits", dist.num_qubits}, {"probs", std::move(probs)}};
}

std::string distribution_to_csv(const OutcomeDistribution& dist) {
  std::string out = "bitstring,probability\n";
  for (std::uint64_t x = 0; x < dist.probabilities.size(); ++x) {
    if (dist.probabilities[x] > kProbabilityFloor) {
      out += format_outcome(x, dist.num_qubits);
      out += ',';
      out += probability_text(dist.probabilities[x]);
      out += '\n';
    }
  }
  return out;
}

Json counts_to_json(const std::map<std::uint64_t, std::uint64_t>& counts,
                    int num_qubits) {
  Json out = Json::object();
  for (const auto& [outcome, count] : counts) {
    out[format_outcome(outcome, num_qubits)] = count;
  }
  return out;
}

Json result_to_json(const ClassificationResult& result) {
  Json j;
  j["verdict"] = to_string(result.verdict.kind);
  if (result.verdict.kind == VerdictKind::kInconclusive) {
    j["f_index"] = nullptr;
  } else {
    j["f_index"] = result.verdict.f_index;
  }
  j["winner"] = to_string(result.winner);
  j["distribution"] = distribution_to_json(result.distribution);
  if (result.verdict.random_part) {
    j["random_part"] = *result.verdict.random_part;
  }
  if (result.sampled_outcome) {
    j["sampled_outcome"] =
        format_outcome(*result.sampled_outcome, result.distribution.num_qubits);
  }
  return j;
}

Json knowledge_to_json(const ClusterKnowledge& knowledge,
                       bool include_completions) {
  Json j;
  j["side"] = knowledge.side == ClusterKnowledge::Side::kLeft ? "left" : "right";
  j["n"] = knowledge.n;
  j["m"] = knowledge.m;
  j["f_index"] = knowledge.f_index;
  j["f_pattern"] = knowledge.f_pattern.format();
  j["block_length"] = knowledge.block_length();
  j["num_blocks"] = knowledge.num_blocks();

  Json relations = Json::array();
  if (knowledge.side == ClusterKnowledge::Side::kLeft) {
    for (std::int8_t s : knowledge.block_sign) {
      relations.push_back(s < 0 ? "unknown" : (s == 0 ? "equal" : "negation"));
    }
    // Relative XOR profile of any block: bit k xor bit 0 of p_f, shared by
    // every block whatever its sign.
    std::string profile(knowledge.block_length(), '0');
    const int bit0 = knowledge.f_pattern.bit(0);
    for (std::uint64_t k = 0; k < knowledge.block_length(); ++k) {
      profile[knowledge.block_length() - 1 - k] =
          (knowledge.f_pattern.bit(k) ^ bit0) ? '1' : '0';
    }
    j["block_relation"] = std::move(relations);
    j["xor_profile"] = std::move(profile);
  } else {
    for (std::uint64_t r = 0; r < knowledge.num_blocks(); ++r) {
      relations.push_back(knowledge.right_block_negated(r) ? "negation" : "equal");
    }
    std::string known(knowledge.block_length(), '?');
    for (std::uint64_t k = 0; k < knowledge.block_length(); ++k) {
      if (knowledge.g_bits[k] >= 0) {
        known[knowledge.block_length() - 1 - k] = knowledge.g_bits[k] ? '1' : '0';
      }
    }
    j["block_relation"] = std::move(relations);
    j["g_known_bits"] = std::move(known);
  }

  if (include_completions) {
    Json list = Json::array();
    for (const PatternVector& h : enumerate_completions(knowledge)) {
      list.push_back(h.format());
    }
    j["completions"] = std::move(list);
  }
  return j;
}

}  // namespace bfpqc
