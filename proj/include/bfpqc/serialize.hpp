#pragma once

#include <json.hpp>

#include "bfpqc/classify.hpp"
#include "bfpqc/knowledge.hpp"
#include "bfpqc/pattern.hpp"
#include "bfpqc/sim.hpp"

namespace bfpqc {

// Keys keep insertion order so identical inputs serialize byte-identically.
using Json = nlohmann::ordered_json;

// Entries below this weight are dropped from serialized distributions.
inline constexpr double kProbabilityFloor = 1e-12;

Json pattern_to_json(const PatternVector& p);
PatternVector pattern_from_json(const Json& j);

Json distribution_to_json(const OutcomeDistribution& dist);
std::string distribution_to_csv(const OutcomeDistribution& dist);

Json counts_to_json(const std::map<std::uint64_t, std::uint64_t>& counts,
                    int num_qubits);

Json result_to_json(const ClassificationResult& result);

Json knowledge_to_json(const ClusterKnowledge& knowledge,
                       bool include_completions = false);

}  // namespace bfpqc
