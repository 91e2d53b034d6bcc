// Command-line front end: build pattern functions, run the classifier
// pipeline, play the classification game, and emit verification reports.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "bfpqc/classify.hpp"
#include "bfpqc/pattern.hpp"
#include "bfpqc/serialize.hpp"
#include "bfpqc/sim.hpp"
#include "bfpqc/verify.hpp"

namespace {

using bfpqc::BasisFamily;
using bfpqc::ClassTag;
using bfpqc::Json;
using bfpqc::PatternVector;

constexpr int kExitInconclusive = 2;

int env_max_rank() {
  const char* raw = std::getenv("BFPQC_MAX_RANK");
  if (!raw) return bfpqc::kDefaultMaxRank;
  const int value = std::atoi(raw);
  if (value < 2 || value > 28) {
    throw std::invalid_argument("BFPQC_MAX_RANK must be between 2 and 28");
  }
  return value;
}

std::string number_text(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Announced class names: F, G, F:n, G:m, left:m,n, right:n,m.
struct ClassSpec {
  enum class Label { kF, kG, kLeft, kRight };
  Label label = Label::kF;
  std::optional<int> first;   // n for F/right, m for G/left
  std::optional<int> second;  // n for left, m for right

  static ClassSpec parse(const std::string& text) {
    ClassSpec spec;
    std::string head = text;
    std::string args;
    if (const auto colon = text.find(':'); colon != std::string::npos) {
      head = text.substr(0, colon);
      args = text.substr(colon + 1);
    }
    if (head == "F" || head == "f") {
      spec.label = Label::kF;
    } else if (head == "G" || head == "g") {
      spec.label = Label::kG;
    } else if (head == "left") {
      spec.label = Label::kLeft;
    } else if (head == "right") {
      spec.label = Label::kRight;
    } else {
      throw std::invalid_argument("unknown class '" + text +
                                  "' (expected F, G, left:m,n or right:n,m)");
    }
    if (!args.empty()) {
      const auto comma = args.find(',');
      if (comma == std::string::npos) {
        spec.first = std::stoi(args);
      } else {
        spec.first = std::stoi(args.substr(0, comma));
        spec.second = std::stoi(args.substr(comma + 1));
      }
    }
    if ((spec.label == Label::kLeft || spec.label == Label::kRight) &&
        (!spec.first || !spec.second)) {
      throw std::invalid_argument("cluster classes need two half ranks, e.g. left:1,1");
    }
    return spec;
  }

  // The tag used for classification. A plain G announcement still runs the
  // promised-class protocol; there is nothing to extract from a balanced
  // function, so the verdict comes back inconclusive.
  ClassTag tag(int pattern_arity) const {
    switch (label) {
      case Label::kF:
      case Label::kG: {
        const int n = first ? *first : pattern_arity / 2;
        return ClassTag::promised(n);
      }
      case Label::kLeft:
        return ClassTag::left_cluster(*first, *second);
      case Label::kRight:
        return ClassTag::right_cluster(*first, *second);
    }
    return ClassTag::promised(1);
  }
};

struct ClassifyConfig {
  std::string class_text;
  std::string pattern_text;
  std::optional<std::uint64_t> index;    // F/G selector
  std::optional<std::uint64_t> f_index;  // cluster selectors
  std::optional<std::uint64_t> g_index;
  std::uint64_t shots = 0;  // 0 = exact distribution only
  std::uint64_t seed = 0;
  std::string format = "text";
};

PatternVector select_pattern(const ClassSpec& spec, const ClassifyConfig& cfg,
                             int max_rank) {
  if (!cfg.pattern_text.empty()) {
    return PatternVector::parse(cfg.pattern_text);
  }
  switch (spec.label) {
    case ClassSpec::Label::kF:
      if (!spec.first || !cfg.index) {
        throw std::invalid_argument("selector form needs --class F:n and --index");
      }
      return bfpqc::basis_member(BasisFamily::kImbalancedI, *spec.first,
                                 *cfg.index, max_rank);
    case ClassSpec::Label::kG:
      if (!spec.first || !cfg.index) {
        throw std::invalid_argument("selector form needs --class G:m and --index");
      }
      return bfpqc::basis_member(BasisFamily::kBalancedB, *spec.first, *cfg.index,
                                 max_rank);
    case ClassSpec::Label::kLeft: {
      if (!cfg.g_index || !cfg.f_index) {
        throw std::invalid_argument("left clusters need --g-index and --f-index");
      }
      const PatternVector g = bfpqc::basis_member(BasisFamily::kBalancedB,
                                                  *spec.first, *cfg.g_index, max_rank);
      const PatternVector f = bfpqc::basis_member(BasisFamily::kImbalancedI,
                                                  *spec.second, *cfg.f_index, max_rank);
      return bfpqc::product(g, f, max_rank);
    }
    case ClassSpec::Label::kRight: {
      if (!cfg.g_index || !cfg.f_index) {
        throw std::invalid_argument("right clusters need --f-index and --g-index");
      }
      const PatternVector f = bfpqc::basis_member(BasisFamily::kImbalancedI,
                                                  *spec.first, *cfg.f_index, max_rank);
      const PatternVector g = bfpqc::basis_member(BasisFamily::kBalancedB,
                                                  *spec.second, *cfg.g_index, max_rank);
      return bfpqc::product(f, g, max_rank);
    }
  }
  throw std::invalid_argument("no pattern given");
}

void emit_json(const Json& j, const std::string& format) {
  if (format == "jsonl") {
    std::cout << j.dump() << "\n";
  } else {
    std::cout << j.dump(2) << "\n";
  }
}

int run_classify(const ClassifyConfig& cfg, int max_rank) {
  const ClassSpec spec = ClassSpec::parse(cfg.class_text);
  const PatternVector pattern = select_pattern(spec, cfg, max_rank);
  const ClassTag tag = spec.tag(pattern.arity());
  const bfpqc::OracleSpec oracle{pattern, tag};
  const bfpqc::OutcomeDistribution dist =
      bfpqc::run_circuit(oracle, nullptr, max_rank);
  const bfpqc::ClassificationResult result = bfpqc::classify(dist, tag);

  std::map<std::uint64_t, std::uint64_t> counts;
  if (cfg.shots > 0) counts = bfpqc::sample_counts(dist, cfg.shots, cfg.seed);

  if (cfg.format == "csv") {
    std::cout << bfpqc::distribution_to_csv(dist);
  } else if (cfg.format == "json" || cfg.format == "jsonl") {
    Json j = bfpqc::result_to_json(result);
    j["announced"] = cfg.class_text;
    j["pattern"] = bfpqc::pattern_to_json(pattern);
    if (cfg.shots > 0) {
      j["shots"] = cfg.shots;
      j["seed"] = cfg.seed;
      j["counts"] = bfpqc::counts_to_json(counts, dist.num_qubits);
    }
    emit_json(j, cfg.format);
  } else {
    std::cout << "announced: " << cfg.class_text << "\n";
    std::cout << "pattern:   " << pattern.format() << "\n";
    std::cout << "verdict:   " << bfpqc::to_string(result.verdict.kind);
    if (result.verdict.kind != bfpqc::VerdictKind::kInconclusive) {
      std::cout << " (f_index " << result.verdict.f_index << ")";
    }
    std::cout << "\nwinner:    " << bfpqc::to_string(result.winner) << "\n";
    std::cout << "distribution:\n";
    for (std::uint64_t x = 0; x < dist.probabilities.size(); ++x) {
      if (dist.probabilities[x] > bfpqc::kProbabilityFloor) {
        std::cout << "  " << bfpqc::format_outcome(x, dist.num_qubits) << "  "
                  << number_text(dist.probabilities[x]) << "\n";
      }
    }
    if (cfg.shots > 0) {
      std::cout << "counts (" << cfg.shots << " shots, seed " << cfg.seed << "):\n";
      for (const auto& [outcome, count] : counts) {
        std::cout << "  " << bfpqc::format_outcome(outcome, dist.num_qubits)
                  << "  " << count << "\n";
      }
    }
  }
  return result.verdict.kind == bfpqc::VerdictKind::kInconclusive
             ? kExitInconclusive
             : 0;
}

struct GameConfig {
  std::string class_text;
  std::optional<std::uint64_t> index;
  std::optional<std::uint64_t> f_index;
  std::optional<std::uint64_t> g_index;
  std::uint64_t seed = 0;
  std::string format = "text";
};

int run_game(const GameConfig& cfg, int max_rank) {
  const ClassSpec spec = ClassSpec::parse(cfg.class_text);
  ClassifyConfig select;
  select.index = cfg.index;
  select.f_index = cfg.f_index;
  select.g_index = cfg.g_index;
  const PatternVector pattern = select_pattern(spec, select, max_rank);
  const ClassTag tag = spec.tag(pattern.arity());
  const bfpqc::ClassificationResult result =
      bfpqc::play_game({pattern, tag}, cfg.seed, max_rank);

  if (cfg.format == "json" || cfg.format == "jsonl") {
    Json j = bfpqc::result_to_json(result);
    j["announced"] = cfg.class_text;
    j["seed"] = cfg.seed;
    emit_json(j, cfg.format);
  } else {
    std::cout << "Bob announces: " << cfg.class_text << "\n";
    std::cout << "single shot:   "
              << bfpqc::format_outcome(*result.sampled_outcome,
                                       result.distribution.num_qubits)
              << " (seed " << cfg.seed << ")\n";
    std::cout << "verdict:       " << bfpqc::to_string(result.verdict.kind);
    if (result.verdict.kind != bfpqc::VerdictKind::kInconclusive) {
      std::cout << " (f_index " << result.verdict.f_index << ")";
    }
    if (result.verdict.random_part) {
      std::cout << ", unresolved part " << *result.verdict.random_part;
    }
    std::cout << "\nwinner:        " << bfpqc::to_string(result.winner) << "\n";
  }
  return result.verdict.kind == bfpqc::VerdictKind::kInconclusive
             ? kExitInconclusive
             : 0;
}

int run_verify(int max_half_rank, const std::string& format) {
  const auto results = bfpqc::run_standard_suite({max_half_rank});
  int failures = 0;
  if (format == "json" || format == "jsonl") {
    Json all = Json::array();
    for (const auto& r : results) {
      all.push_back(Json{{"id", r.id}, {"passed", r.passed}, {"detail", r.detail}});
      if (!r.passed) ++failures;
    }
    emit_json(all, format);
  } else {
    failures = bfpqc::write_report(results, std::cout);
    std::cout << (failures == 0 ? "all invariants hold\n"
                                : std::to_string(failures) + " invariant(s) failed\n");
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pattern-algebra simulator for single-query Boolean function classification"};
  app.require_subcommand(1);

  // basis --------------------------------------------------------------------
  std::string basis_family;
  int basis_half_rank = 1;
  std::optional<std::uint64_t> basis_index;
  std::string basis_format = "text";
  CLI::App* basis_cmd = app.add_subcommand(
      "basis", "Print a basis of the I (imbalanced) or B (balanced) sequence");
  basis_cmd->add_option("family", basis_family, "I or B")->required();
  basis_cmd->add_option("half_rank", basis_half_rank, "n in I_2n / m in B_2m")
      ->required();
  basis_cmd->add_option("--index", basis_index, "print only this member (lazy)");
  basis_cmd->add_option("--format", basis_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  // product ------------------------------------------------------------------
  std::string prod_left, prod_right;
  bool prod_star = false;
  std::string prod_format = "text";
  CLI::App* product_cmd =
      app.add_subcommand("product", "Pattern product of two bit vectors");
  product_cmd->add_option("p", prod_left, "left pattern (MSB first)")->required();
  product_cmd->add_option("q", prod_right, "right pattern (MSB first)")->required();
  product_cmd->add_flag("--star", prod_star,
                        "compute via the extended-product truth-table route");
  product_cmd->add_option("--format", prod_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  // ket ----------------------------------------------------------------------
  std::string ket_pattern;
  std::string ket_format = "text";
  CLI::App* ket_cmd =
      app.add_subcommand("ket", "Print the pattern-ket amplitudes of a pattern");
  ket_cmd->add_option("pattern", ket_pattern, "pattern (MSB first)")->required();
  ket_cmd->add_option("--format", ket_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  // classify -----------------------------------------------------------------
  ClassifyConfig classify_cfg;
  CLI::App* classify_cmd = app.add_subcommand(
      "classify", "Run the single-query pipeline and classify the outcome");
  classify_cmd
      ->add_option("--class", classify_cfg.class_text,
                   "announced class: F, G, F:n, G:m, left:m,n, right:n,m")
      ->required();
  CLI::Option* pattern_opt =
      classify_cmd->add_option("--pattern", classify_cfg.pattern_text,
                               "hidden function as a pattern string");
  classify_cmd->add_option("--index", classify_cfg.index, "member index for F:n / G:m")
      ->excludes(pattern_opt);
  classify_cmd
      ->add_option("--f-index", classify_cfg.f_index, "promised-part index (clusters)")
      ->excludes(pattern_opt);
  classify_cmd
      ->add_option("--g-index", classify_cfg.g_index, "balanced-part index (clusters)")
      ->excludes(pattern_opt);
  classify_cmd
      ->add_option("--shots", classify_cfg.shots,
                   "also sample this many shots (default: exact only)")
      ->check(CLI::PositiveNumber);
  classify_cmd->add_option("--seed", classify_cfg.seed, "sampling seed");
  classify_cmd
      ->add_option("--format", classify_cfg.format, "text, json, jsonl or csv")
      ->check(CLI::IsMember({"text", "json", "jsonl", "csv"}));

  // game ---------------------------------------------------------------------
  GameConfig game_cfg;
  CLI::App* game_cmd = app.add_subcommand(
      "game", "Play one round: Bob hides an oracle, Alice queries once");
  game_cmd->add_option("--bob-class", game_cfg.class_text,
                       "F:n, G:m, left:m,n or right:n,m")
      ->required();
  game_cmd->add_option("--index", game_cfg.index, "member index for F:n / G:m");
  game_cmd->add_option("--f-index", game_cfg.f_index, "promised-part index");
  game_cmd->add_option("--g-index", game_cfg.g_index, "balanced-part index");
  game_cmd->add_option("--seed", game_cfg.seed, "seed for the single shot");
  game_cmd->add_option("--format", game_cfg.format, "text, json or jsonl")
      ->check(CLI::IsMember({"text", "json", "jsonl"}));

  // verify -------------------------------------------------------------------
  int verify_max_rank = 3;
  std::string verify_format = "text";
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "Run the invariant suites of every module");
  verify_cmd
      ->add_option("--max-rank", verify_max_rank,
                   "largest half rank swept by the exhaustive checks")
      ->check(CLI::Range(1, 5));
  verify_cmd->add_option("--format", verify_format, "text, json or jsonl")
      ->check(CLI::IsMember({"text", "json", "jsonl"}));

  CLI11_PARSE(app, argc, argv);

  try {
    const int max_rank = env_max_rank();

    if (basis_cmd->parsed()) {
      BasisFamily family;
      if (basis_family == "I" || basis_family == "i") {
        family = BasisFamily::kImbalancedI;
      } else if (basis_family == "B" || basis_family == "b") {
        family = BasisFamily::kBalancedB;
      } else {
        throw std::invalid_argument("family must be I or B");
      }
      if (basis_index) {
        const PatternVector member =
            bfpqc::basis_member(family, basis_half_rank, *basis_index, max_rank);
        if (basis_format == "json") {
          emit_json(bfpqc::pattern_to_json(member), basis_format);
        } else {
          std::cout << member.format() << "\n";
        }
      } else {
        const bfpqc::PatternBasis basis =
            family == BasisFamily::kImbalancedI
                ? bfpqc::basis_I(basis_half_rank, max_rank)
                : bfpqc::basis_B(basis_half_rank, max_rank);
        if (basis_format == "json") {
          Json members = Json::array();
          for (std::uint64_t i = 0; i < basis.size(); ++i) {
            members.push_back(basis.member(i).format());
          }
          emit_json(Json{{"family", basis_family},
                         {"rank", basis.rank()},
                         {"members", std::move(members)}},
                    basis_format);
        } else {
          for (std::uint64_t i = 0; i < basis.size(); ++i) {
            std::cout << basis.member(i).format() << "\n";
          }
        }
      }
      return 0;
    }

    if (product_cmd->parsed()) {
      const PatternVector p = PatternVector::parse(prod_left);
      const PatternVector q = PatternVector::parse(prod_right);
      const PatternVector r = prod_star ? bfpqc::extended_product(p, q, max_rank)
                                        : bfpqc::product(p, q, max_rank);
      if (prod_format == "json") {
        emit_json(Json{{"p", p.format()},
                       {"q", q.format()},
                       {"operator", prod_star ? "star" : "odot"},
                       {"result", bfpqc::pattern_to_json(r)}},
                  prod_format);
      } else {
        std::cout << r.format() << "\n";
      }
      return 0;
    }

    if (ket_cmd->parsed()) {
      const PatternVector p = PatternVector::parse(ket_pattern);
      const bfpqc::StateVector ket = bfpqc::pattern_ket(p, max_rank);
      if (ket_format == "json") {
        Json amps = Json::object();
        for (std::uint64_t i = 0; i < ket.dimension(); ++i) {
          amps[bfpqc::format_outcome(i, ket.num_qubits())] = ket.amplitude(i);
        }
        emit_json(Json{{"qubits", ket.num_qubits()}, {"amplitudes", std::move(amps)}},
                  ket_format);
      } else {
        for (std::uint64_t i = 0; i < ket.dimension(); ++i) {
          std::cout << bfpqc::format_outcome(i, ket.num_qubits()) << "  "
                    << number_text(ket.amplitude(i)) << "\n";
        }
      }
      return 0;
    }

    if (classify_cmd->parsed()) return run_classify(classify_cfg, max_rank);
    if (game_cmd->parsed()) return run_game(game_cfg, max_rank);
    if (verify_cmd->parsed()) return run_verify(verify_max_rank, verify_format);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
