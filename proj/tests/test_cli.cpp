#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>

#include "bfpqc/verify.hpp"

namespace {

using nlohmann::json;

struct CmdResult {
  int exit_code = -1;
  std::string output;
};

CmdResult run_cli(const std::string& args) {
  const std::string cmd = std::string(BFPQC_CLI_PATH) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buf{};
  CmdResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    result.output.append(buf.data(), got);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

// Structural validator for the subset of JSON Schema the shipped schema
// uses: type, enum, required, properties, patternProperties,
// additionalProperties, pattern, minimum, maximum.
bool validates(const json& schema, const json& value, std::string* why) {
  if (schema.contains("type")) {
    const auto matches_type = [&](const std::string& t) {
      if (t == "object") return value.is_object();
      if (t == "string") return value.is_string();
      if (t == "integer") return value.is_number_integer() ||
                                 value.is_number_unsigned();
      if (t == "number") return value.is_number();
      if (t == "null") return value.is_null();
      if (t == "boolean") return value.is_boolean();
      if (t == "array") return value.is_array();
      return false;
    };
    bool ok = false;
    if (schema["type"].is_array()) {
      for (const auto& t : schema["type"]) ok = ok || matches_type(t);
    } else {
      ok = matches_type(schema["type"]);
    }
    if (!ok) {
      *why = "type mismatch against " + schema["type"].dump();
      return false;
    }
  }
  if (schema.contains("enum")) {
    bool ok = false;
    for (const auto& option : schema["enum"]) ok = ok || option == value;
    if (!ok) {
      *why = "value " + value.dump() + " not in enum";
      return false;
    }
  }
  if (schema.contains("pattern") && value.is_string()) {
    if (!std::regex_match(value.get<std::string>(),
                          std::regex(schema["pattern"].get<std::string>()))) {
      *why = "pattern mismatch";
      return false;
    }
  }
  if (value.is_number()) {
    if (schema.contains("minimum") &&
        value.get<double>() < schema["minimum"].get<double>()) {
      *why = "below minimum";
      return false;
    }
    if (schema.contains("maximum") &&
        value.get<double>() > schema["maximum"].get<double>()) {
      *why = "above maximum";
      return false;
    }
  }
  if (!value.is_object()) return true;

  if (schema.contains("required")) {
    for (const auto& key : schema["required"]) {
      if (!value.contains(key.get<std::string>())) {
        *why = "missing required key " + key.dump();
        return false;
      }
    }
  }
  for (const auto& [key, member] : value.items()) {
    bool matched = false;
    if (schema.contains("properties") && schema["properties"].contains(key)) {
      matched = true;
      if (!validates(schema["properties"][key], member, why)) {
        *why = key + ": " + *why;
        return false;
      }
    }
    if (schema.contains("patternProperties")) {
      for (const auto& [pat, sub] : schema["patternProperties"].items()) {
        if (std::regex_match(key, std::regex(pat))) {
          matched = true;
          if (!validates(sub, member, why)) {
            *why = key + ": " + *why;
            return false;
          }
        }
      }
    }
    if (!matched && schema.contains("additionalProperties") &&
        schema["additionalProperties"].is_boolean() &&
        !schema["additionalProperties"].get<bool>()) {
      *why = "unexpected key " + key;
      return false;
    }
  }
  return true;
}

json load_schema() {
  std::ifstream in(BFPQC_SCHEMA_PATH);
  REQUIRE(in.good());
  json schema;
  in >> schema;
  return schema;
}

void check_against_schema(const std::string& text) {
  const json schema = load_schema();
  std::string why;
  const bool ok = validates(schema, json::parse(text), &why);
  INFO(why);
  CHECK(ok);
}

}  // namespace

TEST_CASE("basis command") {
  CHECK(run_cli("basis I 2 --index 3").output == "1000100010000111\n");
  CHECK(run_cli("basis I 1 --index 0").output == "0001\n");
  const CmdResult b = run_cli("basis B 1");
  CHECK(b.exit_code == 0);
  CHECK(b.output == "0000\n0101\n0011\n0110\n");
  CHECK(run_cli("basis X 1").exit_code == 1);
  CHECK(run_cli("basis I 9").exit_code == 1);  // full listing beyond the cap
  CHECK(run_cli("basis I 9 --index 7").exit_code == 0);
}

TEST_CASE("product and ket commands") {
  CHECK(run_cli("product 01 1100").output == "11000011\n");
  CHECK(run_cli("product 0101 0001").output == "0001111000011110\n");
  CHECK(run_cli("product 0001 1000 --star").output ==
        run_cli("product 0001 1000").output);
  const CmdResult ket = run_cli("ket 1000");
  CHECK(ket.output == "00  0.5\n01  0.5\n10  0.5\n11  -0.5\n");
  CHECK(run_cli("ket 10z0").exit_code == 1);
}

TEST_CASE("classify exit codes") {
  const CmdResult hit = run_cli("classify --class F --pattern 1000100010000111");
  CHECK(hit.exit_code == 0);
  CHECK(hit.output.find("identified") != std::string::npos);
  CHECK(hit.output.find("0011") != std::string::npos);

  const CmdResult miss = run_cli("classify --class G --pattern 0101");
  CHECK(miss.exit_code == 2);
  CHECK(miss.output.find("inconclusive") != std::string::npos);

  const CmdResult partial =
      run_cli("classify --class left:1,1 --g-index 3 --f-index 3");
  CHECK(partial.exit_code == 0);
  CHECK(partial.output.find("partial_left") != std::string::npos);

  CHECK(run_cli("classify --class F --pattern 10x0").exit_code == 1);
  CHECK(run_cli("classify --class F --pattern 101").exit_code == 1);
  // Selector and raw pattern are mutually exclusive.
  CHECK(run_cli("classify --class F:1 --pattern 1000 --index 3").exit_code != 0);
}

TEST_CASE("classify json output validates against the shipped schema") {
  const CmdResult res = run_cli(
      "classify --class left:1,1 --g-index 3 --f-index 3 --format json "
      "--shots 64 --seed 9");
  CHECK(res.exit_code == 0);
  check_against_schema(res.output);

  const json j = json::parse(res.output);
  CHECK(j.at("verdict") == "partial_left");
  CHECK(j.at("f_index") == 3);
  CHECK(j.at("winner") == "alice");
  CHECK(j.at("distribution").at("probs").size() == 4);
  std::uint64_t total = 0;
  for (const auto& [bits, count] : j.at("counts").items()) {
    total += count.get<std::uint64_t>();
    CHECK(bits.substr(2) == "11");  // support is x.11 only
  }
  CHECK(total == 64);
}

TEST_CASE("game command") {
  const CmdResult game =
      run_cli("game --bob-class F:2 --index 3 --seed 7 --format json");
  CHECK(game.exit_code == 0);
  check_against_schema(game.output);
  const json j = json::parse(game.output);
  CHECK(j.at("verdict") == "identified");
  CHECK(j.at("sampled_outcome") == "0011");

  const CmdResult lost = run_cli("game --bob-class G:1 --index 1 --seed 3");
  CHECK(lost.exit_code == 2);
  CHECK(lost.output.find("bob") != std::string::npos);

  const CmdResult left = run_cli(
      "game --bob-class left:1,1 --g-index 3 --f-index 3 --seed 5 --format json");
  CHECK(left.exit_code == 0);
  check_against_schema(left.output);
  CHECK(json::parse(left.output).at("verdict") == "partial_left");
  CHECK(json::parse(left.output).at("f_index") == 3);

  const CmdResult right = run_cli(
      "game --bob-class right:1,1 --f-index 3 --g-index 3 --seed 5 --format jsonl");
  CHECK(right.exit_code == 0);
  CHECK(right.output.find('\n') == right.output.size() - 1);  // single line
  check_against_schema(right.output);
  CHECK(json::parse(right.output).at("verdict") == "partial_right");
}

TEST_CASE("identical seed and flags give byte-identical output") {
  const std::string cmd =
      "classify --class F:2 --index 5 --shots 256 --seed 42 --format json";
  CHECK(run_cli(cmd).output == run_cli(cmd).output);
  const std::string game_cmd = "game --bob-class left:1,1 --g-index 2 --f-index 1 --seed 6";
  CHECK(run_cli(game_cmd).output == run_cli(game_cmd).output);
}

TEST_CASE("csv output") {
  const CmdResult res =
      run_cli("classify --class F --pattern 1000100010000111 --format csv");
  CHECK(res.exit_code == 0);
  CHECK(res.output == "bitstring,probability\n0011,1\n");
}

TEST_CASE("verify command") {
  const CmdResult res = run_cli("verify --max-rank 1");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("PASS bfpqc/promised_completeness") != std::string::npos);
  CHECK(res.output.find("FAIL") == std::string::npos);
  CHECK(res.output.find("all invariants hold") != std::string::npos);
}

TEST_CASE("verify report flags injected failures") {
  // The aggregation seam the CLI uses: a single failed check must surface as
  // FAIL and a nonzero failure count.
  const std::vector<bfpqc::CheckResult> results = {
      {"pattern/orthogonality_symmetry", true, "ok"},
      {"pattern/basis_closure", false, "injected mutation"},
  };
  std::ostringstream out;
  const int failures = bfpqc::write_report(results, out);
  CHECK(failures == 1);
  CHECK(out.str().find("FAIL pattern/basis_closure") != std::string::npos);
}

TEST_CASE("size limit override via environment") {
  // env prefix works because run_cli goes through the shell
  CmdResult res = run_cli("classify --class F --pattern 1000100010000111");
  CHECK(res.exit_code == 0);
  const std::string cmd = std::string("BFPQC_MAX_RANK=2 ") + BFPQC_CLI_PATH +
                          " classify --class F --pattern 1000100010000111 2>&1";
  std::array<char, 4096> buf{};
  std::string output;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    output.append(buf.data(), got);
  }
  const int status = pclose(pipe);
  CHECK(WEXITSTATUS(status) == 1);
  CHECK(output.find("limit") != std::string::npos);
}
