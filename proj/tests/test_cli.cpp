#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "subind/request.hpp"

using namespace subind;
using report::json;
using request::parse_request;
using request::run;
namespace fs = std::filesystem;

namespace {

std::string path_of(const DomainError& e) {
  std::string msg = e.what();
  return msg.substr(0, msg.find(':'));
}

// Checks that parsing fails and the error message starts with the JSON path
// of the offending field.
void expect_path(const std::string& text, const std::string& path) {
  try {
    parse_request(text);
    FAIL(("expected a DomainError for " + path));
  } catch (const DomainError& e) {
    CHECK(path_of(e) == path);
  }
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path scratch_dir() {
  auto dir = fs::temp_directory_path() / "subind-cli-test";
  fs::create_directories(dir);
  return dir;
}

fs::path write_request(const std::string& name, const std::string& text) {
  auto p = scratch_dir() / name;
  std::ofstream out(p, std::ios::binary);
  out << text;
  return p;
}

// Runs the installed binary, captures stdout, and returns the exit status.
int run_cli(const std::string& args, const fs::path& out,
            const std::string& env = "") {
  std::string cmd = env + (env.empty() ? "" : " ") + SUBIND_CLI_PATH + " " + args +
                    " > " + out.string() + " 2> /dev/null";
  int raw = std::system(cmd.c_str());
  REQUIRE(raw != -1);
  return WEXITSTATUS(raw);
}

}  // namespace

TEST_CASE("request envelope validation names the offending path") {
  expect_path("not json", "$");
  expect_path("[1, 2]", "$");
  expect_path(R"({"task": "decide"})", "$.kind");
  expect_path(R"({"kind": "matroid", "task": "decide"})", "$.kind");
  expect_path(R"({"kind": "site", "task": "decide"})", "$.task");
  expect_path(R"({"kind": "oml", "task": "tensor"})", "$.task");
  expect_path(R"({"kind": "finset", "task": "decide", "budget": -4})", "$.budget");
  expect_path(R"({"kind": "finset", "task": "decide", "tol": "zero"})", "$.tol");
}

TEST_CASE("long task aliases fold to the canonical names") {
  auto req = parse_request(
      R"({"kind": "finset", "task": "compatibility",
          "payload": {"ambient": ["x"], "left": [], "right": []}})");
  CHECK(req.task == "compat");
  auto suite = parse_request(R"({"kind": "all", "task": "theorem-suite"})");
  CHECK(suite.task == "suite");
}

TEST_CASE("budget accepts both the integer and the object form") {
  auto flat = parse_request(
      R"({"kind": "finset", "task": "decide", "budget": 7,
          "payload": {"ambient": ["x"], "left": [], "right": []}})");
  CHECK(flat.budget.max_pairs == 7);
  CHECK(flat.budget.max_candidates == 7);
  auto split = parse_request(
      R"({"kind": "finset", "task": "decide",
          "budget": {"max_pairs": 3},
          "payload": {"ambient": ["x"], "left": [], "right": []}})");
  CHECK(split.budget.max_pairs == 3);
  CHECK(split.budget.max_candidates == SearchBudget::unlimited);
}

TEST_CASE("payload validation happens before any search runs") {
  expect_path(
      R"({"kind": "finset", "task": "decide",
          "payload": {"ambient": ["x", "x"], "left": [], "right": []}})",
      "$.payload.ambient[1]");
  expect_path(
      R"({"kind": "finset", "task": "decide",
          "payload": {"ambient": ["x"], "left": ["q"], "right": []}})",
      "$.payload.left[0]");
  expect_path(
      R"({"kind": "finvect", "task": "decide",
          "payload": {"p": 9, "ambient_dim": 2, "left": [], "right": []}})",
      "$.payload.p");
  expect_path(
      R"({"kind": "finvect", "task": "decide",
          "payload": {"p": 2, "ambient_dim": 2,
                      "left": [[1, 0], [1, 0]], "right": []}})",
      "$.payload.left");
  expect_path(
      R"({"kind": "pregeom", "task": "decide",
          "payload": {"geometry": {"builder": "span-f2", "dim": 2},
                      "left_mask": 3, "right_mask": 1}})",
      "$.payload.left_mask");
  expect_path(
      R"({"kind": "bool", "task": "decide",
          "payload": {"atoms": 2, "left_blocks": [0, 5], "right_blocks": [0, 0]}})",
      "$.payload.left_blocks[1]");
  expect_path(
      R"({"kind": "opalg", "task": "decide",
          "payload": {"f_a": {"canonical": "left", "src": 2, "mult": 2},
                      "f_b": {"canonical": "right", "src": 2, "mult": 3}}})",
      "$.payload.f_b");
  expect_path(
      R"({"kind": "site", "task": "audit",
          "payload": {"regions": [{"name": "o", "dim": 2}],
                      "embeddings": [{"name": "e", "dom": "o", "cod": "q",
                                      "canonical": "left"}]}})",
      "$.payload.embeddings[0].cod");
}

TEST_CASE("a non-orthomodular table is rejected naming the violating pair") {
  // Benzene ring: 0 < a < b < 1 and 0 < b' < a' < 1 with a orthogonal to a'.
  const std::string benzene = R"({"kind": "oml", "task": "audit", "payload": {
      "lattice": {"builder": "table", "n": 6,
        "meet": [0,0,0,0,0,0, 0,1,1,0,0,1, 0,1,2,0,0,2,
                 0,0,0,3,3,3, 0,0,0,3,4,4, 0,1,2,3,4,5],
        "join": [0,1,2,3,4,5, 1,1,2,5,5,5, 2,2,2,5,5,5,
                 3,5,5,3,4,5, 4,5,5,4,4,5, 5,5,5,5,5,5],
        "ortho": [5,4,3,2,1,0], "zero": 0, "one": 5}}})";
  try {
    parse_request(benzene);
    FAIL("the benzene ring must not validate");
  } catch (const DomainError& e) {
    std::string msg = e.what();
    CHECK(msg ==
          "$.payload.lattice: orthomodular law fails at (1, 2): "
          "join(1, meet(4, 2)) = 1, expected 2");
  }
}

TEST_CASE("decide reports carry the verdict, the criterion, and the evidence") {
  auto req = parse_request(
      R"({"kind": "finset", "task": "decide",
          "payload": {"ambient": ["x", "y", "z"], "left": ["x"], "right": ["y"]}})");
  auto out = run(req);
  CHECK(out.exit_code == 0);
  CHECK(out.body.at("verdict") == "independent");
  CHECK(out.body.at("criterion").at("holds") == true);
  CHECK(out.body.at("criterion").at("agrees") == true);
  CHECK(out.body.at("independence").at("witness_count").get<std::size_t>() ==
        out.body.at("independence").at("witness_table").size());
  CHECK(out.body.at("related_claims").size() == 2);
}

TEST_CASE("an exhausted budget yields an undecided report and exit code 2") {
  auto req = parse_request(
      R"({"kind": "finset", "task": "decide", "budget": 1,
          "payload": {"ambient": ["x", "y"], "left": ["x", "y"], "right": ["x", "y"]}})");
  auto out = run(req);
  CHECK(out.exit_code == 2);
  CHECK(out.body.at("verdict") == "undecided");
  CHECK(out.body.at("independence").at("stats").at("budget_exhausted") == true);
}

TEST_CASE("the atom split adjudication records the contradiction") {
  auto req = parse_request(R"({"kind": "bool", "task": "adjudicate",
                               "payload": {"n": 3, "k": 1}})");
  auto out = run(req);
  CHECK(out.exit_code == 0);
  CHECK(out.body.at("verdict") == "not-independent");
  CHECK(out.body.at("agreement") == "contradict");
  CHECK(out.body.at("restricted_extension_ok") == true);
  CHECK(out.body.at("restricted_pairs").get<std::uint64_t>() == 2);
}

TEST_CASE("a failed universal property is an audit finding, not an error") {
  auto req = parse_request(
      R"({"kind": "bool", "task": "audit",
          "payload": {"left_atoms": 2, "right_atoms": 2, "mode": "exhaustive"}})");
  auto out = run(req);
  CHECK(out.exit_code == 0);
  CHECK(out.body.at("verdict") == "not-a-coproduct");
  CHECK(out.body.at("coproduct").at("universal_property") == "failed");
  auto constructive = parse_request(
      R"({"kind": "bool", "task": "audit",
          "payload": {"left_atoms": 2, "right_atoms": 2, "mode": "constructive"}})");
  auto ok = run(constructive);
  CHECK(ok.exit_code == 0);
  CHECK(ok.body.at("verdict") == "independent");
}

TEST_CASE("decided reports are byte-identical across runs and thread counts") {
  const char* text =
      R"({"kind": "finvect", "task": "decide",
          "payload": {"p": 3, "ambient_dim": 2, "left": [[1, 0]], "right": [[0, 1]]}})";
  auto a = report::to_json_text(run(parse_request(text), 1).body);
  auto b = report::to_json_text(run(parse_request(text), 1).body);
  auto c = report::to_json_text(run(parse_request(text), 2).body);
  CHECK(a == b);
  CHECK(a == c);
}

TEST_CASE("the suite runs decided with the documented refutations flagged") {
  auto out = run(parse_request(R"({"kind": "all", "task": "suite"})"), 2);
  CHECK(out.exit_code == 0);
  CHECK(out.body.at("verdict") == "decided");
  CHECK(out.body.at("claims").size() == 17);
  CHECK(out.body.at("summary").at("undecided").get<int>() == 0);
  int contradict = out.body.at("summary").at("contradict").get<int>();
  CHECK(contradict == 2);
  for (const auto& claim : out.body.at("claims"))
    if (claim.at("agreement") == "contradict")
      CHECK((claim.at("id") == "pregeom-meet-triviality" ||
             claim.at("id") == "atom-split-independence"));
}

TEST_CASE("binary end to end: decide, report file, and exit codes") {
  auto dir = scratch_dir();
  auto req = write_request("decide.json",
                           R"({"kind": "finset", "payload": {
                               "ambient": ["x", "y"], "left": ["x"], "right": ["y"]}})");
  auto out = dir / "decide_out.json";

  SUBCASE("a decided verdict exits 0 and prints the report") {
    CHECK(run_cli("decide --input " + req.string(), out) == 0);
    auto body = json::parse(slurp(out));
    CHECK(body.at("verdict") == "independent");
    CHECK(body.at("task") == "decide");
  }

  SUBCASE("repeated runs and differing --jobs produce identical bytes") {
    auto out2 = dir / "decide_out2.json";
    CHECK(run_cli("decide --input " + req.string(), out) == 0);
    CHECK(run_cli("decide --jobs 2 --input " + req.string(), out2) == 0);
    CHECK(slurp(out) == slurp(out2));
  }

  SUBCASE("the subcommand must agree with the request task") {
    auto mism = write_request("mismatch.json",
                              R"({"kind": "finset", "task": "decide", "payload": {
                                  "ambient": ["x"], "left": [], "right": []}})");
    CHECK(run_cli("compat --input " + mism.string(), out) == 1);
    auto body = json::parse(slurp(out));
    CHECK(body.at("error").at("type") == "domain-error");
  }

  SUBCASE("malformed input exits 1 with a typed error report") {
    auto bad = write_request("bad.json", "{ not json");
    CHECK(run_cli("decide --input " + bad.string(), out) == 1);
    auto body = json::parse(slurp(out));
    CHECK(body.at("error").at("type") == "domain-error");
    CHECK(body.at("tool") == "subind");
  }

  SUBCASE("an exhausted budget exits 2") {
    auto tight = write_request("tight.json",
                               R"({"kind": "finset", "payload": {
                                   "ambient": ["x", "y"], "left": ["x", "y"],
                                   "right": ["x", "y"]}})");
    CHECK(run_cli("decide --budget 1 --input " + tight.string(), out) == 2);
  }

  SUBCASE("SUBIND_REPORT_DIR mirrors the report atomically") {
    auto mirror = dir / "mirror";
    fs::create_directories(mirror);
    CHECK(run_cli("decide --input " + req.string(), out,
                  "SUBIND_REPORT_DIR=" + mirror.string()) == 0);
    CHECK(slurp(mirror / "report.json") == slurp(out));
    CHECK(!fs::exists(mirror / "report.json.tmp"));
  }

  SUBCASE("the text format renders one fact per line") {
    auto txt = dir / "decide_out.txt";
    CHECK(run_cli("decide --report text --input " + req.string(), txt) == 0);
    auto text = slurp(txt);
    CHECK(text.find("verdict: independent") != std::string::npos);
  }

  SUBCASE("stdin input works through the dash convention") {
    CHECK(run_cli("decide --input - < " + req.string(), out) == 0);
    CHECK(json::parse(slurp(out)).at("verdict") == "independent");
  }
}
