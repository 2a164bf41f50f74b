// Command-line front end: one request per process, report on stdout.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "subind/request.hpp"

namespace {

using subind::report::json;

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw subind::DomainError("cannot open request file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string fold_alias(std::string task) {
  if (task == "compatibility") return "compat";
  if (task == "theorem-suite") return "suite";
  return task;
}

// The subcommand names the task; a request that also carries one must agree.
std::string reconcile_task(const std::string& text, const std::string& task) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw subind::DomainError(std::string("$: malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw subind::DomainError("$: expected a request object");
  if (j.contains("task") && j.at("task").is_string()) {
    auto declared = fold_alias(j.at("task").get<std::string>());
    if (declared != task)
      throw subind::DomainError("$.task: request task \"" + declared +
                                "\" does not match the \"" + task + "\" subcommand");
  }
  j["task"] = task;
  return j.dump();
}

int emit(const subind::request::RunOutcome& outcome, const std::string& format) {
  auto json_text = subind::report::to_json_text(outcome.body);
  if (const char* dir = std::getenv("SUBIND_REPORT_DIR"))
    subind::report::write_atomic(std::string(dir) + "/report.json", json_text);
  std::cout << (format == "text" ? subind::report::to_text(outcome.body) : json_text);
  return outcome.exit_code;
}

int fail(const std::string& type, const std::string& message) {
  json body = json::object();
  body["tool"] = subind::report::kTool;
  body["version"] = subind::report::kVersion;
  body["error"] = json::object();
  body["error"]["type"] = type;
  body["error"]["message"] = message;
  std::cout << subind::report::to_json_text(body);
  std::cerr << "error: " << message << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification workbench for subobject independence on finite structures"};
  app.set_version_flag("--version", std::string(subind::report::kTool) + " " +
                                        subind::report::kVersion);
  app.require_subcommand(1);

  std::string input;
  std::string format = "json";
  int jobs = 1;
  std::uint64_t budget = 0;
  double tol = 0.0;
  int max_iter = 0;
  app.add_option("-i,--input", input, "request file, or - for stdin");
  app.add_option("--report", format, "report format")
      ->check(CLI::IsMember({"json", "text"}));
  app.add_option("-j,--jobs", jobs, "worker threads for the pair sweep")
      ->check(CLI::PositiveNumber);
  app.add_option("--budget", budget, "cap on endomorphism pairs and candidates")
      ->check(CLI::PositiveNumber);
  app.add_option("--tol", tol, "numeric tolerance for operator-algebra tasks")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-iter", max_iter, "feasibility iteration cap")
      ->check(CLI::PositiveNumber);

  const std::pair<const char*, const char*> tasks[] = {
      {"decide", "decide independence of a subobject pair"},
      {"compat", "check compatibility over the pullback"},
      {"tensor", "decide independence through a tensor structure"},
      {"suite", "run the full claim suite"},
      {"adjudicate", "adjudicate an atom-split instance"},
      {"audit", "audit a coproduct, lattice, factorization, or site"},
      {"enumerate", "enumerate subobjects or morphisms"},
  };
  for (const auto& [name, desc] : tasks) app.add_subcommand(name, desc)->fallthrough();

  CLI11_PARSE(app, argc, argv);
  const std::string task = app.get_subcommands().front()->get_name();

  try {
    std::string text;
    if (input.empty()) {
      if (task != "suite")
        return fail("domain-error", "an --input request is required for " + task);
      text = R"({"kind": "all", "task": "suite", "payload": {}})";
    } else {
      text = read_input(input);
    }
    auto req = subind::request::parse_request(reconcile_task(text, task));
    if (budget > 0) {
      req.budget.max_pairs = budget;
      req.budget.max_candidates = budget;
    }
    if (tol > 0.0) req.tol = tol;
    if (max_iter > 0) req.max_iter = max_iter;
    return emit(subind::request::run(req, jobs), format);
  } catch (const subind::DomainError& e) {
    return fail("domain-error", e.what());
  } catch (const subind::StructureError& e) {
    return fail("structure-error", e.what());
  } catch (const subind::EnumerationError& e) {
    return fail("enumeration-error", e.what());
  } catch (const std::exception& e) {
    return fail("internal-error", e.what());
  }
}
