// simpkit-cli: build objects from JSON, run checks and witnesses, and run
// manifests into report bundles.
//
// Exit status: 0 when every verdict holds, 1 when some verdict fails or is
// inconclusive, 2 on bad input.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "manifest.hpp"

using namespace sk::cli;

namespace {

// key=value, with the value read as JSON when it parses and as a string otherwise.
json parse_params(const std::vector<std::string>& params) {
  json out = json::object();
  for (const auto& p : params) {
    auto eq = p.find('=');
    if (eq == std::string::npos) throw InputError("parameter '" + p + "' is not key=value");
    std::string k = p.substr(0, eq), v = p.substr(eq + 1);
    json val = json::parse(v, nullptr, false);
    out[k] = val.is_discarded() ? json(v) : val;
  }
  return out;
}

void print_report(const sk::Report& r, bool as_json) {
  if (as_json)
    std::cout << r.to_json().dump(2) << "\n";
  else
    std::cout << r.verdict << ": " << r.claim << " (bound " << r.bound << ")\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite simplicial sets: constructions, lifting checks and witnesses"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "text";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));

  int bound = 2;
  long timeout_ms = 0;
  std::vector<std::string> params;

  auto* build = app.add_subcommand("build", "Read and validate an object file, or write a builtin fixture");
  std::string build_file, build_kind = "sset", fixture, out_file;
  build->add_option("file", build_file, "Object JSON file");
  build->add_option("--kind", build_kind, "sset, category, complex, dg or descent");
  build->add_option("--fixture", fixture, "Builtin fixture to emit instead of reading a file");
  build->add_option("-o,--output", out_file, "Where to write the fixture JSON");
  build->add_flag_callback("--list-fixtures", [] {
    for (auto& n : builtin_names()) std::cout << n << "\n";
    std::exit(0);
  });
  build->add_option("--bound", bound, "Highest level to enumerate");

  auto* check = app.add_subcommand("check", "Run one operation and print its report");
  std::string op, check_file, check_kind = "sset";
  check->add_option("op", op, "Operation")->required()->check(CLI::IsMember(operation_names()));
  check->add_option("--object", check_file, "Object JSON file");
  check->add_option("--kind", check_kind, "Kind of the object file");
  check->add_option("--param", params, "Operation argument key=value");
  check->add_option("--bound", bound, "Level bound d");
  check->add_option("--timeout-ms", timeout_ms, "Time limit; 0 for none");

  auto* witness = app.add_subcommand("witness", "Build and validate an anodyne witness");
  std::string wkind;
  witness->add_option("kind", wkind, "prism, partition, facets or twisted")->required();
  witness->add_option("--param", params, "Witness parameter key=value, e.g. m=1 n=2 k=1");

  auto* report = app.add_subcommand("report", "Run a manifest and write its report bundle");
  std::string manifest_file, out_dir, cache_dir;
  int jobs = 1;
  bool quiet = false;
  report->add_option("manifest", manifest_file, "Manifest JSON file")->required();
  report->add_option("--out", out_dir, "Bundle directory (default: the manifest's output)");
  report->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  report->add_option("--cache-dir", cache_dir, "Report cache (default: $SIMPKIT_CACHE_DIR)");
  report->add_option("--timeout-ms", timeout_ms, "Default per-task time limit; 0 for none");
  report->add_flag("--quiet", quiet, "No per-task progress on stderr");

  CLI11_PARSE(app, argc, argv);
  const bool as_json = format == "json";

  try {
    if (*build) {
      if (!fixture.empty()) {
        std::string kind;
        json j = builtin_object(fixture, &kind);
        if (out_file.empty()) {
          std::cout << j.dump(2) << "\n";
        } else {
          std::ofstream out(out_file);
          out << j.dump(2) << "\n";
          if (!out) throw InputError("cannot write " + out_file);
        }
        std::cerr << fixture << ": " << kind << "\n";
        return 0;
      }
      if (build_file.empty()) throw InputError("build needs a file or --fixture");
      ObjectRef obj = load_object(build_kind, build_file);
      json d = describe_object(obj, bound);
      if (as_json)
        std::cout << d.dump(2) << "\n";
      else
        std::cout << build_file << ": valid " << build_kind << " " << d.dump() << "\n";
      return 0;
    }
    if (*check) {
      std::map<std::string, ObjectRef> objects;
      Task t{"check", op, parse_params(params), bound, timeout_ms};
      if (!check_file.empty()) {
        objects["input"] = load_object(check_kind, check_file);
        t.args["object"] = "input";
      }
      sk::Report r = run_task(t, objects);
      print_report(r, as_json);
      return r.holds() ? 0 : 1;
    }
    if (*witness) {
      Task t{"witness", "witness", parse_params(params), 1, 0};
      t.args["kind"] = wkind;
      sk::Report r = run_task(t, {});
      if (as_json)
        std::cout << r.witness.dump(2) << "\n";
      else
        std::cout << r.verdict << ": " << wkind << " witness with " << r.witness["steps"].size() << " steps\n";
      return r.holds() ? 0 : 1;
    }
    if (*report) {
      Manifest m = load_manifest(manifest_file);
      RunOptions opt;
      opt.jobs = jobs;
      opt.timeout_ms = timeout_ms;
      opt.quiet = quiet;
      if (!cache_dir.empty())
        opt.cache_dir = cache_dir;
      else if (const char* env = std::getenv("SIMPKIT_CACHE_DIR"); env && *env)
        opt.cache_dir = env;
      std::vector<TaskResult> results = run_tasks(m, opt);
      fs::path dir = out_dir.empty() ? m.output : fs::path(out_dir);
      write_bundle(m, results, dir);
      if (as_json) {
        std::ifstream in(dir / "bundle.json");
        std::cout << in.rdbuf();
      } else {
        for (auto& r : results) std::cout << r.report.verdict << "  " << r.task.name << "\n";
        std::cout << "bundle: " << dir.string() << "\n";
      }
      return all_hold(results) ? 0 : 1;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
