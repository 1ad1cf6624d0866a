// Acceptance criteria 1-9, one PASS/FAIL line each.
//
// usage: acceptance <simpkit-cli> <acceptance manifest> <work dir>
// Criterion 9 runs the manifest twice through the command-line tool and
// compares the bundles byte for byte.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "simpkit/suites.hpp"

namespace fs = std::filesystem;
using sk::Report;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::map<std::string, std::string> tree(const fs::path& root) {
  std::map<std::string, std::string> out;
  if (!fs::exists(root)) return out;
  for (auto& e : fs::recursive_directory_iterator(root))
    if (e.is_regular_file()) out[fs::relative(e.path(), root).string()] = slurp(e.path());
  return out;
}

bool run_cli(const std::string& cli, const fs::path& manifest, const fs::path& out, int jobs) {
  fs::remove_all(out);
  std::string cmd = "SIMPKIT_CACHE_DIR= \"" + cli + "\" report \"" + manifest.string() + "\" --out \"" +
                    out.string() + "\" --jobs " + std::to_string(jobs) + " --quiet > /dev/null";
  return std::system(cmd.c_str()) == 0;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 4) {
    std::cerr << "usage: acceptance <simpkit-cli> <manifest> <work dir>\n";
    return 2;
  }
  const std::string cli = argv[1];
  const fs::path manifest = argv[2], work = argv[3];
  int failed = 0;
  std::map<std::string, std::string> in_process;

  for (const auto& e : sk::acceptance_suites()) {
    Report r;
    try {
      r = e.run();
    } catch (const std::exception& ex) {
      r.verdict = "fails";
      r.counterexample = {{"error", ex.what()}};
    }
    const auto& d = r.details;
    std::cout << (r.holds() ? "PASS" : "FAIL") << " " << e.criterion << " " << e.name;
    if (d.contains("total")) std::cout << " (" << d["total"].get<int>() - d["failed"].get<int>() << "/" << d["total"] << " checks)";
    std::cout << "\n";
    if (!r.holds()) {
      ++failed;
      std::cout << "  " << r.counterexample.dump() << "\n";
    }
    in_process[std::to_string(e.criterion) + "-" + e.name] = r.to_json().dump(2) + "\n";
  }

  // 9: two runs, different worker counts, same bytes; the suite reports also
  // match the ones computed in this process.
  fs::create_directories(work);
  bool ok1 = run_cli(cli, manifest, work / "run1", 1);
  bool ok2 = run_cli(cli, manifest, work / "run2", 2);
  auto a = tree(work / "run1"), b = tree(work / "run2");
  std::string why;
  if (!ok1 || !ok2) why = "a run did not exit 0";
  else if (a.empty()) why = "empty bundle";
  else if (a != b) why = "bundles differ";
  for (auto& [name, text] : in_process) {
    auto it = a.find("reports/" + name + ".json");
    if (why.empty() && (it == a.end() || it->second != text)) why = "report " + name + " differs from the in-process run";
  }
  std::cout << (why.empty() ? "PASS" : "FAIL") << " 9 determinism (" << a.size() << " files)\n";
  if (!why.empty()) {
    ++failed;
    std::cout << "  " << why << "\n";
  }
  return failed ? 1 : 0;
}
