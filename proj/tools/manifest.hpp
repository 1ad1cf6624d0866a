// Manifests, task execution and the report cache behind the command-line tool.
#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include <json.hpp>

#include "simpkit/report.hpp"

namespace sk::cli {

using json = nlohmann::json;
namespace fs = std::filesystem;

// Rejected input: unresolved names, malformed JSON, bad objects.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// kinds: sset, category, complex, dg, descent
struct ObjectRef {
  std::string kind;
  fs::path file;
  json content;  // parsed and validated on load
};

struct Task {
  std::string name;
  std::string op;
  json args = json::object();
  int bound = 1;
  long timeout_ms = 0;  // 0: no limit
};

struct Manifest {
  std::string name;
  std::map<std::string, ObjectRef> objects;
  std::vector<Task> tasks;
  fs::path output;
};

// Reads, resolves and validates; relative paths are taken from the
// manifest's directory.
Manifest load_manifest(const fs::path& path);
// Parses a JSON object file and checks it builds as the given kind; the
// diagnostic names the offending generator or entry.
ObjectRef load_object(const std::string& kind, const fs::path& file);
// Short description of a built object (generator counts, ranks, sizes).
json describe_object(const ObjectRef& obj, int bound);
// Canonical JSON of a builtin fixture, for writing object files.
json builtin_object(const std::string& name, std::string* kind);
std::vector<std::string> builtin_names();

std::vector<std::string> operation_names();
// Runs one task. Timeouts give "inconclusive"; input errors throw InputError.
Report run_task(const Task& t, const std::map<std::string, ObjectRef>& objects);

// Reports keyed by the SHA-256 of the task, the contents of the objects it
// names and the format version. Files are written to a temporary name and
// renamed, so concurrent readers never see partial entries.
class Cache {
 public:
  explicit Cache(fs::path dir);
  std::string key(const Task& t, const std::map<std::string, ObjectRef>& objects) const;
  std::optional<Report> get(const std::string& key) const;
  void put(const std::string& key, const Report& r) const;

 private:
  fs::path dir_;
  mutable std::shared_mutex mu_;
};

struct RunOptions {
  int jobs = 1;
  std::optional<fs::path> cache_dir;
  long timeout_ms = 0;  // default for tasks without their own
  bool quiet = false;
};

struct TaskResult {
  Task task;
  Report report;
  bool cached = false;
};

std::vector<TaskResult> run_tasks(const Manifest& m, const RunOptions& opt);
// bundle.json plus reports/<task>.json under dir, all sorted and indented.
void write_bundle(const Manifest& m, const std::vector<TaskResult>& results, const fs::path& dir);
bool all_hold(const std::vector<TaskResult>& results);

}  // namespace sk::cli
