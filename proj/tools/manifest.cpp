#include "manifest.hpp"

#include <openssl/evp.h>

#include <atomic>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <regex>
#include <set>
#include <sstream>
#include <thread>

#include "simpkit/anodyne.hpp"
#include "simpkit/constructions.hpp"
#include "simpkit/descent.hpp"
#include "simpkit/fixtures.hpp"
#include "simpkit/lifting.hpp"
#include "simpkit/loop.hpp"
#include "simpkit/sset_json.hpp"
#include "simpkit/suites.hpp"

namespace sk::cli {

namespace {

const char* kFormat = "simpkit-report-1";

struct OpInfo {
  std::string name;
  std::string kind;  // object kind required under args.object, or empty
};

const std::vector<OpInfo>& ops() {
  static const std::vector<OpInfo> all = {
      {"identities", "sset"}, {"kan", "sset"},         {"quasi-category", "sset"}, {"fibration", "sset"},
      {"loop", "sset"},       {"lambda", "category"},  {"dold-kan", "complex"},    {"tau1", "dg"},
      {"descent", "descent"}, {"witness", ""},         {"suite", ""}};
  return all;
}

const OpInfo& op_info(const std::string& op) {
  for (auto& o : ops())
    if (o.name == op) return o;
  throw InputError("unknown operation '" + op + "'");
}

json read_json(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw InputError(file.string() + ": cannot open");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(file.string() + ": malformed JSON: " + e.what());
  }
}

template <class F>
auto rethrow_as_input(const std::string& where, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const InputError&) {
    throw;
  } catch (const json::exception& e) {
    throw InputError(where + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(where + ": " + e.what());
  }
}

void check_object(const std::string& kind, const json& j) {
  if (kind == "sset") {
    sset_from_json(j);
  } else if (kind == "category") {
    category_from_json(j);
  } else if (kind == "complex") {
    ChainComplex::from_json(j).check();
  } else if (kind == "dg") {
    std::string why;
    if (!DgCategory::from_json(j).validate(&why)) throw std::invalid_argument("not a dg-category: " + why);
  } else if (kind == "descent") {
    DescentData::from_json(j).validate();
  } else {
    throw InputError("unknown object kind '" + kind + "'");
  }
}

const ObjectRef& need_object(const Task& t, const std::map<std::string, ObjectRef>& objects) {
  const OpInfo& info = op_info(t.op);
  if (!t.args.contains("object")) throw InputError("task '" + t.name + "': missing args.object");
  std::string name = t.args["object"].get<std::string>();
  auto it = objects.find(name);
  if (it == objects.end()) throw InputError("task '" + t.name + "': unresolved object '" + name + "'");
  if (it->second.kind != info.kind)
    throw InputError("task '" + t.name + "': object '" + name + "' is a " + it->second.kind + ", expected " + info.kind);
  return it->second;
}

FibrationClass parse_class(const std::string& s) {
  static const std::map<std::string, FibrationClass> m = {{"inner", FibrationClass::inner},
                                                           {"left", FibrationClass::left},
                                                           {"right", FibrationClass::right},
                                                           {"kan", FibrationClass::kan},
                                                           {"trivial", FibrationClass::trivial}};
  auto it = m.find(s);
  if (it == m.end()) throw InputError("unknown fibration class '" + s + "'");
  return it->second;
}

AnodyneWitness make_witness(const json& a) {
  std::string kind = a.at("kind").get<std::string>();
  if (kind == "prism") return witness_prism(a.at("m").get<int>(), a.at("n").get<int>(), a.at("k").get<int>());
  if (kind == "partition")
    return witness_partition(a.at("I").get<std::vector<int>>(), a.at("J").get<std::vector<int>>(), a.at("m").get<int>());
  if (kind == "facets") return witness_facets(a.at("facets").get<std::vector<int>>(), a.at("n").get<int>());
  if (kind == "twisted") return witness_inner_twisted(a.at("n").get<int>(), a.at("k").get<int>());
  throw InputError("unknown witness kind '" + kind + "'");
}

Report dold_kan_report(const ChainComplex& a, int bound) {
  Report r = Report::make("Dold-Kan round trips on the complex", bound, true);
  SimplicialAbelianGroup g = dk(a, bound), gk = dk_via_koszul(a, bound);
  DerivedComplex ng = normalized(g);
  ChainHom e = dk_counit(a, ng);
  bool counit = is_chain_map(ng.complex, a, e);
  for (int k = 0; k <= bound && counit; ++k) counit = is_unimodular(e.at(ng.complex, a, -k));
  bool unit = is_simplicial_iso(g, dk(ng.complex, bound), dk_unit(g, ng));
  bool koszul = is_simplicial_iso(gk, g, dk_comparison(a, bound));
  std::vector<int> ranks;
  for (int n = 0; n <= bound; ++n) ranks.push_back(g.rank(n));
  r.details = {{"dk_ranks", ranks}, {"counit_iso", counit}, {"unit_iso", unit}, {"koszul_agrees", koszul}};
  r.verdict = counit && unit && koszul ? "holds" : "fails";
  return r;
}

Report run_unchecked(const Task& t, const std::map<std::string, ObjectRef>& objects) {
  const int d = t.bound;
  const std::string& op = t.op;
  if (op == "suite") return run_suite(t.args.at("name").get<std::string>());
  if (op == "witness") {
    AnodyneWitness w = make_witness(t.args);
    std::string why;
    Report r = Report::make("witness replays to its end complex", d, w.validate(&why));
    r.witness = w.to_json();
    if (!r.holds()) r.counterexample = {{"reason", why}};
    return r;
  }
  const ObjectRef& obj = need_object(t, objects);
  if (op == "identities") {
    long long bad = check_identities(*sset_from_json(obj.content), d);
    Report r = Report::make("simplicial identities hold up to the bound", d, bad == 0);
    r.details = {{"violations", bad}};
    return r;
  }
  if (op == "kan") return is_kan(sset_from_json(obj.content), d);
  if (op == "quasi-category") return is_quasi_category(sset_from_json(obj.content), d);
  if (op == "fibration")
    return classify_fibration(to_point(sset_from_json(obj.content)), parse_class(t.args.at("class").get<std::string>()), d);
  if (op == "loop") {
    SSetPtr x = sset_from_json(obj.content);
    int v = x->gens_of_dim(0).empty() ? -1 : x->gens_of_dim(0)[0];
    if (t.args.contains("vertex")) v = x->find(t.args["vertex"].get<std::string>());
    if (v < 0 || x->gen(v).dim != 0) throw InputError("task '" + t.name + "': no such vertex");
    int max_m = t.args.value("max_m", 2);
    LoopGroup g = loop_group(to_point(x), vertex_section(x, v), max_m, d);
    return verify_loop_theorem(g, d, max_m);
  }
  if (op == "lambda") {
    FiniteCategory c = category_from_json(obj.content);
    return lambda_check(twisted_arrow(c, d), d);
  }
  if (op == "dold-kan") return dold_kan_report(ChainComplex::from_json(obj.content), d);
  if (op == "tau1") return tau1_check(DgCategory::from_json(obj.content), t.args.value("lo", -1), t.args.value("hi", 1));
  if (op == "descent") return descent_check(DescentData::from_json(obj.content), d);
  throw InputError("unknown operation '" + op + "'");
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr))
    throw std::runtime_error("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + p.string());
}

}  // namespace

ObjectRef load_object(const std::string& kind, const fs::path& file) {
  ObjectRef o{kind, file, read_json(file)};
  rethrow_as_input(file.string(), [&] {
    check_object(kind, o.content);
    return 0;
  });
  return o;
}

json describe_object(const ObjectRef& obj, int bound) {
  json j = {{"kind", obj.kind}};
  if (obj.kind == "sset") {
    SSetPtr x = sset_from_json(obj.content);
    j["generators"] = generator_counts(*x);
    std::vector<long long> sizes;
    for (int n = 0; n <= bound; ++n) sizes.push_back(x->level_size(n));
    j["level_sizes"] = sizes;
  } else if (obj.kind == "category") {
    FiniteCategory c = category_from_json(obj.content);
    j["objects"] = c.num_objects();
    j["arrows"] = c.num_arrows();
  } else if (obj.kind == "complex") {
    ChainComplex c = ChainComplex::from_json(obj.content);
    std::vector<int> ranks;
    for (int n = c.lo(); n <= c.hi(); ++n) ranks.push_back(c.rank(n));
    j["degrees"] = {c.lo(), c.hi()};
    j["ranks"] = ranks;
  } else if (obj.kind == "dg") {
    j["objects"] = DgCategory::from_json(obj.content).size();
  } else if (obj.kind == "descent") {
    DescentData d = DescentData::from_json(obj.content);
    std::vector<int> sizes;
    for (int m = -1; m <= 2; ++m) sizes.push_back(d.at(m).num_arrows());
    j["arrows_per_level"] = sizes;
  }
  return j;
}

std::vector<std::string> builtin_names() {
  std::vector<std::string> out = {"delta1", "delta2", "horn2,1", "two-points", "BZ2", "BZ3", "BS3"};
  for (auto& c : twisted_fixture_categories()) out.push_back("category:" + c.name);
  for (auto& c : dk_fixture_complexes()) out.push_back("complex:" + c.name);
  for (auto& c : dg_fixture_categories()) out.push_back("dg:" + c.name);
  for (auto s : {"descent:torsor-Z2", "descent:control", "descent:identity-S3"}) out.push_back(s);
  return out;
}

json builtin_object(const std::string& name, std::string* kind) {
  *kind = "sset";
  if (name == "delta1") return sset_to_json(*standard_simplex(1));
  if (name == "delta2") return sset_to_json(*standard_simplex(2));
  if (name == "horn2,1") return sset_to_json(*horn(2, 1));
  if (name == "two-points") return sset_to_json(*disjoint_union({point(), point()}));
  for (auto& f : loop_fixtures(4))
    if (f.name == name) return sset_to_json(*f.space.set);
  *kind = "category";
  for (auto& c : twisted_fixture_categories())
    if ("category:" + c.name == name) return category_to_json(c.category);
  *kind = "complex";
  for (auto& c : dk_fixture_complexes())
    if ("complex:" + c.name == name) return c.complex.to_json();
  *kind = "dg";
  for (auto& c : dg_fixture_categories())
    if ("dg:" + c.name == name) return c.category.to_json();
  *kind = "descent";
  if (name == "descent:torsor-Z2") return descent_data({0, 0}, 1, torsor_presheaf(FiniteGroup::cyclic(2))).to_json();
  if (name == "descent:identity-S3") return descent_data({0}, 1, torsor_presheaf(FiniteGroup::symmetric3())).to_json();
  if (name == "descent:control") {
    DescentData d = descent_data({0, 0}, 1, constant_presheaf(2));
    d.coface[0][0] = Functor{{0, 0}, {0, 0}};
    return d.to_json();
  }
  throw InputError("unknown fixture '" + name + "'");
}

std::vector<std::string> operation_names() {
  std::vector<std::string> out;
  for (auto& o : ops()) out.push_back(o.name);
  return out;
}

Manifest load_manifest(const fs::path& path) {
  json j = read_json(path);
  fs::path base = path.parent_path();
  Manifest m;
  return rethrow_as_input(path.string(), [&] {
    m.name = j.value("name", path.stem().string());
    static const std::regex safe("[A-Za-z0-9._-]+");
    json objects = j.value("objects", json::object());
    for (auto it = objects.begin(); it != objects.end(); ++it) {
      const std::string& name = it.key();
      const json& ref = it.value();
      if (!ref.contains("kind") || !ref.contains("file")) throw InputError("object '" + name + "' needs kind and file");
      m.objects[name] = load_object(ref["kind"].get<std::string>(), base / ref["file"].get<std::string>());
    }
    std::set<std::string> seen;
    for (auto& tj : j.at("tasks")) {
      Task t;
      t.name = tj.at("name").get<std::string>();
      t.op = tj.at("op").get<std::string>();
      t.args = tj.value("args", json::object());
      t.bound = tj.value("bound", 1);
      t.timeout_ms = tj.value("timeout_ms", 0L);
      if (!std::regex_match(t.name, safe)) throw InputError("task name '" + t.name + "' is not a plain file name");
      if (!seen.insert(t.name).second) throw InputError("duplicate task '" + t.name + "'");
      if (t.bound <= 0) throw InputError("task '" + t.name + "': bound must be positive");
      if (!op_info(t.op).kind.empty()) need_object(t, m.objects);
      if (t.op == "suite") {
        std::string s = t.args.at("name").get<std::string>();
        bool known = false;
        for (auto& e : acceptance_suites()) known = known || e.name == s;
        if (!known) throw InputError("task '" + t.name + "': unknown suite '" + s + "'");
      }
      m.tasks.push_back(std::move(t));
    }
    m.output = base / j.value("output", "out/" + m.name);
    return m;
  });
}

Report run_task(const Task& t, const std::map<std::string, ObjectRef>& objects) {
  DeadlineScope scope{std::chrono::milliseconds(t.timeout_ms)};
  try {
    return rethrow_as_input("task '" + t.name + "'", [&] { return run_unchecked(t, objects); });
  } catch (const Timeout&) {
    Report r;
    r.claim = t.op;
    r.bound = t.bound;
    r.verdict = "inconclusive";
    r.details = {{"reason", "time limit exceeded"}, {"timeout_ms", t.timeout_ms}};
    return r;
  }
}

Cache::Cache(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

std::string Cache::key(const Task& t, const std::map<std::string, ObjectRef>& objects) const {
  json j = {{"format", kFormat}, {"op", t.op}, {"args", t.args}, {"bound", t.bound}};
  if (t.args.contains("object") && t.args["object"].is_string()) {
    auto it = objects.find(t.args["object"].get<std::string>());
    if (it != objects.end()) j["object"] = {{"kind", it->second.kind}, {"content", it->second.content}};
  }
  return sha256_hex(j.dump());
}

std::optional<Report> Cache::get(const std::string& key) const {
  std::shared_lock lock(mu_);
  fs::path p = dir_ / (key + ".json");
  std::ifstream in(p);
  if (!in) return std::nullopt;
  try {
    return Report::from_json(json::parse(in));
  } catch (const std::exception&) {
    return std::nullopt;  // a damaged entry is recomputed
  }
}

void Cache::put(const std::string& key, const Report& r) const {
  std::unique_lock lock(mu_);
  fs::path tmp = dir_ / (key + ".json.tmp");
  write_file(tmp, r.to_json().dump(2) + "\n");
  fs::rename(tmp, dir_ / (key + ".json"));
}

std::vector<TaskResult> run_tasks(const Manifest& m, const RunOptions& opt) {
  std::vector<TaskResult> results(m.tasks.size());
  std::optional<Cache> cache;
  if (opt.cache_dir) cache.emplace(*opt.cache_dir);
  std::atomic<size_t> next{0};
  std::mutex log_mu;
  std::exception_ptr error;
  auto worker = [&] {
    for (size_t i = next++; i < m.tasks.size(); i = next++) {
      TaskResult& res = results[i];
      res.task = m.tasks[i];
      if (res.task.timeout_ms == 0) res.task.timeout_ms = opt.timeout_ms;
      try {
        std::string key;
        if (cache) {
          key = cache->key(res.task, m.objects);
          if (auto hit = cache->get(key)) {
            res.report = *hit;
            res.cached = true;
          }
        }
        if (!res.cached) {
          res.report = run_task(res.task, m.objects);
          // time limits depend on the machine, so inconclusive runs are not kept
          if (cache && res.report.verdict != "inconclusive") cache->put(key, res.report);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(log_mu);
        if (!error) error = std::current_exception();
        next = m.tasks.size();
        return;
      }
      if (!opt.quiet) {
        std::lock_guard<std::mutex> lock(log_mu);
        std::cerr << res.task.name << ": " << res.report.verdict << (res.cached ? " (cached)" : "") << "\n";
      }
    }
  };
  int jobs = std::max(1, std::min<int>(opt.jobs, static_cast<int>(m.tasks.size())));
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  return results;
}

bool all_hold(const std::vector<TaskResult>& results) {
  for (auto& r : results)
    if (!r.report.holds()) return false;
  return true;
}

void write_bundle(const Manifest& m, const std::vector<TaskResult>& results, const fs::path& dir) {
  fs::path reports = dir / "reports";
  fs::create_directories(reports);
  for (auto& e : fs::directory_iterator(reports))
    if (e.path().extension() == ".json") fs::remove(e.path());
  json tasks = json::array();
  std::map<std::string, int> summary = {{"holds", 0}, {"fails", 0}, {"inconclusive", 0}};
  for (auto& r : results) {
    std::string file = "reports/" + r.task.name + ".json";
    write_file(dir / file, r.report.to_json().dump(2) + "\n");
    tasks.push_back({{"name", r.task.name}, {"op", r.task.op}, {"bound", r.task.bound},
                     {"verdict", r.report.verdict}, {"report", file}});
    ++summary[r.report.verdict];
  }
  json bundle = {{"format", kFormat}, {"manifest", m.name}, {"tasks", tasks}, {"summary", summary},
                 {"all_hold", all_hold(results)}};
  write_file(dir / "bundle.json", bundle.dump(2) + "\n");
}

}  // namespace sk::cli
