#include "simpkit/report.hpp"

namespace sk {

namespace {
thread_local bool active = false;
thread_local std::chrono::steady_clock::time_point deadline;
thread_local unsigned ticks = 0;
}  // namespace

nlohmann::json Report::to_json() const {
  nlohmann::json j = {{"claim", claim}, {"bound", bound}, {"verdict", verdict}};
  if (!counterexample.is_null()) j["counterexample"] = counterexample;
  if (!witness.is_null()) j["witness"] = witness;
  if (!details.is_null()) j["details"] = details;
  return j;
}

Report Report::from_json(const nlohmann::json& j) {
  Report r;
  r.claim = j.at("claim").get<std::string>();
  r.bound = j.at("bound").get<int>();
  r.verdict = j.at("verdict").get<std::string>();
  if (r.verdict != "holds" && r.verdict != "fails" && r.verdict != "inconclusive")
    throw std::invalid_argument("report: unknown verdict '" + r.verdict + "'");
  r.counterexample = j.value("counterexample", nlohmann::json());
  r.witness = j.value("witness", nlohmann::json());
  r.details = j.value("details", nlohmann::json());
  return r;
}

Report Report::make(std::string claim, int bound, bool ok) {
  Report r;
  r.claim = std::move(claim);
  r.bound = bound;
  r.verdict = ok ? "holds" : "fails";
  return r;
}

DeadlineScope::DeadlineScope(std::chrono::milliseconds budget) : saved_(deadline), had_(active) {
  if (budget.count() > 0) {
    auto d = std::chrono::steady_clock::now() + budget;
    deadline = active ? std::min(deadline, d) : d;
    active = true;
  }
}

DeadlineScope::~DeadlineScope() {
  deadline = saved_;
  active = had_;
}

void poll_deadline() {
  if (!active || (++ticks & 1023u)) return;
  if (std::chrono::steady_clock::now() > deadline) throw Timeout();
}

}  // namespace sk
