// Verdict reports and cooperative time limits for bounded searches.
#pragma once

#include <chrono>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace sk {

struct Report {
  std::string claim;
  int bound = 0;
  std::string verdict = "holds";  // holds | fails | inconclusive
  nlohmann::json counterexample;  // null when absent
  nlohmann::json witness;
  nlohmann::json details;

  bool holds() const { return verdict == "holds"; }
  nlohmann::json to_json() const;
  static Report from_json(const nlohmann::json& j);
  static Report make(std::string claim, int bound, bool ok);
};

struct Timeout : std::runtime_error {
  Timeout() : std::runtime_error("time limit exceeded") {}
};

// Per-thread deadline polled by the search loops. A zero budget disables it.
class DeadlineScope {
 public:
  explicit DeadlineScope(std::chrono::milliseconds budget);
  ~DeadlineScope();
  DeadlineScope(const DeadlineScope&) = delete;
  DeadlineScope& operator=(const DeadlineScope&) = delete;

 private:
  std::chrono::steady_clock::time_point saved_;
  bool had_;
};

// Throws Timeout once the active deadline has passed.
void poll_deadline();

}  // namespace sk
