#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace experiments {

struct Assertion {
  std::string claim;   // stable id of the claim being checked
  std::string detail;  // instance description
  std::string relation;  // "<=", ">=", "==~" (within tolerance), "true"
  double measured = 0.0;
  double reference = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

// Result of one preset or generic run: parameters, measured values, the
// assertions checked and the files written.
class Summary {
 public:
  explicit Summary(std::string name) : name_(std::move(name)) {}

  const std::string& name() const { return name_; }
  nlohmann::json& parameters() { return parameters_; }
  nlohmann::json& measured() { return measured_; }
  const nlohmann::json& measured() const { return measured_; }

  bool at_most(const std::string& claim, const std::string& detail, double measured, double bound);
  bool at_least(const std::string& claim, const std::string& detail, double measured, double bound);
  bool close(const std::string& claim, const std::string& detail, double measured, double expected, double tolerance);
  bool holds(const std::string& claim, const std::string& detail, bool condition);

  void warn(const std::string& message) { warnings_.push_back(message); }
  void add_file(const std::filesystem::path& path) { files_.push_back(path.string()); }

  const std::vector<Assertion>& assertions() const { return assertions_; }
  const std::vector<std::string>& warnings() const { return warnings_; }
  bool passed() const;
  // Assertions whose claim id starts with `prefix`.
  bool passed(const std::string& prefix) const;

  nlohmann::json to_json() const;
  std::string report() const;

 private:
  bool record(Assertion a);

  std::string name_;
  nlohmann::json parameters_ = nlohmann::json::object();
  nlohmann::json measured_ = nlohmann::json::object();
  std::vector<Assertion> assertions_;
  std::vector<std::string> warnings_;
  std::vector<std::string> files_;
};

}  // namespace experiments
