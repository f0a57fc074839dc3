#include "experiments/summary.hpp"

#include <cmath>
#include <sstream>

#include "logitmeta/csv.hpp"

namespace experiments {

bool Summary::record(Assertion a) {
  assertions_.push_back(std::move(a));
  return assertions_.back().passed;
}

bool Summary::at_most(const std::string& claim, const std::string& detail, double measured, double bound) {
  return record({claim, detail, "<=", measured, bound, 0.0, measured <= bound});
}

bool Summary::at_least(const std::string& claim, const std::string& detail, double measured, double bound) {
  return record({claim, detail, ">=", measured, bound, 0.0, measured >= bound});
}

bool Summary::close(const std::string& claim, const std::string& detail, double measured, double expected,
                    double tolerance) {
  return record({claim, detail, "==~", measured, expected, tolerance, std::abs(measured - expected) <= tolerance});
}

bool Summary::holds(const std::string& claim, const std::string& detail, bool condition) {
  return record({claim, detail, "true", condition ? 1.0 : 0.0, 1.0, 0.0, condition});
}

bool Summary::passed() const {
  for (const auto& a : assertions_) {
    if (!a.passed) return false;
  }
  return true;
}

bool Summary::passed(const std::string& prefix) const {
  for (const auto& a : assertions_) {
    if (a.claim.rfind(prefix, 0) == 0 && !a.passed) return false;
  }
  return true;
}

nlohmann::json Summary::to_json() const {
  nlohmann::json j;
  j["name"] = name_;
  j["parameters"] = parameters_;
  j["measured"] = measured_;
  auto& list = j["assertions"] = nlohmann::json::array();
  for (const auto& a : assertions_) {
    nlohmann::json item{{"claim", a.claim},       {"detail", a.detail},       {"relation", a.relation},
                        {"measured", a.measured}, {"reference", a.reference}, {"passed", a.passed}};
    if (a.relation == "==~") item["tolerance"] = a.tolerance;
    list.push_back(std::move(item));
  }
  j["warnings"] = warnings_;
  j["files"] = files_;
  j["passed"] = passed();
  return j;
}

std::string Summary::report() const {
  std::ostringstream out;
  for (const auto& w : warnings_) out << "warning: " << w << '\n';
  for (const auto& a : assertions_) {
    out << (a.passed ? "PASS " : "FAIL ") << a.claim << " [" << a.detail << "] measured "
        << logitmeta::format_number(a.measured);
    if (a.relation == "==~") {
      out << " expected " << logitmeta::format_number(a.reference) << " tol " << logitmeta::format_number(a.tolerance);
    } else if (a.relation != "true") {
      out << ' ' << a.relation << ' ' << logitmeta::format_number(a.reference);
    }
    out << '\n';
  }
  std::size_t failed = 0;
  for (const auto& a : assertions_) failed += a.passed ? 0 : 1;
  out << name_ << ": " << assertions_.size() - failed << '/' << assertions_.size() << " assertions passed\n";
  return out.str();
}

}  // namespace experiments
