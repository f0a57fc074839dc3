#pragma once

#include <chrono>
#include <cstdio>
#include <string>

namespace acceptance {

// Collects the checks of one criterion. Each check prints an indented detail
// line; finish() prints the single PASS/FAIL line for the criterion.
class Report {
 public:
  explicit Report(std::string title) : title_(std::move(title)), start_(std::chrono::steady_clock::now()) {}

  bool check(const std::string& id, const std::string& detail, bool ok) {
    std::printf("  [%s] %s %s\n", ok ? "ok" : "violated", id.c_str(), detail.c_str());
    ++total_;
    if (!ok) ++failed_;
    return ok;
  }

  bool at_most(const std::string& id, const std::string& what, double measured, double bound) {
    return check(id, what + ": " + num(measured) + " <= " + num(bound), measured <= bound);
  }

  bool at_least(const std::string& id, const std::string& what, double measured, double bound) {
    return check(id, what + ": " + num(measured) + " >= " + num(bound), measured >= bound);
  }

  bool near(const std::string& id, const std::string& what, double measured, double expected, double tol) {
    const double gap = measured - expected;
    return check(id, what + ": " + num(measured) + " vs " + num(expected) + " (tol " + num(tol) + ")",
                 gap <= tol && -gap <= tol);
  }

  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

  int finish() const {
    std::printf("%s %s (%d/%d checks, %.1f s)\n", failed_ == 0 ? "PASS" : "FAIL", title_.c_str(), total_ - failed_,
                total_, seconds());
    std::fflush(stdout);
    return failed_ == 0 ? 0 : 1;
  }

  static std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
  }

 private:
  std::string title_;
  std::chrono::steady_clock::time_point start_;
  int total_ = 0;
  int failed_ = 0;
};

int criterion_1();
int criterion_2();
int criterion_3();
int criterion_4();
int criterion_5();
int criterion_6();
int criterion_7();
int criterion_8();
int criterion_9();
int criterion_10();

}  // namespace acceptance
