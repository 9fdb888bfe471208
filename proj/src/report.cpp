#include "fukaya/report.hpp"

#include <algorithm>
#include <cstdio>

namespace fukaya {

std::string status_name(CaseStatus s) {
  switch (s) {
    case CaseStatus::Pass:
      return "pass";
    case CaseStatus::Fail:
      return "fail";
    case CaseStatus::Error:
      return "error";
  }
  return "unknown";
}

void Report::add_pass(const std::string& id, double dev, const std::string& lhs,
                      const std::string& rhs) {
  add({id, CaseStatus::Pass, lhs, rhs, dev, ""});
}

void Report::add_check(const std::string& id, bool ok, double dev, const std::string& lhs,
                       const std::string& rhs, const std::string& detail) {
  add({id, ok ? CaseStatus::Pass : CaseStatus::Fail, lhs, rhs, dev, detail});
}

bool Report::all_passed() const {
  return std::all_of(cases.begin(), cases.end(),
                     [](const ReportCase& c) { return c.status == CaseStatus::Pass; });
}

double Report::max_dev() const {
  double dev = 0.0;
  for (const auto& c : cases) dev = std::max(dev, c.max_dev);
  return dev;
}

std::size_t Report::failures() const {
  std::size_t n = 0;
  for (const auto& c : cases) {
    if (c.status != CaseStatus::Pass) ++n;
  }
  return n;
}

void Report::sort_cases() {
  std::stable_sort(cases.begin(), cases.end(),
                   [](const ReportCase& a, const ReportCase& b) { return a.id < b.id; });
}

std::string Report::summary_line() const {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%-18s %s  cases=%zu failures=%zu max_dev=%.3g", suite.c_str(),
                all_passed() ? "PASS" : "FAIL", cases.size(), failures(), max_dev());
  return buf;
}

}  // namespace fukaya
