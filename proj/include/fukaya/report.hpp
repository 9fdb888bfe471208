#pragma once

#include <map>
#include <string>
#include <vector>

namespace fukaya {

enum class CaseStatus { Pass, Fail, Error };

std::string status_name(CaseStatus s);

struct ReportCase {
  std::string id;
  CaseStatus status = CaseStatus::Pass;
  std::string lhs;
  std::string rhs;
  double max_dev = 0.0;
  std::string detail;
};

// Result of one verification suite: per-case verdicts plus an echo of the
// configuration that produced them. Cases are kept in canonical id order so
// reports are byte-identical for a fixed seed and config.
struct Report {
  std::string suite;
  std::vector<ReportCase> cases;
  std::map<std::string, std::string> config;

  void add(ReportCase c) { cases.push_back(std::move(c)); }
  void add_pass(const std::string& id, double dev = 0.0, const std::string& lhs = "",
                const std::string& rhs = "");
  void add_check(const std::string& id, bool ok, double dev, const std::string& lhs = "",
                 const std::string& rhs = "", const std::string& detail = "");

  bool all_passed() const;
  double max_dev() const;
  std::size_t failures() const;
  void sort_cases();

  std::string summary_line() const;
};

}  // namespace fukaya
