// SPDX-License-Identifier: Apache-2.0
//
// Run reports: one flat record per q with a fixed column set per report
// kind, rendered as JSON or CSV from the same cells.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "screening.hpp"
#include "verify.hpp"

namespace primpairs {

inline constexpr const char* kReportSchema = "primpairs.report/1";

struct ReportRecord {
  u64 q = 0;
  bool flagged = false;  // needs an explicit check, or not a member
  std::vector<std::pair<std::string, nlohmann::ordered_json>> cells;
  double elapsed_ms = 0;
};

class RunReport {
 public:
  explicit RunReport(std::string kind) : kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }
  void set_command(std::string command) { command_ = std::move(command); }
  void set_timings(bool on) noexcept { timings_ = on; }

  // Records are kept sorted by q (stable for equal q).
  void add(ReportRecord record);
  size_t size() const noexcept { return records_.size(); }
  const ReportRecord& record(size_t i) const { return records_.at(i); }

  void set_total(std::string key, nlohmann::ordered_json value);
  const nlohmann::ordered_json& totals() const noexcept { return totals_; }

  std::string to_json() const;
  std::string to_csv() const;

 private:
  std::vector<std::string> columns() const;

  std::string kind_;
  std::string command_;
  bool timings_ = true;
  std::vector<ReportRecord> records_;
  nlohmann::ordered_json totals_ = nlohmann::ordered_json::object();
};

// CSV/JSON cell text of a value: strings verbatim, arrays joined by ';'.
std::string cell_text(const nlohmann::ordered_json& value);

ReportRecord screen_record(const ScreeningVerdict& verdict);
ReportRecord verify_record(const MembershipResult& result, unsigned omega);
ReportRecord survey_record(const SurveyRow& row);
ReportRecord corollary6_record(const Corollary6Report& report);

void add_screen_totals(RunReport& report);
void add_verify_totals(RunReport& report);

}  // namespace primpairs
