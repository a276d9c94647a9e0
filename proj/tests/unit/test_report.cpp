// SPDX-License-Identifier: Apache-2.0
#include <sstream>

#include "report.hpp"
#include "test_helpers.hpp"

using namespace primpairs;
using json = nlohmann::ordered_json;

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

void check_same_data(const RunReport& rep) {
  const json doc = json::parse(rep.to_json());
  CHECK(doc["schema"] == kReportSchema);
  CHECK(doc["kind"] == rep.kind());
  std::istringstream csv(rep.to_csv());
  std::string line;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  json totals = json::object();
  while (std::getline(csv, line)) {
    if (line.rfind("# total.", 0) == 0) {
      const auto eq = line.find('=');
      totals[line.substr(8, eq - 8)] = line.substr(eq + 1);
      continue;
    }
    if (line.rfind("#", 0) == 0) continue;
    if (header.empty())
      header = split_csv_line(line);
    else
      rows.push_back(split_csv_line(line));
  }
  const json& records = doc["records"];
  REQUIRE(rows.size() == records.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    REQUIRE(rows[i].size() == header.size());
    for (size_t c = 0; c < header.size(); ++c) REQUIRE(cell_text(records[i][header[c]]) == rows[i][c]);
    REQUIRE(records[i].size() == header.size());
  }
  for (const auto& [k, v] : doc["totals"].items()) CHECK(cell_text(v) == totals[k].get<std::string>());
  for (size_t i = 1; i < records.size(); ++i)
    CHECK(records[i - 1]["q"].get<u64>() <= records[i]["q"].get<u64>());
}

RunReport screen_report(bool timings) {
  RunReport rep("screen");
  rep.set_command("primpairs screen --max 400");
  rep.set_timings(timings);
  const auto verdicts = screen_range(2, 400, {}, 3);
  for (auto it = verdicts.rbegin(); it != verdicts.rend(); ++it) rep.add(screen_record(*it));
  add_screen_totals(rep);
  return rep;
}

}  // namespace

TEST_CASE("screen report JSON and CSV carry the same data") {
  const RunReport rep = screen_report(true);
  check_same_data(rep);
  CHECK(rep.record(0).q == 2);
  check_same_data(screen_report(false));
}

TEST_CASE("reports are deterministic without timings") {
  const RunReport a = screen_report(false), b = screen_report(false);
  CHECK(a.to_json() == b.to_json());
  CHECK(a.to_csv() == b.to_csv());
  CHECK(a.to_json().find("elapsed_ms") == std::string::npos);
  CHECK(screen_report(true).to_json().find("elapsed_ms") != std::string::npos);
}

TEST_CASE("verify, survey and corollary reports") {
  RunReport v("verify");
  for (const auto& id : enumerate_prime_powers(2, 60))
    v.add(verify_record(check_T_logs(id.q), QContext::of(id.q).omega()));
  add_verify_totals(v);
  check_same_data(v);
  CHECK(v.totals()["records"] == v.size());
  u64 flagged = 0;
  for (size_t i = 0; i < v.size(); ++i) flagged += v.record(i).flagged;
  CHECK(v.totals()["non_members"] == flagged);
  CHECK(flagged == 16);

  RunReport s("survey");
  s.add(survey_record(survey(2)));
  check_same_data(s);

  RunReport c("corollary6");
  for (u64 q : {7, 13, 61, 121}) c.add(corollary6_record(corollary6_witnesses(q)));
  check_same_data(c);
  for (size_t i = 0; i < c.size(); ++i) CHECK(c.record(i).flagged);
}

TEST_CASE("screen totals") {
  const RunReport rep = screen_report(false);
  const json& t = rep.totals();
  CHECK(t["records"] == rep.size());
  CHECK(t["proved_in_T"].get<u64>() + t["proved_in_S"].get<u64>() + t["needs_explicit_check"].get<u64>() ==
        rep.size());
  CHECK(t["needs_check_primes"].get<u64>() + t["needs_check_prime_powers"].get<u64>() ==
        t["needs_explicit_check"].get<u64>());
}

TEST_CASE("cell text") {
  CHECK(cell_text(json()) == "");
  CHECK(cell_text(json("a,b")) == "a,b");
  CHECK(cell_text(json::array({1, 2, 3})) == "1;2;3");
  CHECK(cell_text(json(7)) == "7");
}
