// SPDX-License-Identifier: Apache-2.0
#include "report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace primpairs {

using json = nlohmann::ordered_json;

namespace {

void put(ReportRecord& rec, std::string key, json value) { rec.cells.emplace_back(std::move(key), std::move(value)); }

void put_id(ReportRecord& rec, const PrimePowerId& id, unsigned omega) {
  rec.q = id.q;
  put(rec, "q", id.q);
  put(rec, "p", id.p);
  put(rec, "r", id.r);
  put(rec, "omega", omega);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string elapsed_text(double ms) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", ms);
  return buf;
}

json elapsed_value(double ms) { return json::parse(elapsed_text(ms)); }

const json* find_cell(const ReportRecord& rec, const std::string& key) {
  for (const auto& [k, v] : rec.cells)
    if (k == key) return &v;
  return nullptr;
}

}  // namespace

std::string cell_text(const json& value) {
  if (value.is_null()) return "";
  if (value.is_string()) return value.get<std::string>();
  if (value.is_array()) {
    std::string out;
    for (size_t i = 0; i < value.size(); ++i) {
      if (i) out += ';';
      out += cell_text(value[i]);
    }
    return out;
  }
  return value.dump();
}

void RunReport::add(ReportRecord record) {
  auto pos = std::upper_bound(records_.begin(), records_.end(), record.q,
                              [](u64 q, const ReportRecord& r) { return q < r.q; });
  records_.insert(pos, std::move(record));
}

void RunReport::set_total(std::string key, json value) { totals_[std::move(key)] = std::move(value); }

std::vector<std::string> RunReport::columns() const {
  std::vector<std::string> cols;
  for (const auto& rec : records_)
    for (const auto& [k, v] : rec.cells)
      if (std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
  if (timings_) cols.push_back("elapsed_ms");
  return cols;
}

std::string RunReport::to_json() const {
  json doc;
  doc["schema"] = kReportSchema;
  doc["kind"] = kind_;
  doc["command"] = command_;
  const auto cols = columns();
  json records = json::array();
  for (const auto& rec : records_) {
    json obj = json::object();
    for (const auto& c : cols) {
      if (c == "elapsed_ms" && timings_) {
        obj[c] = elapsed_value(rec.elapsed_ms);
        continue;
      }
      const json* v = find_cell(rec, c);
      obj[c] = v ? *v : json();
    }
    records.push_back(std::move(obj));
  }
  doc["records"] = std::move(records);
  doc["totals"] = totals_;
  return doc.dump(2) + "\n";
}

std::string RunReport::to_csv() const {
  std::ostringstream out;
  out << "# schema=" << kReportSchema << "\n";
  out << "# kind=" << kind_ << "\n";
  out << "# command=" << command_ << "\n";
  const auto cols = columns();
  for (size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << csv_escape(cols[i]);
  out << "\n";
  for (const auto& rec : records_) {
    for (size_t i = 0; i < cols.size(); ++i) {
      if (i) out << ",";
      if (cols[i] == "elapsed_ms" && timings_) {
        out << cell_text(elapsed_value(rec.elapsed_ms));
        continue;
      }
      const json* v = find_cell(rec, cols[i]);
      out << csv_escape(v ? cell_text(*v) : std::string());
    }
    out << "\n";
  }
  for (const auto& [k, v] : totals_.items()) out << "# total." << k << "=" << cell_text(v) << "\n";
  return out.str();
}

ReportRecord screen_record(const ScreeningVerdict& verdict) {
  ReportRecord rec;
  put_id(rec, verdict.q, verdict.omega);
  rec.flagged = verdict.status == ScreenStatus::NeedsExplicitCheck;
  put(rec, "status", to_string(verdict.status));
  const BoundReport* shown = nullptr;
  if (verdict.witness)
    shown = &*verdict.witness;
  else if (!verdict.all_reports.empty())
    shown = &verdict.all_reports.back();
  put(rec, "theorem", shown ? json(to_string(shown->theorem)) : json());
  json s, k, sieving = json::array(), eps;
  if (shown && shown->config) {
    s = shown->config->s();
    k = shown->config->k;
    for (u64 p : shown->config->sieving_primes) sieving.push_back(p);
  }
  if (shown && shown->epsilon) eps = *shown->epsilon;
  put(rec, "s", s);
  put(rec, "k", k);
  put(rec, "sieving_primes", sieving);
  put(rec, "epsilon", eps);
  put(rec, "holds", shown ? json(shown->holds) : json());
  put(rec, "bound", shown ? json(shown->lower_bound.exact_string()) : json());
  put(rec, "bound_decimal", shown ? json(shown->lower_bound.decimal_string(12)) : json());
  put(rec, "reports", verdict.all_reports.size());
  return rec;
}

ReportRecord verify_record(const MembershipResult& result, unsigned omega) {
  ReportRecord rec;
  put_id(rec, result.q, omega);
  rec.flagged = !result.member;
  put(rec, "set", to_string(result.set));
  put(rec, "algorithm", to_string(result.algorithm));
  put(rec, "member", result.member);
  put(rec, "failure_count", result.failures.size());
  json failures = json::array();
  for (const auto& f : result.failures) failures.push_back(std::to_string(f.u.code) + ":" + std::to_string(f.v.code));
  put(rec, "failures", std::move(failures));
  put(rec, "logs_computed", result.stats.logs_computed);
  put(rec, "primitives_consumed", result.stats.primitives_consumed);
  put(rec, "ie_terms_peak", result.stats.ie_terms_peak);
  put(rec, "bitmap_fallbacks", result.stats.bitmap_fallbacks);
  put(rec, "escalations", result.stats.escalations);
  return rec;
}

ReportRecord survey_record(const SurveyRow& row) {
  ReportRecord rec;
  rec.q = row.q_min;
  rec.flagged = !row.failing_list.empty();
  put(rec, "omega", row.omega);
  put(rec, "chosen_s", row.chosen_s);
  put(rec, "q_min", row.q_min);
  put(rec, "q_max", row.q_max);
  put(rec, "candidates", row.candidates);
  put(rec, "failing_primes", row.failing_primes.count);
  put(rec, "least_failing_prime", row.failing_primes.least);
  put(rec, "greatest_failing_prime", row.failing_primes.greatest);
  put(rec, "failing_prime_powers", row.failing_prime_powers.count);
  put(rec, "least_failing_prime_power", row.failing_prime_powers.least);
  put(rec, "greatest_failing_prime_power", row.failing_prime_powers.greatest);
  json list = json::array();
  for (u64 q : row.failing_list) list.push_back(q);
  put(rec, "failing_list", std::move(list));
  return rec;
}

ReportRecord corollary6_record(const Corollary6Report& report) {
  static const char* names[] = {"i", "ii", "iii", "iv"};
  ReportRecord rec;
  rec.q = report.q.q;
  put(rec, "q", report.q.q);
  for (size_t c = 0; c < 4; ++c) {
    const auto& cs = report.cases[c];
    if (!cs.exists) rec.flagged = true;
    put(rec, std::string("case_") + names[c], cs.exists);
    std::string w;
    if (cs.a) w = std::to_string(cs.a->code);
    if (cs.b) w += ";" + std::to_string(cs.b->code);
    put(rec, std::string("witness_") + names[c], w);
  }
  return rec;
}

void add_screen_totals(RunReport& report) {
  u64 t = 0, s = 0, nc = 0, primes = 0, powers = 0, high = 0;
  for (size_t i = 0; i < report.size(); ++i) {
    const auto& rec = report.record(i);
    const std::string status = cell_text(*find_cell(rec, "status"));
    if (status == "ProvedInT") ++t;
    if (status == "ProvedInS") ++s;
    if (!rec.flagged) continue;
    ++nc;
    (find_cell(rec, "r")->get<unsigned>() == 1 ? primes : powers) += 1;
    if (find_cell(rec, "omega")->get<unsigned>() >= 7) ++high;
  }
  report.set_total("records", report.size());
  report.set_total("proved_in_T", t);
  report.set_total("proved_in_S", s);
  report.set_total("needs_explicit_check", nc);
  report.set_total("needs_check_primes", primes);
  report.set_total("needs_check_prime_powers", powers);
  report.set_total("needs_check_omega_ge_7", high);
}

void add_verify_totals(RunReport& report) {
  json non_members = json::array();
  for (size_t i = 0; i < report.size(); ++i)
    if (report.record(i).flagged) non_members.push_back(report.record(i).q);
  report.set_total("records", report.size());
  report.set_total("members", report.size() - non_members.size());
  report.set_total("non_members", non_members.size());
  report.set_total("non_member_q", non_members);
}

}  // namespace primpairs
