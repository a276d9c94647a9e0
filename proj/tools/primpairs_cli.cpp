// SPDX-License-Identifier: Apache-2.0
//
// primpairs: screening sweeps, membership verification, survey rows and
// brute-force oracles over the C API.
//
// Exit codes: 0 success, 1 results differ from --expect, 2 invalid input.

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "primpairs/primpairs.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitInvalid = 2;

struct InvalidInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ReportHandle {
  ppr_report* ptr = nullptr;
  ReportHandle() = default;
  ReportHandle(const ReportHandle&) = delete;
  ReportHandle& operator=(const ReportHandle&) = delete;
  ~ReportHandle() { ppr_report_destroy(ptr); }
};

void check(ppr_status st) {
  if (st != PPR_OK) throw InvalidInput(std::string(ppr_status_string(st)) + ": " + ppr_last_error());
}

struct Common {
  std::string format = "json";
  std::string out;
  std::string expect;
  bool no_timings = false;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", c.out, "Write the report to FILE instead of stdout");
  cmd->add_option("--expect", c.expect, "File of q values expected to be flagged");
  cmd->add_flag("--no-timings", c.no_timings, "Omit elapsed-time fields");
  cmd->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::PositiveNumber);
}

std::vector<uint64_t> read_expect(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read expect file " + path);
  std::vector<uint64_t> out;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) {
      for (char& ch : tok)
        if (ch == ',') ch = ' ';
      std::istringstream ts(tok);
      uint64_t v;
      while (ts >> v) out.push_back(v);
      if (!ts.eof()) throw InvalidInput("bad entry in expect file: " + tok);
    }
  }
  return out;
}

int emit(const ReportHandle& rep, const Common& c, const std::string& command) {
  check(ppr_report_set_command(rep.ptr, command.c_str()));
  check(ppr_report_set_timings(rep.ptr, c.no_timings ? 0 : 1));
  char* text = nullptr;
  check(ppr_report_render(rep.ptr, c.format == "csv" ? PPR_FORMAT_CSV : PPR_FORMAT_JSON, &text));
  if (c.out.empty()) {
    std::fwrite(text, 1, std::strlen(text), stdout);
  } else {
    std::ofstream f(c.out, std::ios::binary);
    if (!f) {
      ppr_string_free(text);
      throw InvalidInput("cannot write " + c.out);
    }
    f << text;
  }
  ppr_string_free(text);

  if (c.expect.empty()) return kExitOk;
  const auto expected_list = read_expect(c.expect);
  const std::set<uint64_t> expected(expected_list.begin(), expected_list.end());
  std::set<uint64_t> got;
  for (size_t i = 0; i < ppr_report_size(rep.ptr); ++i) {
    int flagged = 0;
    uint64_t q = 0;
    check(ppr_report_flagged(rep.ptr, i, &flagged));
    check(ppr_report_q(rep.ptr, i, &q));
    if (flagged) got.insert(q);
  }
  if (got == expected) return kExitOk;
  std::vector<uint64_t> missing, extra;
  std::set_difference(expected.begin(), expected.end(), got.begin(), got.end(), std::back_inserter(missing));
  std::set_difference(got.begin(), got.end(), expected.begin(), expected.end(), std::back_inserter(extra));
  std::cerr << "expect mismatch: " << missing.size() << " missing, " << extra.size() << " unexpected\n";
  for (uint64_t q : missing) std::cerr << "  missing " << q << "\n";
  for (uint64_t q : extra) std::cerr << "  unexpected " << q << "\n";
  return kExitMismatch;
}

std::string join_args(int argc, char** argv) {
  std::string s = "primpairs";
  for (int i = 1; i < argc; ++i) {
    s += ' ';
    s += argv[i];
  }
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Screening and verification of (u,v)-primitive elements and pairs over finite fields"};
  app.require_subcommand(1);
  app.set_version_flag("--version", ppr_version());

  // screen
  Common screen_c;
  uint64_t s_min = 2, s_max = 0;
  std::vector<uint64_t> s_qs;
  unsigned s_survey = 0;
  std::string s_set = "T", s_policy = "survey";
  bool s_needs = false, s_exhaustive = false;
  auto* screen_cmd = app.add_subcommand("screen", "Apply the explicit bounds to prime powers");
  auto* s_min_opt = screen_cmd->add_option("--min", s_min, "Smallest q of the range");
  auto* s_max_opt = screen_cmd->add_option("--max", s_max, "Largest q of the range");
  auto* s_q_opt = screen_cmd->add_option("--q", s_qs, "Explicit q values")->delimiter(',');
  auto* s_survey_opt =
      screen_cmd->add_option("--survey,--omega", s_survey, "Survey row for omega(q - 1)")->check(CLI::Range(1, 8));
  screen_cmd->add_option("--set", s_set, "Target set")->check(CLI::IsMember({"T", "S"}));
  screen_cmd->add_option("--policy", s_policy, "Criteria policy")->check(CLI::IsMember({"survey", "all"}));
  screen_cmd->add_flag("--needs-check-only", s_needs, "Keep only q that need an explicit check");
  screen_cmd->add_flag("--exhaustive", s_exhaustive, "Evaluate every criterion");
  add_common(screen_cmd, screen_c);
  s_q_opt->excludes(s_min_opt)->excludes(s_max_opt)->excludes(s_survey_opt);
  s_survey_opt->excludes(s_min_opt)->excludes(s_max_opt);

  // verify
  Common verify_c;
  uint64_t v_min = 2, v_max = 0;
  std::vector<uint64_t> v_qs;
  std::string v_set = "T", v_algo;
  auto* verify_cmd = app.add_subcommand("verify", "Decide membership in T or S by exact computation");
  auto* v_min_opt = verify_cmd->add_option("--min", v_min, "Smallest q of the range");
  auto* v_max_opt = verify_cmd->add_option("--max", v_max, "Largest q of the range");
  auto* v_q_opt = verify_cmd->add_option("--q", v_qs, "Explicit q values")->delimiter(',');
  verify_cmd->add_option("--set", v_set, "Set to verify")->check(CLI::IsMember({"T", "S"}));
  verify_cmd->add_option("--algo", v_algo, "logs|ie for T, brute for S, oracle for either")
      ->check(CLI::IsMember({"logs", "ie", "brute", "oracle", "algo1", "algo2", "algo3"}));
  add_common(verify_cmd, verify_c);
  v_q_opt->excludes(v_min_opt)->excludes(v_max_opt);

  // oracle
  Common oracle_c;
  std::string o_kind;
  uint64_t o_q = 0, o_u = 1, o_v = 1;
  std::vector<uint64_t> o_e;
  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force counts and corollary6 witnesses");
  oracle_cmd->add_option("kind", o_kind, "N, M or corollary6")
      ->required()
      ->check(CLI::IsMember({"N", "M", "corollary6"}));
  oracle_cmd->add_option("--q", o_q, "Field order")->required();
  oracle_cmd->add_option("--u", o_u, "Element code of u");
  oracle_cmd->add_option("--v", o_v, "Element code of v");
  oracle_cmd->add_option("--e", o_e, "Freeness divisors (default q - 1)")->delimiter(',');
  add_common(oracle_cmd, oracle_c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInvalid;
  }

  const std::string command = join_args(argc, argv);
  try {
    ReportHandle rep;
    if (*screen_cmd) {
      ppr_screen_options opts;
      ppr_screen_options_init(&opts);
      opts.target = s_set == "S" ? PPR_TARGET_S : PPR_TARGET_T;
      opts.policy = s_policy == "all" ? PPR_POLICY_ALL : PPR_POLICY_SURVEY;
      opts.exhaustive = s_exhaustive;
      opts.needs_check_only = s_needs;
      opts.jobs = screen_c.jobs;
      if (*s_survey_opt) {
        if (!screen_c.expect.empty()) throw InvalidInput("--expect does not apply to survey rows");
        check(ppr_survey(s_survey, screen_c.jobs, &rep.ptr));
      } else if (!s_qs.empty()) {
        check(ppr_screen_list(s_qs.data(), s_qs.size(), &opts, &rep.ptr));
      } else {
        if (!*s_max_opt) throw InvalidInput("screen needs --max, --q or --survey");
        check(ppr_screen_range(s_min, s_max, &opts, &rep.ptr));
      }
      return emit(rep, screen_c, command);
    }
    if (*verify_cmd) {
      ppr_verify_options opts;
      ppr_verify_options_init(&opts);
      opts.set = v_set == "S" ? PPR_SET_S : PPR_SET_T;
      if (v_algo.empty()) v_algo = opts.set == PPR_SET_S ? "brute" : "logs";
      if (v_algo == "logs" || v_algo == "algo1") opts.algorithm = PPR_ALGO_LOGS;
      else if (v_algo == "ie" || v_algo == "algo3") opts.algorithm = PPR_ALGO_IE;
      else if (v_algo == "brute" || v_algo == "algo2") opts.algorithm = PPR_ALGO_PAIRS;
      else opts.algorithm = PPR_ALGO_ORACLE;
      opts.jobs = verify_c.jobs;
      if (!v_qs.empty()) {
        check(ppr_verify_list(v_qs.data(), v_qs.size(), &opts, &rep.ptr));
      } else {
        if (!*v_max_opt) throw InvalidInput("verify needs --max or --q");
        check(ppr_verify_range(v_min, v_max, &opts, &rep.ptr));
      }
      return emit(rep, verify_c, command);
    }
    if (*oracle_cmd) {
      ppr_oracle_options opts;
      ppr_oracle_options_init(&opts);
      opts.kind = o_kind == "N" ? PPR_ORACLE_N : o_kind == "M" ? PPR_ORACLE_M : PPR_ORACLE_COROLLARY6;
      opts.q = o_q;
      opts.u = o_u;
      opts.v = o_v;
      if (o_e.size() > 4) throw InvalidInput("at most four freeness divisors");
      for (size_t i = 0; i < o_e.size(); ++i) opts.e[i] = o_e[i];
      check(ppr_oracle(&opts, &rep.ptr));
      return emit(rep, oracle_c, command);
    }
  } catch (const InvalidInput& e) {
    std::cerr << "primpairs: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}
