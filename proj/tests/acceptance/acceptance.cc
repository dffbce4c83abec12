// Copyright 2026 The nnr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance runner: one [PASS]/[FAIL] line per criterion, exit status 1 if
// any criterion fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "nnr/channels.h"
#include "nnr/errors.h"
#include "nnr/io.h"
#include "nnr/solver.h"
#include "property_checks.h"

using namespace nnr;
using namespace nnr::fixtures;

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

int failures = 0;

void report(int id, const char *title, bool ok, const std::string &detail) {
  std::printf("[%s] %d %s: %s\n", ok ? "PASS" : "FAIL", id, title, detail.c_str());
  std::fflush(stdout);
  failures += ok ? 0 : 1;
}

double seconds_since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

std::string fmt(const char *format, double a = 0, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), format, a, b, c, d);
  return buf;
}

fs::path work_dir() {
  fs::path dir = fs::temp_directory_path() / "nnr_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string quote(const std::string &s) { return "'" + s + "'"; }

int run_cli_binary(const std::vector<std::string> &args, const fs::path &stdout_path) {
  std::string cmd = quote(NNR_CLI_PATH);
  for (const std::string &a : args) {
    cmd += " " + quote(a);
  }
  cmd += " > " + quote(stdout_path.string()) + " 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void criterion_1(const fs::path &dir) {
  auto start = Clock::now();
  fs::path out = dir / "c1.json";
  int code = run_cli_binary({"solve-ad", "--p1", "0.5", "--p2", "0.7", "--out", out.string()}, dir / "c1.log");
  double elapsed = seconds_since(start);
  if (code != 0) {
    report(1, "AD channel reproduction", false, "solve-ad exited with " + std::to_string(code));
    return;
  }
  Json j = load_json(out.string());
  double l11 = j["lambda11"].get<double>();
  Complex l12 = complex_from_json(j["lambda12"]);
  double expected11 = 1.0 - 0.7 * 0.5 / (2.0 - 0.5 - 0.7 + 0.35);
  double expected12 = (1.0 - l11) * std::sqrt(1.0 / 0.7 - 1.0);
  bool ok = std::abs(l11 - expected11) <= 1e-10 && std::abs(l11 - 0.6956521739) <= 1e-10 &&
            std::abs(l12 - 0.2) <= 5e-3 && std::abs(l12 - expected12) <= 1e-9 && elapsed < 1.0;
  report(1, "AD channel reproduction", ok,
         fmt("lambda11=%.10f lambda12=(%.9f, %.3g) |lambda12-closed|=%.2g", l11, l12.real(), l12.imag(),
             std::abs(l12 - expected12)) +
             fmt(" time=%.3fs", elapsed));
}

void criterion_2(const fs::path &dir) {
  auto start = Clock::now();
  double worst11 = 0.0;
  double worst12 = 0.0;
  int missing = 0;
  std::string first_problem;
  for (double p1 : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    for (double p2 : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      fs::path out = dir / "c2.json";
      int code = run_cli_binary({"solve-ad", "--p1", format_double(p1), "--p2", format_double(p2), "--scan", "--out",
                                 out.string()},
                                dir / "c2.log");
      CodeSolution cf = ad_closed_form(ADParams{p1, p2});
      double best11 = 1.0;
      double best12 = 1.0;
      if (code == 0) {
        for (const Json &s : load_json(out.string())) {
          double d11 = std::abs(s["lambda11"].get<double>() - cf.lambda11());
          double d12 = std::abs(complex_from_json(s["lambda12"]) - cf.lambda12());
          if (std::max(d11, d12) < std::max(best11, best12)) {
            best11 = d11;
            best12 = d12;
          }
        }
      }
      if (best11 > 1e-6 || best12 > 1e-6) {
        missing++;
        if (first_problem.empty()) {
          first_problem = fmt(" first miss at p=(%.1f, %.1f)", p1, p2);
        }
      }
      worst11 = std::max(worst11, best11);
      worst12 = std::max(worst12, best12);
    }
  }
  double elapsed = seconds_since(start);
  report(2, "Scan/closed-form agreement", missing == 0 && elapsed < 30.0,
         fmt("25 grid points, worst |d lambda11|=%.2g worst |d lambda12|=%.2g time=%.2fs", worst11, worst12, elapsed) +
             (missing ? " misses=" + std::to_string(missing) + first_problem : ""));
}

// Residual and relation checks for every emitted solution of one channel.
struct KlTally {
  std::size_t count = 0;
  double worst_residual = 0.0;
  double worst_relation = 0.0;

  void add(const CodeSolution &s) {
    count++;
    worst_residual = std::max(worst_residual, s.max_residual());
    worst_relation = std::max(worst_relation, std::abs(s.lambda[1][1] - (1.0 - s.lambda11())));
    worst_relation = std::max(worst_relation, std::abs(s.lambda[1][0] - std::conj(s.lambda12())));
  }
};

const std::array<double, 10> kFigureThree{0.9, 0.7, 0.2, 0.9, 0.6, 0.7, 0.9, 0.1, 0.6, 0.5};
const std::array<double, 10> kValidGeneral{0.5, 0.3, 0.1, 0.5, 0.3, 0.4, 0.5, 0.1, 0.3, 0.2};

void criterion_3() {
  KlTally ad;
  ad.add(ad_closed_form(ADParams{0.5, 0.7}));
  for (const CodeSolution &s : solve(ADParams{0.5, 0.7}, SolverConfig{})) {
    ad.add(s);
  }
  // The printed general vector cannot be built (criterion 4), so the general
  // channel is exercised with a vector that satisfies every constraint.
  KlTally general;
  std::string general_note = "general channel (substitute vector)";
  for (const CodeSolution &s : solve(make_general_params(kValidGeneral), SolverConfig{})) {
    general.add(s);
  }
  bool ok = ad.count > 0 && general.count > 0 && ad.worst_residual <= 1e-10 && general.worst_residual <= 1e-10 &&
            ad.worst_relation <= 1e-12 && general.worst_relation <= 1e-12;
  report(3, "KL verification", ok,
         "AD: " + std::to_string(ad.count) + fmt(" solutions, max residual %.2g, relations %.2g; ", ad.worst_residual,
                                                 ad.worst_relation) +
             general_note + ": " + std::to_string(general.count) +
             fmt(" solutions, max residual %.2g, relations %.2g", general.worst_residual, general.worst_relation));
}

void criterion_4() {
  auto start = Clock::now();
  std::string detail;
  bool ok = false;
  try {
    GeneralParams params = make_general_params(kFigureThree);
    BlockOperators blocks = derive_blocks(build_general(params));
    SolverConfig config;
    OmegaInterval om = omega(blocks);
    std::size_t two_point = 0;
    double worst = 0.0;
    for (std::size_t i = 0; i < config.lambda_grid; i++) {
      double lambda = om.lo + (om.hi - om.lo) * static_cast<double>(i) / static_cast<double>(config.lambda_grid - 1);
      if (gamma(blocks, lambda, config).size() == 2) {
        two_point++;
      }
    }
    std::vector<CodeSolution> sols = solve_blocks(blocks, config);
    for (const CodeSolution &s : sols) {
      worst = std::max(worst, s.max_residual());
    }
    double elapsed = seconds_since(start);
    ok = two_point > 0 && !sols.empty() && worst <= 1e-8 && elapsed < 10.0;
    detail = std::to_string(two_point) + " grid lambda11 with |Gamma| = 2, " + std::to_string(sols.size()) +
             fmt(" solutions, max residual %.2g, time %.2fs", worst, elapsed);
  } catch (const Error &e) {
    detail = std::string("printed vector rejected: ") + error_kind_name(e.kind()) + ": " + e.what();
  }
  // Supplementary information only; it does not change the verdict above.
  BlockOperators blocks = derive_blocks(build_general(make_general_params(kValidGeneral)));
  OmegaInterval om = omega(blocks);
  std::size_t two_point = 0;
  for (int i = 0; i < 1000; i++) {
    two_point += gamma(blocks, om.lo + (om.hi - om.lo) * i / 999.0, SolverConfig{}).size() == 2 ? 1 : 0;
  }
  detail += "; substitute valid vector has " + std::to_string(two_point) + " grid lambda11 with |Gamma| = 2";
  report(4, "General channel (two-point Gamma)", ok, detail);
}

void property_line(int id, const char *title, const std::vector<std::pair<const char *, CheckResult>> &checks) {
  bool ok = true;
  std::string detail;
  for (const auto &[name, r] : checks) {
    ok = ok && r.ok;
    if (!detail.empty()) {
      detail += ", ";
    }
    detail += std::string(name) + fmt(" %.2g", r.worst) + (r.ok ? "" : " (" + r.detail + ")");
  }
  report(id, title, ok, detail);
}

void criterion_10(const fs::path &dir) {
  std::vector<std::pair<std::string, std::vector<std::string>>> commands{
      {"json", {"solve-ad", "--p1", "0.3", "--p2", "0.6", "--scan", "--out", "#", "--svg", "#.svg"}},
      {"json", {"solve-general", "--a", "0.5,0.3,0.1,0.5,0.3,0.4,0.5,0.1,0.3,0.2", "--out", "#", "--svg", "#.svg"}},
      {"csv", {"nuclear-range", "--A", "[[[0.3,0.1],[1,-0.5]],[[0.2,0],[-0.4,0.7]]]", "--Z", "0.4,0.3,-0.2",
               "--lambda-sweep", "-0.3:0.3:5", "--out", "#"}},
      {"svg", {"range", "--A", "[[[0.3,0.1],[1,-0.5]],[[0.2,0],[-0.4,0.7]]]", "--format", "svg", "--out", "#"}},
      {"csv", {"oracle", "--A", "[[1,[0,1]],[2,0]]", "--Z", "[[0.5,1],[[0,0.2],-1]]", "--n", "500", "--seed", "42",
               "--out", "#"}},
  };
  std::size_t files = 0;
  std::size_t bytes = 0;
  std::string problem;
  for (std::size_t c = 0; c < commands.size(); c++) {
    std::vector<std::string> produced[2];
    for (int round = 0; round < 2; round++) {
      std::vector<std::string> args = commands[c].second;
      for (std::string &a : args) {
        if (a[0] == '#') {
          a = (dir / ("c10_" + std::to_string(c) + "_" + std::to_string(round) + "." + commands[c].first +
                      a.substr(1)))
                  .string();
          produced[round].push_back(a);
        }
      }
      fs::path log = dir / ("c10_" + std::to_string(c) + "_" + std::to_string(round) + ".log");
      if (run_cli_binary(args, log) != 0 && problem.empty()) {
        problem = "command " + std::to_string(c) + " failed: " + slurp(log);
      }
      produced[round].push_back(log.string());
    }
    for (std::size_t k = 0; k < produced[0].size(); k++) {
      std::string first = slurp(produced[0][k]);
      if (first != slurp(produced[1][k]) && problem.empty()) {
        problem = "outputs differ: " + produced[0][k];
      }
      files++;
      bytes += first.size();
    }
  }
  report(10, "Determinism", problem.empty(),
         problem.empty() ? std::to_string(files) + " output pairs byte-identical (" + std::to_string(bytes) +
                               " bytes; CSV, JSON, SVG, stdout)"
                         : problem);
}

}  // namespace

int main() {
  fs::path dir = work_dir();
  criterion_1(dir);
  criterion_2(dir);
  criterion_3();
  criterion_4();
  property_line(5, "Master identity", {{"1000 cases worst", check_master_identity(1000, 501)}});
  property_line(6, "Discriminant and implicit conic", {{"1000 curves worst", check_discriminant(1000, 601)}});
  property_line(7, "Property suite N1-N10",
                {{"N1", check_n1(1000, 701)},
                 {"N2", check_n2(1000, 702)},
                 {"N3", check_n3(1000, 703)},
                 {"N4", check_n4(1000, 704)},
                 {"N5", check_n5(1000, 705)},
                 {"N6", check_n6(1000, 706)},
                 {"N7", check_n7(1000, 707)},
                 {"N8", check_n8(1000, 708)},
                 {"N9", check_n9(1000, 709)},
                 {"N10", check_n10(1000, 710)},
                 {"containment", check_containment(1000, 711)}});
  {
    CheckResult agreement = check_oracle_agreement(100, 1000, 801);
    NonInvarianceReport witness = check_non_invariance(802);
    property_line(8, "Oracle agreement",
                  {{"100 curves max cloud distance", agreement}, {"non-invariance witness", witness.result}});
  }
  property_line(9, "Rank-k intervals", {{"1000 pairs worst endpoint error", check_rank_k(1000, 901)}});
  criterion_10(dir);
  fs::remove_all(dir);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
