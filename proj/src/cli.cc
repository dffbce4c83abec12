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

#include "nnr/cli.h"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "nnr/channels.h"
#include "nnr/errors.h"
#include "nnr/io.h"
#include "nnr/oracle.h"
#include "nnr/random.h"
#include "nnr/ranges.h"
#include "nnr/solver.h"

namespace nnr {

namespace {

struct RangeOptions {
  std::string a;
  std::size_t n = 256;
  std::string format = "csv";
  std::string out;
};

struct NuclearOptions {
  std::string a;
  std::string z;
  double lambda = 0.0;
  std::string sweep;
  std::size_t n = 256;
  std::string format = "csv";
  std::string out;
};

struct SolveOptions {
  double p1 = 0.0;
  double p2 = 0.0;
  std::string a_values;
  std::string channel;
  bool scan = false;
  std::size_t grid = 1000;
  double tol = 1e-10;
  std::string out;
  std::string svg;
  std::string channel_out;
};

struct VerifyOptions {
  std::string channel;
  std::string p2;
  std::string out;
};

struct OracleOptions {
  std::string a;
  std::string z;
  std::size_t n = 1000;
  std::uint64_t seed = 0;
  double tol = 1e-8;
  std::string out;
};

constexpr std::size_t kSvgSamples = 256;

void emit(const std::string &path, const std::string &text, std::ostream &out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) {
    throw Error(ErrorKind::kParse, "cannot open \"" + path + "\" for writing");
  }
  file << text;
  if (!file.flush()) {
    throw Error(ErrorKind::kParse, "failed writing \"" + path + "\"");
  }
}

std::string json_text(const Json &j) { return j.dump(2) + "\n"; }

std::vector<double> parse_sweep(const std::string &text) {
  std::vector<std::string> parts;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ':')) {
    parts.push_back(item);
  }
  double lo = 0.0;
  double hi = 0.0;
  long steps = 0;
  try {
    if (parts.size() != 3) {
      throw std::invalid_argument(text);
    }
    lo = std::stod(parts[0]);
    hi = std::stod(parts[1]);
    steps = std::stol(parts[2]);
  } catch (const std::logic_error &) {
    throw Error(ErrorKind::kParse, "expected --lambda-sweep lo:hi:steps, got \"" + text + "\"");
  }
  if (steps < 1) {
    throw Error(ErrorKind::kDomain, "--lambda-sweep needs at least one step");
  }
  std::vector<double> out;
  for (long k = 0; k < steps; k++) {
    out.push_back(steps == 1 ? lo : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(steps - 1));
  }
  return out;
}

std::array<double, 10> parse_general_vector(const std::string &text) {
  std::array<double, 10> values{};
  std::stringstream stream(text);
  std::string item;
  std::size_t count = 0;
  while (std::getline(stream, item, ',')) {
    if (count == values.size()) {
      throw Error(ErrorKind::kParse, "--a takes exactly 10 comma-separated reals");
    }
    try {
      values[count++] = std::stod(item);
    } catch (const std::logic_error &) {
      throw Error(ErrorKind::kParse, "not a number in --a: \"" + item + "\"");
    }
  }
  if (count != values.size()) {
    throw Error(ErrorKind::kParse, "--a takes exactly 10 comma-separated reals, got " + std::to_string(count));
  }
  return values;
}

void run_range(const RangeOptions &opt, std::ostream &out) {
  Mat2 a = mat2_from_json(load_json(opt.a));
  std::vector<RangeSamples> curves{numerical_range_boundary(a, opt.n)};
  emit(opt.out, opt.format == "svg" ? render_svg(curves, {}) : range_csv(curves), out);
}

void run_nuclear(const NuclearOptions &opt, std::ostream &out) {
  Mat2 a = mat2_from_json(load_json(opt.a));
  RealSym2 z = parse_real_sym2(opt.z);
  std::vector<double> lambdas = opt.sweep.empty() ? std::vector<double>{opt.lambda} : parse_sweep(opt.sweep);
  std::vector<RangeSamples> curves;
  for (double lambda : lambdas) {
    curves.push_back(sample_curve(nuclear_curve(a, z, lambda), opt.n));
  }
  emit(opt.out, opt.format == "svg" ? render_svg(curves, {}) : range_csv(curves), out);
}

// Both nuclear curves at the lambda11 carrying the most intersection points,
// with those points as markers.
std::string solve_svg(const BlockOperators &blocks, const std::vector<CodeSolution> &solutions,
                      const SolverConfig &config) {
  OmegaInterval om = omega(blocks);
  double lambda11 = om.lo;
  std::vector<GammaPoint> best;
  std::map<double, bool> seen;
  for (const CodeSolution &s : solutions) {
    if (seen.count(s.lambda11()) != 0) {
      continue;
    }
    seen[s.lambda11()] = true;
    std::vector<GammaPoint> points = gamma(blocks, s.lambda11(), config);
    if (best.empty() || points.size() > best.size()) {
      best = points;
      lambda11 = s.lambda11();
    }
  }
  BlockSide e = make_block_side(blocks.e11, blocks.e12);
  BlockSide f = make_block_side(blocks.f11, blocks.f12);
  std::vector<RangeSamples> curves{sample_curve(nuclear_curve(e.a, e.z, lambda11), kSvgSamples),
                                   sample_curve(nuclear_curve(f.a, f.z, lambda11), kSvgSamples)};
  std::vector<Complex> markers;
  for (const GammaPoint &g : best) {
    markers.push_back(g.z);
  }
  return render_svg(curves, markers);
}

void run_solve(const Channel &channel, const SolveOptions &opt, bool closed_form, std::ostream &out) {
  SolverConfig config;
  config.lambda_grid = opt.grid;
  config.kl_tol = opt.tol;
  config.validate();
  BlockOperators blocks = derive_blocks(build_channel(channel));
  std::vector<CodeSolution> solutions;
  if (closed_form) {
    CodeSolution sol = ad_closed_form(std::get<ADParams>(channel));
    emit(opt.out, json_text(solution_to_json(sol)), out);
    solutions.push_back(sol);
  } else {
    solutions = solve_blocks(blocks, config);
    emit(opt.out, json_text(solutions_to_json(solutions)), out);
  }
  if (!opt.svg.empty()) {
    emit(opt.svg, solve_svg(blocks, solutions, config), out);
  }
  if (!opt.channel_out.empty()) {
    emit(opt.channel_out, json_text(channel_to_json(channel)), out);
  }
}

void run_verify(const VerifyOptions &opt, std::ostream &out) {
  Channel channel = channel_from_json(load_json(opt.channel));
  BlockOperators blocks = derive_blocks(build_channel(channel));
  Mat4 p2 = projector_from_json(load_json(opt.p2));
  emit(opt.out, json_text(kl_report_to_json(verify_kl(p2, blocks))), out);
}

void run_oracle(const OracleOptions &opt, std::ostream &out) {
  Mat2 a = mat2_from_json(load_json(opt.a));
  Mat2 z = mat2_from_json(load_json(opt.z));
  StateCloud cloud = sample_kernel_states(z, opt.n, opt.tol, RngSeed{opt.seed});
  emit(opt.out, cloud_csv(cloud, a), out);
  if (!opt.out.empty() && opt.out != "-") {
    out << "generator " << kGeneratorName << " seed " << opt.seed << " retained " << cloud.states.size() << " of "
        << opt.n << "\n";
  }
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Nuclear numerical ranges and two-qubit code synthesis", "nnr"};
  app.require_subcommand(1);

  RangeOptions range;
  auto *range_cmd = app.add_subcommand("range", "Boundary samples of the numerical range W(A)");
  range_cmd->add_option("--A", range.a, "2x2 complex matrix as JSON text or file")->required();
  range_cmd->add_option("--n", range.n, "number of samples")->capture_default_str();
  range_cmd->add_option("--format", range.format)->check(CLI::IsMember({"csv", "svg"}))->capture_default_str();
  range_cmd->add_option("--out", range.out, "output path (default stdout)");

  NuclearOptions nuclear;
  auto *nuclear_cmd = app.add_subcommand("nuclear-range", "Samples of W(A | Z - lambda I)");
  nuclear_cmd->add_option("--A", nuclear.a, "2x2 complex matrix as JSON text or file")->required();
  nuclear_cmd->add_option("--Z", nuclear.z, "real symmetric Z = [[2a, b], [b, 2c]] as \"a,b,c\"")->required();
  auto *lambda_opt = nuclear_cmd->add_option("--lambda", nuclear.lambda)->capture_default_str();
  nuclear_cmd->add_option("--lambda-sweep", nuclear.sweep, "lo:hi:steps")->excludes(lambda_opt);
  nuclear_cmd->add_option("--n", nuclear.n, "samples per curve")->capture_default_str();
  nuclear_cmd->add_option("--format", nuclear.format)->check(CLI::IsMember({"csv", "svg"}))->capture_default_str();
  nuclear_cmd->add_option("--out", nuclear.out, "output path (default stdout)");

  auto add_solver_flags = [](CLI::App *cmd, SolveOptions &opt) {
    cmd->add_option("--grid", opt.grid, "lambda11 grid size")->capture_default_str();
    cmd->add_option("--tol", opt.tol, "Knill-Laflamme residual tolerance")->capture_default_str();
    cmd->add_option("--out", opt.out, "JSON output path (default stdout)");
    cmd->add_option("--svg", opt.svg, "also draw both curves and the intersection points");
  };

  SolveOptions ad;
  auto *ad_cmd = app.add_subcommand("solve-ad", "Code for the amplitude damping pair");
  ad_cmd->add_option("--p1", ad.p1)->required();
  ad_cmd->add_option("--p2", ad.p2)->required();
  ad_cmd->add_flag("--scan", ad.scan, "run the generic scan instead of the closed form");
  add_solver_flags(ad_cmd, ad);
  ad_cmd->add_option("--channel-out", ad.channel_out, "write the channel as JSON");

  SolveOptions general;
  auto *general_cmd = app.add_subcommand("solve-general", "Codes for the general block-diagonal pair");
  general_cmd->add_option("--a", general.a_values, "10 comma-separated reals")->required();
  add_solver_flags(general_cmd, general);
  general_cmd->add_option("--channel-out", general.channel_out, "write the channel as JSON");

  SolveOptions raw;
  auto *raw_cmd = app.add_subcommand("solve-raw", "Codes for a channel given as JSON");
  raw_cmd->add_option("--channel", raw.channel, "channel JSON file or text")->required();
  add_solver_flags(raw_cmd, raw);

  VerifyOptions verify;
  auto *verify_cmd = app.add_subcommand("verify", "Knill-Laflamme residuals of a projector");
  verify_cmd->add_option("--channel", verify.channel, "channel JSON file or text")->required();
  verify_cmd->add_option("--p2", verify.p2, "4x4 projector or CodeSolution JSON")->required();
  verify_cmd->add_option("--out", verify.out, "output path (default stdout)");

  OracleOptions oracle;
  auto *oracle_cmd = app.add_subcommand("oracle", "Monte Carlo states with <Z> = 0");
  oracle_cmd->add_option("--A", oracle.a, "2x2 complex matrix as JSON text or file")->required();
  oracle_cmd->add_option("--Z", oracle.z, "2x2 complex matrix as JSON text or file")->required();
  oracle_cmd->add_option("--n", oracle.n)->capture_default_str();
  oracle_cmd->add_option("--seed", oracle.seed)->capture_default_str();
  oracle_cmd->add_option("--tol", oracle.tol)->capture_default_str();
  oracle_cmd->add_option("--out", oracle.out, "CSV output path (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    if (range_cmd->parsed()) {
      run_range(range, out);
    } else if (nuclear_cmd->parsed()) {
      run_nuclear(nuclear, out);
    } else if (ad_cmd->parsed()) {
      run_solve(ADParams{ad.p1, ad.p2}, ad, !ad.scan, out);
    } else if (general_cmd->parsed()) {
      run_solve(make_general_params(parse_general_vector(general.a_values)), general, false, out);
    } else if (raw_cmd->parsed()) {
      run_solve(channel_from_json(load_json(raw.channel)), raw, false, out);
    } else if (verify_cmd->parsed()) {
      run_verify(verify, out);
    } else if (oracle_cmd->parsed()) {
      run_oracle(oracle, out);
    }
  } catch (const Error &e) {
    err << "error: " << error_kind_name(e.kind()) << ": " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace nnr
