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

#include "nnr/io.h"

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "nnr/errors.h"

namespace nnr {

namespace {

Error parse_error(const std::string &msg) { return Error(ErrorKind::kParse, msg); }

template <std::size_t N>
Json matrix_json(const Matrix<N> &m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < N; r++) {
    Json row = Json::array();
    for (std::size_t c = 0; c < N; c++) {
      row.push_back(complex_to_json(m(r, c)));
    }
    rows.push_back(row);
  }
  return rows;
}

template <std::size_t N>
Matrix<N> matrix_from(const Json &j) {
  if (!j.is_array() || j.size() != N) {
    throw parse_error("expected a " + std::to_string(N) + "x" + std::to_string(N) + " matrix");
  }
  Matrix<N> m;
  for (std::size_t r = 0; r < N; r++) {
    if (!j[r].is_array() || j[r].size() != N) {
      throw parse_error("matrix row " + std::to_string(r) + " does not have " + std::to_string(N) + " entries");
    }
    for (std::size_t c = 0; c < N; c++) {
      m(r, c) = complex_from_json(j[r][c]);
    }
  }
  return m;
}

double number_from(const Json &j, const char *what) {
  if (!j.is_number()) {
    throw parse_error(std::string("expected a number for ") + what);
  }
  return j.get<double>();
}

Json lambda_grid_json(const CompressionValues &lambda) {
  Json rows = Json::array();
  for (const auto &row : lambda) {
    rows.push_back(Json::array({complex_to_json(row[0]), complex_to_json(row[1])}));
  }
  return rows;
}

Json residuals_json(const std::array<double, 4> &residuals) {
  Json out = Json::array();
  for (double r : residuals) {
    out.push_back(r);
  }
  return out;
}

void append_row(std::string &out, std::initializer_list<std::string> fields) {
  bool first = true;
  for (const std::string &f : fields) {
    if (!first) {
      out += ',';
    }
    out += f;
    first = false;
  }
  out += '\n';
}

std::string svg_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", value);
  return buf;
}

const std::array<const char *, 6> kPalette{"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};

}  // namespace

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }
Json matrix_to_json(const Mat2 &m) { return matrix_json(m); }
Json matrix_to_json(const Mat4 &m) { return matrix_json(m); }

Json state_to_json(const PureState2 &psi) {
  return Json::array({complex_to_json(psi.components[0]), complex_to_json(psi.components[1])});
}

Complex complex_from_json(const Json &j) {
  if (j.is_number()) {
    return {j.get<double>(), 0.0};
  }
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw parse_error("expected a complex number as [re, im] or a real number, got " + j.dump());
}

Mat2 mat2_from_json(const Json &j) { return matrix_from<2>(j); }
Mat4 mat4_from_json(const Json &j) { return matrix_from<4>(j); }

Json channel_to_json(const Channel &channel) {
  Json out;
  if (const auto *ad = std::get_if<ADParams>(&channel)) {
    out["kind"] = "ad";
    out["p1"] = ad->p1;
    out["p2"] = ad->p2;
  } else if (const auto *general = std::get_if<GeneralParams>(&channel)) {
    out["kind"] = "general";
    out["a"] = general->a;
  } else {
    const auto &raw = std::get<KrausPair>(channel);
    out["kind"] = "raw";
    out["a1"] = matrix_to_json(raw.a1);
    out["a2"] = matrix_to_json(raw.a2);
  }
  return out;
}

Channel channel_from_json(const Json &j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    throw parse_error("channel must be an object with a string \"kind\"");
  }
  std::string kind = j["kind"].get<std::string>();
  auto field = [&](const char *name) -> const Json & {
    if (!j.contains(name)) {
      throw parse_error("channel of kind \"" + kind + "\" is missing \"" + name + "\"");
    }
    return j[name];
  };
  if (kind == "ad") {
    return ADParams{number_from(field("p1"), "p1"), number_from(field("p2"), "p2")};
  }
  if (kind == "general") {
    const Json &a = field("a");
    if (!a.is_array() || a.size() != 10) {
      throw parse_error("\"a\" must hold exactly 10 numbers");
    }
    std::array<double, 10> values{};
    for (std::size_t i = 0; i < 10; i++) {
      values[i] = number_from(a[i], "a");
    }
    return make_general_params(values);
  }
  if (kind == "raw") {
    return KrausPair{mat4_from_json(field("a1")), mat4_from_json(field("a2"))};
  }
  throw parse_error("unknown channel kind \"" + kind + "\"");
}

Json solution_to_json(const CodeSolution &solution) {
  Json out;
  out["lambda11"] = solution.lambda11();
  out["lambda12"] = complex_to_json(solution.lambda12());
  out["psiE"] = state_to_json(solution.psi_e);
  out["psiF"] = state_to_json(solution.psi_f);
  out["p2"] = matrix_to_json(solution.p2);
  out["residuals"] = residuals_json(solution.residuals);
  return out;
}

Json solutions_to_json(const std::vector<CodeSolution> &solutions) {
  Json out = Json::array();
  for (const CodeSolution &s : solutions) {
    out.push_back(solution_to_json(s));
  }
  return out;
}

Json kl_report_to_json(const KlReport &report) {
  Json out;
  out["lambda"] = lambda_grid_json(report.lambda);
  out["residuals"] = residuals_json(report.residuals);
  out["max_residual"] = *std::max_element(report.residuals.begin(), report.residuals.end());
  return out;
}

Mat4 projector_from_json(const Json &j) {
  if (j.is_object()) {
    if (!j.contains("p2")) {
      throw parse_error("object has no \"p2\" matrix");
    }
    return mat4_from_json(j["p2"]);
  }
  return mat4_from_json(j);
}

Json load_json(const std::string &text_or_path) {
  std::size_t start = text_or_path.find_first_not_of(" \t\r\n");
  std::string text;
  if (start != std::string::npos && (text_or_path[start] == '[' || text_or_path[start] == '{')) {
    text = text_or_path;
  } else {
    std::ifstream in(text_or_path, std::ios::binary);
    if (!in) {
      throw parse_error("cannot read file \"" + text_or_path + "\"");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    text = buffer.str();
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error &e) {
    throw parse_error(std::string("invalid JSON: ") + e.what());
  }
}

RealSym2 parse_real_sym2(const std::string &text) {
  std::array<double, 3> values{};
  std::stringstream stream(text);
  std::string item;
  std::size_t count = 0;
  while (std::getline(stream, item, ',')) {
    if (count == 3) {
      throw parse_error("expected \"a,b,c\", got \"" + text + "\"");
    }
    try {
      std::size_t used = 0;
      values[count] = std::stod(item, &used);
      if (item.find_first_not_of(" \t", used) != std::string::npos) {
        throw std::invalid_argument(item);
      }
    } catch (const std::logic_error &) {
      throw parse_error("not a number in \"" + text + "\": \"" + item + "\"");
    }
    count++;
  }
  if (count != 3) {
    throw parse_error("expected \"a,b,c\", got \"" + text + "\"");
  }
  return RealSym2{values[0], values[1], values[2]};
}

std::string range_csv(const std::vector<RangeSamples> &curves) {
  std::string out = "re,im,phi,lambda\n";
  for (const RangeSamples &curve : curves) {
    for (const RangeSample &s : curve.points) {
      append_row(out, {format_double(s.point.real()), format_double(s.point.imag()), format_double(s.phi),
                       s.lambda ? format_double(*s.lambda) : std::string()});
    }
  }
  return out;
}

std::string cloud_csv(const StateCloud &cloud, const Mat2 &a) {
  std::string out = "psi0_re,psi0_im,psi1_re,psi1_im,expZ_re,expZ_im,expA_re,expA_im\n";
  for (const KernelState &s : cloud.states) {
    const Vec2 &c = s.psi.components;
    Complex exp_a = expectation(a, c);
    append_row(out, {format_double(c[0].real()), format_double(c[0].imag()), format_double(c[1].real()),
                     format_double(c[1].imag()), format_double(s.exp_z.real()), format_double(s.exp_z.imag()),
                     format_double(exp_a.real()), format_double(exp_a.imag())});
  }
  return out;
}

std::string render_svg(const std::vector<RangeSamples> &curves, const std::vector<Complex> &markers) {
  constexpr double kWidth = 640.0;
  constexpr double kHeight = 640.0;
  constexpr double kMargin = 40.0;

  double lo_x = std::numeric_limits<double>::infinity();
  double hi_x = -lo_x;
  double lo_y = lo_x;
  double hi_y = -lo_x;
  auto include = [&](Complex z) {
    lo_x = std::min(lo_x, z.real());
    hi_x = std::max(hi_x, z.real());
    lo_y = std::min(lo_y, z.imag());
    hi_y = std::max(hi_y, z.imag());
  };
  for (const RangeSamples &curve : curves) {
    for (const RangeSample &s : curve.points) {
      include(s.point);
    }
  }
  for (Complex m : markers) {
    include(m);
  }
  // Always show the origin, and keep a square aspect ratio.
  include(0.0);
  double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-9}) * 1.1;
  double mid_x = 0.5 * (lo_x + hi_x);
  double mid_y = 0.5 * (lo_y + hi_y);
  double scale = (kWidth - 2.0 * kMargin) / span;
  auto px = [&](double x) { return svg_number(0.5 * kWidth + (x - mid_x) * scale); };
  auto py = [&](double y) { return svg_number(0.5 * kHeight - (y - mid_y) * scale); };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
  svg << "<g stroke=\"#888888\" stroke-width=\"1\">\n";
  svg << "<line x1=\"0\" y1=\"" << py(0.0) << "\" x2=\"" << kWidth << "\" y2=\"" << py(0.0) << "\"/>\n";
  svg << "<line x1=\"" << px(0.0) << "\" y1=\"0\" x2=\"" << px(0.0) << "\" y2=\"" << kHeight << "\"/>\n";
  svg << "</g>\n";
  for (std::size_t i = 0; i < curves.size(); i++) {
    const RangeSamples &curve = curves[i];
    if (curve.points.empty()) {
      continue;
    }
    svg << "<polyline fill=\"none\" stroke=\"" << kPalette[i % kPalette.size()] << "\" stroke-width=\"2\" points=\"";
    for (std::size_t k = 0; k <= curve.points.size(); k++) {
      const RangeSample &s = curve.points[k % curve.points.size()];
      svg << (k == 0 ? "" : " ") << px(s.point.real()) << ',' << py(s.point.imag());
    }
    svg << "\"/>\n";
  }
  for (Complex m : markers) {
    svg << "<circle cx=\"" << px(m.real()) << "\" cy=\"" << py(m.imag()) << "\" r=\"5\" fill=\"black\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace nnr
