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

#ifndef NNR_IO_H
#define NNR_IO_H

#include <string>
#include <vector>

#include "json.hpp"
#include "nnr/channels.h"
#include "nnr/linalg.h"
#include "nnr/oracle.h"
#include "nnr/ranges.h"
#include "nnr/solver.h"

namespace nnr {

using Json = nlohmann::ordered_json;

/// printf("%.17g"); used for every number in CSV output.
std::string format_double(double value);

Json complex_to_json(Complex z);
Json matrix_to_json(const Mat2 &m);
Json matrix_to_json(const Mat4 &m);
Json state_to_json(const PureState2 &psi);

/// Accepts [re, im] pairs or plain real numbers. Throws Error(kParse).
Complex complex_from_json(const Json &j);
Mat2 mat2_from_json(const Json &j);
Mat4 mat4_from_json(const Json &j);

Json channel_to_json(const Channel &channel);
Channel channel_from_json(const Json &j);

Json solution_to_json(const CodeSolution &solution);
Json solutions_to_json(const std::vector<CodeSolution> &solutions);
Json kl_report_to_json(const KlReport &report);

/// A 4x4 matrix, or any object carrying one under "p2" (e.g. a CodeSolution).
Mat4 projector_from_json(const Json &j);

/// Parses text as JSON, or reads the named file when text does not start
/// with '[' or '{'. Throws Error(kParse).
Json load_json(const std::string &text_or_path);

/// "a,b,c" -> RealSym2. Throws Error(kParse).
RealSym2 parse_real_sym2(const std::string &text);

/// Header `re,im,phi,lambda`; lambda is empty for standard-range samples.
std::string range_csv(const std::vector<RangeSamples> &curves);

/// Header `psi0_re,psi0_im,psi1_re,psi1_im,expZ_re,expZ_im,expA_re,expA_im`.
std::string cloud_csv(const StateCloud &cloud, const Mat2 &a);

/// Deterministic SVG: one polyline per curve (closed), one circle per marker,
/// and the coordinate axes.
std::string render_svg(const std::vector<RangeSamples> &curves, const std::vector<Complex> &markers);

}  // namespace nnr

#endif  // NNR_IO_H
