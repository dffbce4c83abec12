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

#include "nnr/errors.h"

namespace nnr {

const char *error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDomain:
      return "domain";
    case ErrorKind::kStructure:
      return "structure";
    case ErrorKind::kNotHermitian:
      return "not-hermitian";
    case ErrorKind::kInvalidKind:
      return "invalid-kind";
    case ErrorKind::kDegenerateConic:
      return "degenerate-conic";
    case ErrorKind::kOffCurve:
      return "off-curve";
    case ErrorKind::kEmptyOmega:
      return "empty-omega";
    case ErrorKind::kNotProjector:
      return "not-a-projector";
    case ErrorKind::kEmptyCloud:
      return "empty-cloud";
    case ErrorKind::kParse:
      return "parse";
  }
  return "unknown";
}

}  // namespace nnr
