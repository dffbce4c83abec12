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

#ifndef NNR_ERRORS_H
#define NNR_ERRORS_H

#include <stdexcept>
#include <string>

namespace nnr {

enum class ErrorKind {
  kDomain,
  kStructure,
  kNotHermitian,
  kInvalidKind,
  kDegenerateConic,
  kOffCurve,
  kEmptyOmega,
  kNotProjector,
  kEmptyCloud,
  kParse,
};

/// Stable machine-readable name, e.g. "domain" or "empty-omega".
const char *error_kind_name(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above, so the
/// CLI can report it on a single parseable line.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string &message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace nnr

#endif  // NNR_ERRORS_H
