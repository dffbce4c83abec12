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

#ifndef NNR_CLI_H
#define NNR_CLI_H

#include <ostream>
#include <string>
#include <vector>

namespace nnr {

/// Runs the command line tool. args excludes the program name. Returns 0 on
/// success, 1 after a domain or validation error (one "error: <kind>: <msg>"
/// line on err) and 2 on usage errors.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace nnr

#endif  // NNR_CLI_H
