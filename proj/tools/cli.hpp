// Copyright 2026 The lampi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LAMPI_TOOLS_CLI_HPP_
#define LAMPI_TOOLS_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace lampi::cli {

/// Exit status: 0 success or true, 1 false or not derivable, 2 usage or
/// parse error. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lampi::cli

#endif  // LAMPI_TOOLS_CLI_HPP_
