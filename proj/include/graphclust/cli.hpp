// Copyright 2026 The graphclust Authors.
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

#ifndef GRAPHCLUST_CLI_HPP_
#define GRAPHCLUST_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace graphclust::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 1,
  kDataError = 2,
  kIterationCap = 3,
};

// Runs one command line (args[0] is the program name). Subcommands:
// cluster, sweep, split, synth, bound.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace graphclust::cli

#endif  // GRAPHCLUST_CLI_HPP_
