// Copyright 2026 The thermodec Authors.
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
// Command-line front end. Every subcommand reads one scenario file and writes
// one CSV result table:
//
//   solve-lottery  --in F --out F
//   sweep-beta     --in F --out F --betas start:stop:count
//   satisfice      --in F --out F --cost C [--mmax M] [--seed S]
//   gibbs-vs-max   --in F --out F [--mmax A]
//   solve-tree     --in F --out F
//   solve-mdp      --in F --out F --mode kl|bellman|risk|robust|bounded
//
// --seed is accepted everywhere and overrides the scenario's seed.
// Exit codes: 0 success, 1 invalid input, 2 numerical diagnostic.

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace thermodec {

inline constexpr const char* kToolVersion = "thermodec 1.0.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitDiagnostic = 2;

// Inclusive linear grid "start:stop:count"; count >= 2 unless start == stop.
// Point i is start + i * (stop - start) / (count - 1), and the last point is
// exactly stop.
std::vector<double> parse_beta_grid(const std::string& grid);

// args excludes the program name. Diagnostics go to err, --help text to out.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace thermodec
