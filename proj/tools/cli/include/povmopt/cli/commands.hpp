// Copyright 2026 The povmopt Authors
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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "povmopt/cli/problem_file.hpp"

namespace povmopt::cli {

/// Process exit codes. Stable across releases.
enum ExitCode : int {
  kExitOk = 0,
  kExitParse = 1,
  kExitInfeasible = 2,
  kExitCertificate = 3,
  kExitNumerical = 4,
  kExitCovariance = 5,
};

struct RunOptions {
  SolverConfig solver;
  CertificateTolerances certificate;
  MinimaxTolerances minimax;
  std::uint64_t seed = 0;
  int jobs = 1;
};

struct CommandResult {
  int exit_code = kExitOk;
  Json report;
};

CommandResult cmd_solve(std::string_view problem_text, const std::string& source, const RunOptions& options);
CommandResult cmd_minimax(std::string_view problem_text, const std::string& source, const RunOptions& options);
CommandResult cmd_certify(std::string_view problem_text, const std::string& source,
                          std::string_view solution_text, const std::string& solution_source,
                          const RunOptions& options);
/// Without a solution the problem is solved first.
CommandResult cmd_symmetrize(std::string_view problem_text, const std::string& source,
                             std::optional<std::string_view> solution_text, const RunOptions& options);
/// The report is the canonical problem file itself.
CommandResult cmd_template(const TemplateSpec& spec, const RunOptions& options);

/// Runs solve / minimax / symmetrize on a file, or on every *.json file of a
/// directory using `options.jobs` worker threads. The batch exit code is the
/// largest per-file code.
CommandResult run_path(const std::string& command, const std::string& path, const RunOptions& options);

/// "d:R" or "d:R:mixed"; states drawn with `seed`.
StateEnsemble random_ensemble_from_spec(const std::string& spec, std::uint64_t seed);

}  // namespace povmopt::cli
