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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "povmopt/povmopt.hpp"

namespace povmopt::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kFormatVersion = "povmopt/1";

/// Malformed input. `field` is a JSON-pointer-like path, `line` is 1-based
/// (0 when unknown).
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::string field, int line = 0);
  const std::string& field() const noexcept { return field_; }
  int line() const noexcept { return line_; }

 private:
  std::string field_;
  int line_;
};

enum class ProblemKind { Primal, Minimax };

/// Template invocation recorded alongside (or instead of) raw operators.
struct TemplateSpec {
  std::string name;
  Json parameters = Json::object();
  std::optional<StateEnsemble> ensemble;
  std::vector<StateEnsemble> sets;
};

struct ProblemFile {
  ProblemKind kind = ProblemKind::Primal;
  std::optional<DiscriminationProblem> primal;
  std::optional<MinimaxProblem> minimax;
  std::optional<FiniteGroup> group;
  std::optional<TemplateSpec> origin;

  int dim() const;
};

struct SolutionFile {
  std::optional<Povm> povm;
  std::optional<HermitianOperator> X;
  std::optional<std::vector<double>> lambda;
  std::optional<std::vector<double>> mu;
  std::vector<ComplexMatrix> faces;
};

/// Matrices are arrays of rows; each entry is [re, im] or a bare real number.
Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j, const std::string& field);
HermitianOperator operator_from_json(const Json& j, const std::string& field, int dim);

Json ensemble_to_json(const StateEnsemble& e);
/// {"states": [...] | "kets": [...], "priors": [...]}; priors default to uniform.
StateEnsemble ensemble_from_json(const Json& j, const std::string& field);

Json group_to_json(const FiniteGroup& g);
FiniteGroup group_from_json(const Json& j, const std::string& field, int dim, int outcomes,
                            int constraints, std::optional<int> criteria);

/// Raw text to JSON; syntax errors become ParseError with a line number.
Json parse_text(std::string_view text, const std::string& source);

ProblemFile problem_from_json(const Json& j);
ProblemFile parse_problem(std::string_view text, const std::string& source = "<input>");
/// Canonical form: inequality rows only, explicit group elements, [re, im]
/// entries, shortest round-trip doubles.
Json problem_to_json(const ProblemFile& file);

/// Expands a template invocation. Known names: min-error, bayes, error-margin,
/// bounded-inconclusive, minimax-bayes, inconclusive-minimax, plural-minimax.
ProblemFile expand_template(const TemplateSpec& spec);
const std::vector<std::string>& template_names();

SolutionFile solution_from_json(const Json& j, int dim);

std::string read_file(const std::string& path);
/// FNV-1a 64-bit digest of raw bytes, as "fnv1a64:" + 16 hex digits.
std::string digest(std::string_view bytes);

}  // namespace povmopt::cli
