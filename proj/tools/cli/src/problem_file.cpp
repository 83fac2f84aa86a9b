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

#include "povmopt/cli/problem_file.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace povmopt::cli {

ParseError::ParseError(const std::string& message, std::string field, int line)
    : Error([&] {
        std::ostringstream msg;
        if (line > 0) msg << "line " << line << ": ";
        if (!field.empty()) msg << field << ": ";
        msg << message;
        return msg.str();
      }()),
      field_(std::move(field)),
      line_(line) {}

int ProblemFile::dim() const { return primal ? primal->dim() : minimax->dim(); }

namespace {

std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string child(const std::string& path, std::size_t index) { return path + "/" + std::to_string(index); }

const Json& require(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw ParseError("expected an object", path);
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field '") + key + "'", path);
  return *it;
}

const Json& require_array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError("expected an array", path);
  return j;
}

double number(const Json& j, const std::string& path) {
  if (!j.is_number()) throw ParseError("expected a number", path);
  return j.get<double>();
}

int integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ParseError("expected an integer", path);
  return j.get<int>();
}

std::vector<double> numbers(const Json& j, const std::string& path) {
  require_array(j, path);
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], child(path, i)));
  return out;
}

std::vector<int> integers(const Json& j, const std::string& path) {
  require_array(j, path);
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(integer(j[i], child(path, i)));
  return out;
}

std::vector<std::string> strings(const Json& j, const std::string& path) {
  require_array(j, path);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string()) throw ParseError("expected a string", child(path, i));
    out.push_back(j[i].get<std::string>());
  }
  return out;
}

Complex entry(const Json& j, const std::string& path) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw ParseError("expected [re, im] or a real number", path);
}

Eigen::MatrixXd real_matrix_from_json(const Json& j, const std::string& path) {
  const ComplexMatrix m = matrix_from_json(j, path);
  if (m.imag().cwiseAbs().maxCoeff() != 0.0) throw ParseError("expected a real matrix", path);
  return m.real();
}

std::vector<HermitianOperator> operator_list(const Json& j, const std::string& path, int dim) {
  require_array(j, path);
  std::vector<HermitianOperator> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(operator_from_json(j[i], child(path, i), dim));
  return out;
}

Json operator_list_to_json(const std::vector<HermitianOperator>& ops) {
  Json out = Json::array();
  for (const auto& a : ops) out.push_back(matrix_to_json(a.matrix()));
  return out;
}

Json element_to_json(const GroupElement& g) {
  Json e = Json::object();
  e["id"] = g.id;
  e["op"] = matrix_to_json(g.op);
  e["antiunitary"] = g.antiunitary;
  e["perm_M"] = g.perm_M;
  e["perm_J"] = g.perm_J;
  if (g.perm_K) e["perm_K"] = *g.perm_K;
  return e;
}

std::vector<int> iota(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i;
  return v;
}

GroupElement element_from_json(const Json& j, const std::string& path, int dim, int outcomes,
                               int constraints, std::optional<int> criteria) {
  if (!j.is_object()) throw ParseError("expected an object", path);
  GroupElement g;
  if (j.contains("id")) {
    if (!j["id"].is_string()) throw ParseError("expected a string", child(path, "id"));
    g.id = j["id"].get<std::string>();
  }
  g.op = matrix_from_json(require(j, "op", path), child(path, "op"));
  if (g.op.rows() != dim || g.op.cols() != dim) {
    throw ParseError("operator must be " + std::to_string(dim) + "x" + std::to_string(dim), child(path, "op"));
  }
  if (j.contains("antiunitary")) {
    if (!j["antiunitary"].is_boolean()) throw ParseError("expected a boolean", child(path, "antiunitary"));
    g.antiunitary = j["antiunitary"].get<bool>();
  }
  g.perm_M = integers(require(j, "perm_M", path), child(path, "perm_M"));
  if (static_cast<int>(g.perm_M.size()) != outcomes) {
    throw ParseError("perm_M must have " + std::to_string(outcomes) + " entries", child(path, "perm_M"));
  }
  g.perm_J = j.contains("perm_J") ? integers(j["perm_J"], child(path, "perm_J")) : iota(constraints);
  if (static_cast<int>(g.perm_J.size()) != constraints) {
    throw ParseError("perm_J must have " + std::to_string(constraints) + " entries", child(path, "perm_J"));
  }
  if (criteria) {
    g.perm_K = j.contains("perm_K") ? integers(j["perm_K"], child(path, "perm_K")) : iota(*criteria);
    if (static_cast<int>(g.perm_K->size()) != *criteria) {
      throw ParseError("perm_K must have " + std::to_string(*criteria) + " entries", child(path, "perm_K"));
    }
  }
  return g;
}

std::vector<RawConstraint> constraint_rows(const Json& j, const std::string& path, int dim, int outcomes) {
  require_array(j, path);
  std::vector<RawConstraint> rows;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = child(path, i);
    RawConstraint row;
    row.ops = operator_list(require(j[i], "ops", p), child(p, "ops"), dim);
    if (static_cast<int>(row.ops.size()) != outcomes) {
      throw ParseError("expected " + std::to_string(outcomes) + " operators", child(p, "ops"));
    }
    row.bound = number(require(j[i], "bound", p), child(p, "bound"));
    std::string rel = "<=";
    if (j[i].contains("relation")) {
      if (!j[i]["relation"].is_string()) throw ParseError("expected a string", child(p, "relation"));
      rel = j[i]["relation"].get<std::string>();
    }
    if (rel == "<=") {
      row.relation = ConstraintRelation::LessEqual;
    } else if (rel == "==") {
      row.relation = ConstraintRelation::Equal;
    } else if (rel == ">=") {
      for (auto& a : row.ops) a = -a;
      row.bound = -row.bound;
    } else {
      throw ParseError("relation must be one of <=, ==, >=", child(p, "relation"));
    }
    if (j[i].contains("label")) {
      if (!j[i]["label"].is_string()) throw ParseError("expected a string", child(p, "label"));
      row.label = j[i]["label"].get<std::string>();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Json constraints_to_json(const DiscriminationProblem& p) {
  Json rows = Json::array();
  for (int j = 0; j < p.constraints(); ++j) {
    Json row = Json::object();
    if (!p.labels().constraints.empty()) row["label"] = p.labels().constraints[static_cast<std::size_t>(j)];
    row["relation"] = "<=";
    row["bound"] = p.bound(j);
    row["ops"] = operator_list_to_json(p.constraint_ops()[static_cast<std::size_t>(j)]);
    rows.push_back(std::move(row));
  }
  return rows;
}

TemplateSpec template_from_json(const Json& j, const std::string& path) {
  TemplateSpec spec;
  const Json& name = require(j, "name", path);
  if (!name.is_string()) throw ParseError("expected a string", child(path, "name"));
  spec.name = name.get<std::string>();
  if (j.contains("parameters")) {
    if (!j["parameters"].is_object()) throw ParseError("expected an object", child(path, "parameters"));
    spec.parameters = j["parameters"];
  }
  if (j.contains("ensemble")) spec.ensemble = ensemble_from_json(j["ensemble"], child(path, "ensemble"));
  if (j.contains("sets")) {
    const Json& sets = require_array(j["sets"], child(path, "sets"));
    for (std::size_t i = 0; i < sets.size(); ++i) {
      spec.sets.push_back(ensemble_from_json(sets[i], child(child(path, "sets"), i)));
    }
  }
  return spec;
}

Json template_to_json(const TemplateSpec& spec) {
  Json t = Json::object();
  t["name"] = spec.name;
  t["parameters"] = spec.parameters;
  if (spec.ensemble) t["ensemble"] = ensemble_to_json(*spec.ensemble);
  if (!spec.sets.empty()) {
    Json sets = Json::array();
    for (const auto& s : spec.sets) sets.push_back(ensemble_to_json(s));
    t["sets"] = std::move(sets);
  }
  return t;
}

double parameter(const TemplateSpec& spec, const char* key) {
  const std::string path = "/template/parameters/" + std::string(key);
  auto it = spec.parameters.find(key);
  if (it == spec.parameters.end()) throw ParseError("template '" + spec.name + "' needs this parameter", path);
  return number(*it, path);
}

const StateEnsemble& need_ensemble(const TemplateSpec& spec) {
  if (!spec.ensemble) throw ParseError("template '" + spec.name + "' needs an ensemble", "/template/ensemble");
  return *spec.ensemble;
}

BayesCost costs_for(const TemplateSpec& spec, int count) {
  auto it = spec.parameters.find("costs");
  if (it == spec.parameters.end()) return BayesCost::min_error(count);
  return BayesCost::make(real_matrix_from_json(*it, "/template/parameters/costs"));
}

}  // namespace

Json matrix_to_json(const ComplexMatrix& m) {
  // Adding +0.0 folds -0.0 into +0.0 so canonical output survives re-symmetrization.
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back(Json::array({m(r, c).real() + 0.0, m(r, c).imag() + 0.0}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const Json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) throw ParseError("expected a nonempty array of rows", field);
  const std::size_t rows = j.size();
  if (!j[0].is_array()) throw ParseError("expected an array", child(field, std::size_t{0}));
  const std::size_t cols = j[0].size();
  ComplexMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string rp = child(field, r);
    if (!j[r].is_array()) throw ParseError("expected an array", rp);
    if (j[r].size() != cols) throw ParseError("row length differs from row 0", rp);
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = entry(j[r][c], child(rp, c));
    }
  }
  return m;
}

HermitianOperator operator_from_json(const Json& j, const std::string& field, int dim) {
  const ComplexMatrix m = matrix_from_json(j, field);
  if (m.rows() != dim || m.cols() != dim) {
    throw ParseError("expected a " + std::to_string(dim) + "x" + std::to_string(dim) + " matrix", field);
  }
  try {
    return HermitianOperator::from_matrix(m);
  } catch (const AsymmetryTooLarge& e) {
    throw ParseError(e.what(), field);
  }
}

Json ensemble_to_json(const StateEnsemble& e) {
  Json out = Json::object();
  Json states = Json::array();
  for (const auto& s : e.states()) states.push_back(matrix_to_json(s.op().matrix()));
  out["states"] = std::move(states);
  out["priors"] = e.priors();
  return out;
}

StateEnsemble ensemble_from_json(const Json& j, const std::string& field) {
  if (!j.is_object()) throw ParseError("expected an object", field);
  std::vector<DensityOperator> states;
  try {
    if (j.contains("states")) {
      const Json& arr = require_array(j["states"], child(field, "states"));
      if (arr.empty()) throw ParseError("at least one state is required", child(field, "states"));
      int dim = -1;
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string p = child(child(field, "states"), i);
        const ComplexMatrix m = matrix_from_json(arr[i], p);
        if (dim < 0) dim = static_cast<int>(m.rows());
        states.push_back(DensityOperator::make(operator_from_json(arr[i], p, dim)));
      }
    } else if (j.contains("kets")) {
      const Json& arr = require_array(j["kets"], child(field, "kets"));
      if (arr.empty()) throw ParseError("at least one ket is required", child(field, "kets"));
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string p = child(child(field, "kets"), i);
        require_array(arr[i], p);
        ComplexVector v(static_cast<Eigen::Index>(arr[i].size()));
        for (std::size_t k = 0; k < arr[i].size(); ++k) v(static_cast<Eigen::Index>(k)) = entry(arr[i][k], child(p, k));
        if (v.norm() == 0.0) throw ParseError("ket has zero norm", p);
        states.push_back(DensityOperator::pure(v));
      }
    } else {
      throw ParseError("expected 'states' or 'kets'", field);
    }
    if (!j.contains("priors")) return StateEnsemble::equiprobable(std::move(states));
    return StateEnsemble::make(std::move(states), numbers(j["priors"], child(field, "priors")));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what(), field);
  }
}

Json group_to_json(const FiniteGroup& g) {
  Json elements = Json::array();
  for (const auto& e : g.elements()) elements.push_back(element_to_json(e));
  Json out = Json::object();
  out["elements"] = std::move(elements);
  return out;
}

FiniteGroup group_from_json(const Json& j, const std::string& field, int dim, int outcomes, int constraints,
                            std::optional<int> criteria) {
  if (!j.is_object()) throw ParseError("expected an object", field);
  try {
    if (j.contains("generator")) {
      return FiniteGroup::cyclic(
          element_from_json(j["generator"], child(field, "generator"), dim, outcomes, constraints, criteria));
    }
    const Json& arr = require_array(require(j, "elements", field), child(field, "elements"));
    std::vector<GroupElement> elements;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      elements.push_back(
          element_from_json(arr[i], child(child(field, "elements"), i), dim, outcomes, constraints, criteria));
    }
    return FiniteGroup::make(std::move(elements));
  } catch (const InvalidGroup& e) {
    throw ParseError(e.what(), field);
  }
}

Json parse_text(std::string_view text, const std::string& source) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    const int line = 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n'));
    std::string what = e.what();
    const auto pos = what.find("parse error");
    throw ParseError(pos == std::string::npos ? what : what.substr(pos), source, line);
  }
}

ProblemFile problem_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("expected an object", "");
  const Json& version = require(j, "version", "");
  if (!version.is_string() || version.get<std::string>() != kFormatVersion) {
    throw ParseError(std::string("unsupported version, expected ") + kFormatVersion, "/version");
  }

  std::optional<TemplateSpec> origin;
  if (j.contains("origin")) origin = template_from_json(j["origin"], "/origin");

  if (j.contains("template")) {
    ProblemFile file = expand_template(template_from_json(j["template"], "/template"));
    if (j.contains("kind")) {
      const bool minimax = j["kind"] == "minimax";
      if (minimax != (file.kind == ProblemKind::Minimax)) {
        throw ParseError("kind does not match template '" + file.origin->name + "'", "/kind");
      }
    }
    if (j.contains("group")) {
      file.group = group_from_json(j["group"], "/group", file.dim(),
                                   file.primal ? file.primal->outcomes() : file.minimax->outcomes(),
                                   file.primal ? file.primal->constraints() : file.minimax->constraints(),
                                   file.minimax ? std::optional<int>(file.minimax->criteria()) : std::nullopt);
    }
    return file;
  }

  const Json& kind = require(j, "kind", "");
  if (!kind.is_string() || (kind != "primal" && kind != "minimax")) {
    throw ParseError("kind must be 'primal' or 'minimax'", "/kind");
  }
  const int dim = integer(require(j, "dimension", ""), "/dimension");
  if (dim < 1) throw ParseError("dimension must be positive", "/dimension");
  std::vector<std::string> outcome_labels;
  if (j.contains("outcomes")) outcome_labels = strings(j["outcomes"], "/outcomes");

  ProblemFile file;
  file.origin = std::move(origin);
  try {
    if (kind == "primal") {
      file.kind = ProblemKind::Primal;
      auto objective = operator_list(require(j, "objective", ""), "/objective", dim);
      if (objective.empty()) throw ParseError("at least one outcome is required", "/objective");
      const int outcomes = static_cast<int>(objective.size());
      std::vector<RawConstraint> rows;
      if (j.contains("constraints")) rows = constraint_rows(j["constraints"], "/constraints", dim, outcomes);
      if (!outcome_labels.empty() && static_cast<int>(outcome_labels.size()) != outcomes) {
        throw ParseError("label count differs from outcome count", "/outcomes");
      }
      file.primal = canonicalize_equalities(std::move(objective), std::move(rows), std::move(outcome_labels));
    } else {
      file.kind = ProblemKind::Minimax;
      const Json& crit = require_array(require(j, "criteria", ""), "/criteria");
      if (crit.empty()) throw ParseError("at least one criterion is required", "/criteria");
      std::vector<std::vector<HermitianOperator>> c;
      std::vector<double> offsets;
      MinimaxProblem::Labels labels;
      labels.outcomes = std::move(outcome_labels);
      bool any_label = false;
      std::vector<std::string> crit_labels;
      for (std::size_t k = 0; k < crit.size(); ++k) {
        const std::string p = child("/criteria", k);
        c.push_back(operator_list(require(crit[k], "ops", p), child(p, "ops"), dim));
        if (c.back().size() != c.front().size()) throw ParseError("operator count differs from criterion 0", child(p, "ops"));
        offsets.push_back(crit[k].contains("offset") ? number(crit[k]["offset"], child(p, "offset")) : 0.0);
        std::string label;
        if (crit[k].contains("label")) {
          if (!crit[k]["label"].is_string()) throw ParseError("expected a string", child(p, "label"));
          label = crit[k]["label"].get<std::string>();
          any_label = true;
        }
        crit_labels.push_back(std::move(label));
      }
      if (any_label) labels.criteria = std::move(crit_labels);
      const int outcomes = static_cast<int>(c.front().size());
      if (outcomes == 0) throw ParseError("at least one outcome is required", "/criteria/0/ops");
      if (!labels.outcomes.empty() && static_cast<int>(labels.outcomes.size()) != outcomes) {
        throw ParseError("label count differs from outcome count", "/outcomes");
      }
      std::vector<RawConstraint> rows;
      if (j.contains("constraints")) rows = constraint_rows(j["constraints"], "/constraints", dim, outcomes);
      auto feasible = canonicalize_equalities(std::vector<HermitianOperator>(static_cast<std::size_t>(outcomes),
                                                                             HermitianOperator::zero(dim)),
                                              std::move(rows));
      labels.constraints = feasible.labels().constraints;
      file.minimax = MinimaxProblem::make(std::move(c), std::move(offsets), feasible.constraint_ops(),
                                          feasible.bounds(), std::move(labels));
    }
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what(), "");
  }

  if (j.contains("group")) {
    const bool mm = file.kind == ProblemKind::Minimax;
    file.group = group_from_json(j["group"], "/group", dim, mm ? file.minimax->outcomes() : file.primal->outcomes(),
                                 mm ? file.minimax->constraints() : file.primal->constraints(),
                                 mm ? std::optional<int>(file.minimax->criteria()) : std::nullopt);
  }
  return file;
}

ProblemFile parse_problem(std::string_view text, const std::string& source) {
  return problem_from_json(parse_text(text, source));
}

Json problem_to_json(const ProblemFile& file) {
  Json j = Json::object();
  j["version"] = kFormatVersion;
  j["kind"] = file.kind == ProblemKind::Primal ? "primal" : "minimax";
  j["dimension"] = file.dim();
  if (file.kind == ProblemKind::Primal) {
    const auto& p = *file.primal;
    if (!p.labels().outcomes.empty()) j["outcomes"] = p.labels().outcomes;
    j["objective"] = operator_list_to_json(p.objective_ops());
    j["constraints"] = constraints_to_json(p);
  } else {
    const auto& p = *file.minimax;
    if (!p.labels().outcomes.empty()) j["outcomes"] = p.labels().outcomes;
    Json crit = Json::array();
    for (int k = 0; k < p.criteria(); ++k) {
      Json c = Json::object();
      if (!p.labels().criteria.empty()) c["label"] = p.labels().criteria[static_cast<std::size_t>(k)];
      c["offset"] = p.offset(k);
      c["ops"] = operator_list_to_json(p.criterion_ops()[static_cast<std::size_t>(k)]);
      crit.push_back(std::move(c));
    }
    j["criteria"] = std::move(crit);
    j["constraints"] = constraints_to_json(p.feasible_set());
  }
  if (file.group) j["group"] = group_to_json(*file.group);
  if (file.origin) j["origin"] = template_to_json(*file.origin);
  return j;
}

const std::vector<std::string>& template_names() {
  static const std::vector<std::string> names{"min-error",    "bayes",
                                              "error-margin", "bounded-inconclusive",
                                              "minimax-bayes", "inconclusive-minimax",
                                              "plural-minimax"};
  return names;
}

ProblemFile expand_template(const TemplateSpec& spec) {
  ProblemFile file;
  file.origin = spec;
  try {
    if (spec.name == "min-error") {
      file.primal = build_min_error(need_ensemble(spec));
    } else if (spec.name == "bayes") {
      const auto& e = need_ensemble(spec);
      file.primal = build_bayes(e, costs_for(spec, e.size()));
    } else if (spec.name == "error-margin") {
      file.primal = build_error_margin(need_ensemble(spec), parameter(spec, "epsilon"));
    } else if (spec.name == "bounded-inconclusive") {
      file.primal = build_bounded_inconclusive(need_ensemble(spec), parameter(spec, "p"), parameter(spec, "q"));
    } else if (spec.name == "minimax-bayes") {
      const auto& e = need_ensemble(spec);
      file.kind = ProblemKind::Minimax;
      file.minimax = build_minimax_bayes(e.states(), costs_for(spec, e.size()));
    } else if (spec.name == "inconclusive-minimax") {
      file.kind = ProblemKind::Minimax;
      file.minimax = build_inconclusive_minimax(need_ensemble(spec).states(), parameter(spec, "p"));
    } else if (spec.name == "plural-minimax") {
      if (spec.sets.empty()) throw ParseError("template 'plural-minimax' needs 'sets'", "/template/sets");
      file.kind = ProblemKind::Minimax;
      file.minimax = build_plural_sets(spec.sets);
    } else {
      std::string known;
      for (const auto& n : template_names()) known += (known.empty() ? "" : ", ") + n;
      throw ParseError("unknown template '" + spec.name + "' (known: " + known + ")", "/template/name");
    }
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what(), "/template");
  }
  return file;
}

SolutionFile solution_from_json(const Json& j, int dim) {
  if (!j.is_object()) throw ParseError("expected an object", "");
  SolutionFile s;
  if (j.contains("povm")) {
    auto ops = operator_list(j["povm"], "/povm", dim);
    if (ops.empty()) throw ParseError("at least one outcome is required", "/povm");
    s.povm = Povm::unchecked(std::move(ops));
  }
  if (j.contains("dual")) {
    const Json& d = j["dual"];
    if (!d.is_object()) throw ParseError("expected an object", "/dual");
    if (d.contains("X")) s.X = operator_from_json(d["X"], "/dual/X", dim);
    if (d.contains("lambda")) s.lambda = numbers(d["lambda"], "/dual/lambda");
    if (d.contains("faces")) {
      const Json& f = require_array(d["faces"], "/dual/faces");
      for (std::size_t i = 0; i < f.size(); ++i) {
        const std::string p = child("/dual/faces", i);
        if (f[i].is_array() && f[i].empty()) {
          s.faces.emplace_back(dim, 0);
          continue;
        }
        s.faces.push_back(matrix_from_json(f[i], p));
        if (s.faces.back().rows() != dim) throw ParseError("face must have " + std::to_string(dim) + " rows", p);
      }
    }
  }
  if (j.contains("lambda") && !s.lambda) s.lambda = numbers(j["lambda"], "/lambda");
  if (j.contains("mu")) s.mu = numbers(j["mu"], "/mu");
  return s;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file", path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string digest(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

}  // namespace povmopt::cli
