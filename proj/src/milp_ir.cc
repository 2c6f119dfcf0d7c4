#include "ucflex/milp_ir.h"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "ucflex/errors.h"

namespace ucflex {

std::string_view ToString(VarKind kind) {
  switch (kind) {
    case VarKind::kContinuous:
      return "continuous";
    case VarKind::kBinary:
      return "binary";
    case VarKind::kInteger:
      return "integer";
  }
  return "?";
}

std::string_view ToString(Sense sense) {
  switch (sense) {
    case Sense::kLessEqual:
      return "<=";
    case Sense::kEqual:
      return "=";
    case Sense::kGreaterEqual:
      return ">=";
  }
  return "?";
}

void MilpModel::IndexNames() {
  index_.clear();
  index_.reserve(variables_.size());
  for (size_t i = 0; i < variables_.size(); ++i) {
    if (!index_.emplace(variables_[i].name, static_cast<int>(i)).second) {
      throw ModelError("duplicate variable name \"" + variables_[i].name +
                       "\"");
    }
  }
}

void MilpModel::Validate() const {
  for (const Variable& v : variables_) {
    if (v.name.empty()) throw ModelError("variable with empty name");
    if (v.name.find_first_of(" \t\n") != std::string::npos) {
      throw ModelError("variable name \"" + v.name + "\" contains whitespace");
    }
    if (!(v.lower <= v.upper)) {
      throw ModelError("variable \"" + v.name + "\" has lower > upper");
    }
    if (v.kind == VarKind::kBinary && (v.lower < 0.0 || v.upper > 1.0)) {
      throw ModelError("binary variable \"" + v.name +
                       "\" has bounds outside [0, 1]");
    }
  }
  std::unordered_set<std::string> row_names;
  for (const Row& row : rows_) {
    if (!row_names.insert(row.name).second) {
      throw ModelError("duplicate constraint name \"" + row.name + "\"");
    }
    std::unordered_set<int> seen;
    for (const Entry& e : row.terms) {
      if (e.var < 0 || e.var >= static_cast<int>(variables_.size())) {
        throw ModelError("constraint \"" + row.name +
                         "\" references an unknown variable");
      }
      if (!seen.insert(e.var).second) {
        throw ModelError("constraint \"" + row.name + "\" repeats variable \"" +
                         variables_[e.var].name + "\"");
      }
    }
  }
}

MilpModel MilpModel::Assemble(
    std::vector<Variable> variables,
    const std::vector<LinearConstraint>& constraints,
    const std::vector<std::pair<std::string, double>>& objective,
    ModelMetadata metadata) {
  MilpModel m;
  m.variables_ = std::move(variables);
  m.metadata_ = std::move(metadata);
  m.IndexNames();
  auto resolve = [&](const std::string& name, const std::string& where) {
    auto it = m.index_.find(name);
    if (it == m.index_.end()) {
      throw ModelError(where + " references unknown variable \"" + name +
                       "\"");
    }
    return it->second;
  };
  for (const LinearConstraint& c : constraints) {
    Row row{c.name, {}, c.sense, c.rhs, c.tag};
    for (const auto& [name, coef] : c.terms) {
      row.terms.push_back({resolve(name, "constraint \"" + c.name + "\""), coef});
    }
    m.rows_.push_back(std::move(row));
  }
  m.objective_.assign(m.variables_.size(), 0.0);
  for (const auto& [name, coef] : objective) {
    m.objective_[resolve(name, "objective")] += coef;
  }
  m.Validate();
  return m;
}

std::optional<int> MilpModel::FindVariable(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int MilpModel::VariableIndex(std::string_view name) const {
  if (auto i = FindVariable(name)) return *i;
  throw ModelError("unknown variable \"" + std::string(name) + "\"");
}

std::set<std::string> MilpModel::Tags() const {
  std::set<std::string> tags;
  for (const Row& row : rows_) tags.insert(row.tag);
  return tags;
}

int MilpModel::CountRows(std::string_view tag) const {
  return static_cast<int>(std::count_if(
      rows_.begin(), rows_.end(), [&](const Row& r) { return r.tag == tag; }));
}

MilpModel MilpModel::WithFixedValues(const Point& values) const {
  MilpModel m = *this;
  for (const auto& [name, value] : values) {
    Variable& v = m.variables_[VariableIndex(name)];
    v.lower = value;
    v.upper = value;
  }
  m.Validate();
  return m;
}

MilpModel MilpModel::WithObjective(
    const std::vector<std::pair<std::string, double>>& objective) const {
  MilpModel m = *this;
  m.objective_.assign(m.variables_.size(), 0.0);
  for (const auto& [name, coef] : objective) {
    m.objective_[VariableIndex(name)] += coef;
  }
  return m;
}

std::vector<double> MilpModel::ToDense(const Point& point) const {
  std::vector<double> values(variables_.size());
  for (size_t i = 0; i < variables_.size(); ++i) {
    auto it = point.find(variables_[i].name);
    if (it == point.end()) {
      throw ModelError("point has no value for variable \"" +
                       variables_[i].name + "\"");
    }
    values[i] = it->second;
  }
  return values;
}

Point MilpModel::ToPoint(std::span<const double> values) const {
  if (values.size() != variables_.size()) {
    throw ModelError("dense point size does not match the model");
  }
  Point p;
  p.reserve(values.size());
  for (size_t i = 0; i < values.size(); ++i) p[variables_[i].name] = values[i];
  return p;
}

int ModelBuilder::AddVariable(Variable v) {
  variables_.push_back(std::move(v));
  objective_.push_back(0.0);
  return static_cast<int>(variables_.size()) - 1;
}

void ModelBuilder::AddRow(std::string name, std::string tag,
                          std::vector<Entry> terms, Sense sense, double rhs) {
  std::vector<Entry> merged;
  merged.reserve(terms.size());
  for (const Entry& e : terms) {
    auto it = std::find_if(merged.begin(), merged.end(),
                           [&](const Entry& m) { return m.var == e.var; });
    if (it == merged.end()) {
      merged.push_back(e);
    } else {
      it->coef += e.coef;
    }
  }
  std::erase_if(merged, [](const Entry& e) { return e.coef == 0.0; });
  rows_.push_back(
      Row{std::move(name), std::move(merged), sense, rhs, std::move(tag)});
}

void ModelBuilder::AddObjective(int var, double coef) {
  objective_.at(var) += coef;
}

MilpModel ModelBuilder::Build(ModelMetadata metadata) && {
  MilpModel m;
  m.variables_ = std::move(variables_);
  m.rows_ = std::move(rows_);
  m.objective_ = std::move(objective_);
  m.metadata_ = std::move(metadata);
  m.IndexNames();
  m.Validate();
  return m;
}

Evaluation EvaluateDense(const MilpModel& model, std::span<const double> values,
                         double tol) {
  if (values.size() != model.variables().size()) {
    throw ModelError("dense point size does not match the model");
  }
  Evaluation ev;
  for (size_t i = 0; i < values.size(); ++i) {
    ev.objective += model.objective()[i] * values[i];
  }
  auto record = [&](std::string name, const std::string& tag, double amount) {
    ev.max_violation = std::max(ev.max_violation, amount);
    if (amount > tol) ev.violations.push_back({std::move(name), tag, amount});
  };
  for (const Row& row : model.rows()) {
    double lhs = 0.0;
    for (const Entry& e : row.terms) lhs += e.coef * values[e.var];
    double miss = 0.0;
    switch (row.sense) {
      case Sense::kLessEqual:
        miss = lhs - row.rhs;
        break;
      case Sense::kGreaterEqual:
        miss = row.rhs - lhs;
        break;
      case Sense::kEqual:
        miss = std::abs(lhs - row.rhs);
        break;
    }
    record(row.name, row.tag, std::max(0.0, miss));
  }
  for (size_t i = 0; i < values.size(); ++i) {
    const Variable& v = model.variables()[i];
    const double x = values[i];
    record("bound:" + v.name, "bound",
           std::max({0.0, v.lower - x, x - v.upper}));
    if (v.is_integral() && std::abs(x - std::round(x)) > tol) {
      ev.integrality.push_back({v.name, x});
    }
  }
  return ev;
}

Evaluation EvaluatePoint(const MilpModel& model, const Point& point,
                         double tol) {
  return EvaluateDense(model, model.ToDense(point), tol);
}

MilpModel RelaxIntegrality(const MilpModel& model) {
  MilpModel m = model;
  for (Variable& v : m.variables_) v.kind = VarKind::kContinuous;
  return m;
}

ModelStats ModelStatistics(const MilpModel& model) {
  ModelStats s;
  for (const Variable& v : model.variables()) {
    switch (v.kind) {
      case VarKind::kBinary:
        ++s.n_binary;
        break;
      case VarKind::kInteger:
        ++s.n_integer;
        break;
      case VarKind::kContinuous:
        ++s.n_continuous;
        break;
    }
  }
  s.n_constraints = model.num_rows();
  for (const Row& row : model.rows()) {
    s.n_nonzeros += static_cast<int>(row.terms.size());
  }
  return s;
}

}  // namespace ucflex
