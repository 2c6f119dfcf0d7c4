#ifndef UCFLEX_MILP_IR_H_
#define UCFLEX_MILP_IR_H_

#include <limits>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ucflex {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Absolute tolerance used for feasibility and integrality checks.
inline constexpr double kFeasibilityTol = 1e-6;

enum class VarKind { kContinuous, kBinary, kInteger };
enum class Sense { kLessEqual, kEqual, kGreaterEqual };

std::string_view ToString(VarKind kind);
std::string_view ToString(Sense sense);

struct Variable {
  std::string name;
  VarKind kind = VarKind::kContinuous;
  double lower = 0.0;
  double upper = kInf;
  std::string group;  // "u", "p_tilde", "shed", ...

  bool is_integral() const { return kind != VarKind::kContinuous; }
};

// Name-based constraint used to assemble models from outside the builder.
struct LinearConstraint {
  std::string name;
  std::vector<std::pair<std::string, double>> terms;
  Sense sense = Sense::kLessEqual;
  double rhs = 0.0;
  std::string tag;  // equation family, e.g. "eq04"
};

struct ModelMetadata {
  std::string variant;
  std::string instance_id;
};

struct Entry {
  int var = 0;
  double coef = 0.0;
};

struct Row {
  std::string name;
  std::vector<Entry> terms;
  Sense sense = Sense::kLessEqual;
  double rhs = 0.0;
  std::string tag;
};

// Variable assignment keyed by name.
using Point = std::unordered_map<std::string, double>;

class MilpModel;
MilpModel RelaxIntegrality(const MilpModel& model);

// Immutable, validated mixed-integer linear program (minimization).
class MilpModel {
 public:
  // Validates names and references. Duplicate objective entries are summed.
  // Throws ModelError.
  static MilpModel Assemble(
      std::vector<Variable> variables,
      const std::vector<LinearConstraint>& constraints,
      const std::vector<std::pair<std::string, double>>& objective,
      ModelMetadata metadata);

  const std::vector<Variable>& variables() const { return variables_; }
  const std::vector<Row>& rows() const { return rows_; }
  // Dense objective, one coefficient per variable.
  const std::vector<double>& objective() const { return objective_; }
  const ModelMetadata& metadata() const { return metadata_; }

  int num_variables() const { return static_cast<int>(variables_.size()); }
  int num_rows() const { return static_cast<int>(rows_.size()); }

  std::optional<int> FindVariable(std::string_view name) const;
  // Throws ModelError when absent.
  int VariableIndex(std::string_view name) const;

  std::set<std::string> Tags() const;
  int CountRows(std::string_view tag) const;

  // Copy with bounds of the named variables pinned to the given values.
  MilpModel WithFixedValues(const Point& values) const;
  MilpModel WithObjective(
      const std::vector<std::pair<std::string, double>>& objective) const;

  // Dense <-> named point conversion. ToDense throws ModelError naming the
  // first unassigned variable.
  std::vector<double> ToDense(const Point& point) const;
  Point ToPoint(std::span<const double> values) const;

 private:
  friend class ModelBuilder;
  friend MilpModel RelaxIntegrality(const MilpModel& model);
  MilpModel() = default;
  void Validate() const;
  void IndexNames();

  std::vector<Variable> variables_;
  std::vector<Row> rows_;
  std::vector<double> objective_;
  ModelMetadata metadata_;
  std::unordered_map<std::string, int> index_;
};

// Index-based incremental construction used by the formulation builders.
class ModelBuilder {
 public:
  int AddVariable(Variable v);
  // Terms referring to the same variable are merged; zero coefficients are
  // dropped. Constants on the left-hand side must already be moved to rhs.
  void AddRow(std::string name, std::string tag, std::vector<Entry> terms,
              Sense sense, double rhs);
  void AddObjective(int var, double coef);

  const Variable& variable(int index) const { return variables_[index]; }
  int num_variables() const { return static_cast<int>(variables_.size()); }

  MilpModel Build(ModelMetadata metadata) &&;

 private:
  std::vector<Variable> variables_;
  std::vector<Row> rows_;
  std::vector<double> objective_;
};

struct ConstraintViolation {
  std::string name;  // row name, or "bound:<var>" for variable bounds
  std::string tag;
  double amount = 0.0;  // how far the row misses its sense
};

struct IntegralityViolation {
  std::string name;
  double value = 0.0;
};

struct Evaluation {
  double objective = 0.0;
  std::vector<ConstraintViolation> violations;
  std::vector<IntegralityViolation> integrality;
  double max_violation = 0.0;

  bool feasible() const { return violations.empty() && integrality.empty(); }
};

// Throws ModelError if the point leaves a variable unassigned.
Evaluation EvaluatePoint(const MilpModel& model, const Point& point,
                         double tol = kFeasibilityTol);
Evaluation EvaluateDense(const MilpModel& model, std::span<const double> values,
                         double tol = kFeasibilityTol);

// Every binary/integer variable re-marked continuous; bounds kept.
MilpModel RelaxIntegrality(const MilpModel& model);

struct ModelStats {
  int n_binary = 0;
  int n_integer = 0;
  int n_continuous = 0;
  int n_constraints = 0;
  int n_nonzeros = 0;

  friend bool operator==(const ModelStats&, const ModelStats&) = default;
};

ModelStats ModelStatistics(const MilpModel& model);

}  // namespace ucflex

#endif  // UCFLEX_MILP_IR_H_
