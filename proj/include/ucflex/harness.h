#ifndef UCFLEX_HARNESS_H_
#define UCFLEX_HARNESS_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ucflex/formulation.h"
#include "ucflex/instance.h"
#include "ucflex/milp_ir.h"
#include "ucflex/solver_bridge.h"

namespace ucflex {

struct InstanceRef {
  std::string name;
  std::variant<std::filesystem::path, GeneratorConfig, SystemInstance> source;
};

// Loads, generates or copies the referenced instance.
SystemInstance ResolveInstance(const InstanceRef& ref);

// req_t = fraction * demand_t for both reserve directions.
SystemInstance WithReserveFraction(const SystemInstance& instance,
                                   double fraction);

struct ExperimentPlan {
  std::vector<InstanceRef> instances;
  std::vector<Variant> variants;
  // Empty: keep each instance's own reserve series.
  std::vector<double> reserve_levels;
  SolverConfig solver;
  int repetitions = 1;
  int workers = 1;
  double iuc_noise = 0.0;  // half-width, 0.01 for +-1%
  std::uint64_t noise_seed = 0;

  // Throws ConfigError.
  void Validate() const;
};

struct ReportRow {
  std::string instance;
  std::optional<double> reserve;  // empty when the instance series was used
  Variant variant = Variant::kIUC;
  int repetition = 0;
  SolveStatus status = SolveStatus::kError;
  bool ok = false;  // solved and passed the schedule re-check
  double objective = 0.0;
  std::optional<double> solver_objective;
  std::optional<double> error_vs_iuc;
  double runtime_s = 0.0;
  std::optional<double> gap;
  ModelStats stats;
  double max_violation = 0.0;
  bool objective_consistent = true;
  // Schedule re-check findings; for slot-resolved variants this includes
  // the cluster-level (eq07, eq09, eq10) projection check.
  std::vector<std::string> issues;
  std::string message;
};

struct ExperimentReport {
  std::vector<ReportRow> rows;

  bool all_ok() const;
  // Row lookup; nullptr when absent.
  const ReportRow* Find(std::string_view instance,
                        std::optional<double> reserve, Variant variant,
                        int repetition = 0) const;
};

// IUC cells run first so every other cell can be scored against them. Rows
// come out in plan order (instance, reserve, repetition, variant) whatever
// the worker count. Solver failures are recorded per row.
ExperimentReport RunExperiment(const ExperimentPlan& plan);

enum class ReportFormat { kCsv, kMarkdown };

std::optional<ReportFormat> ParseReportFormat(std::string_view text);

std::string EmitReport(const ExperimentReport& report, ReportFormat format);

// 0.0072 -> "0.72%".
std::string FormatPercent(double fraction);

}  // namespace ucflex

#endif  // UCFLEX_HARNESS_H_
