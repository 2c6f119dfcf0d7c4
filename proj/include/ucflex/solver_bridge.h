#ifndef UCFLEX_SOLVER_BRIDGE_H_
#define UCFLEX_SOLVER_BRIDGE_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ucflex/milp_ir.h"

namespace ucflex {

// (a) "pairs": one `name value` per line plus optional `=obj= v`,
//     `=status= s` and `=gap= g` lines.
// (b) "columns": a header line naming two columns, then `name<sep>value`
//     rows where <sep> is a comma or whitespace.
enum class SolutionFormat { kPlainPairs, kColumns };

std::optional<SolutionFormat> ParseSolutionFormat(std::string_view text);

struct SolverConfig {
  // Placeholders: {model_path} {solution_path} {gap} {timelimit}.
  std::string command_template;
  double mip_gap = 1e-6;
  double time_limit_s = 600.0;
  // The child is killed at time_limit_s + kill_grace_s.
  double kill_grace_s = 10.0;
  std::filesystem::path work_dir;  // empty: system temp directory
  SolutionFormat format = SolutionFormat::kPlainPairs;
  // Write 8-character generated names (C0000001, R0000001) instead of the
  // model's own names.
  bool strict_fixed_mps = false;
  bool keep_files = false;

  // Throws ConfigError.
  void Validate() const;
};

// UCFLEX_SOLVER_CMD from the environment when set, else the bundled HiGHS
// driver.
std::string DefaultSolverCommand();
SolverConfig DefaultSolverConfig();

enum class SolveStatus { kOptimal, kFeasibleGap, kInfeasible, kTimeout, kError };

std::string_view ToString(SolveStatus status);

struct SolveOutcome {
  SolveStatus status = SolveStatus::kError;
  double objective = 0.0;  // recomputed from the point
  std::optional<double> solver_objective;
  Point point;
  std::optional<double> gap;
  double wall_seconds = 0.0;
  double max_violation = 0.0;
  std::string message;

  bool has_point() const {
    return status == SolveStatus::kOptimal ||
           status == SolveStatus::kFeasibleGap;
  }
};

// Fixed-format MPS (long names are written with free spacing unless
// strict_fixed is set). Output is a deterministic function of the model.
std::string WriteMpsString(const MilpModel& model, bool strict_fixed = false);
// Throws Error when the path cannot be written.
void WriteMps(const MilpModel& model, const std::filesystem::path& path,
              bool strict_fixed = false);

std::string StrictColumnName(int index);
std::string StrictRowName(int index);

struct ProcessResult {
  int exit_code = -1;
  bool timed_out = false;
  std::string stdout_text;
  std::string stderr_text;
  double wall_seconds = 0.0;
};

std::string ShellQuote(std::string_view text);
std::string ExpandCommandTemplate(const SolverConfig& cfg,
                                  const std::filesystem::path& model_path,
                                  const std::filesystem::path& solution_path);

// Runs the expanded template through /bin/sh in its own process group.
// Throws SolverError only when the child cannot be spawned at all.
ProcessResult InvokeSolver(const SolverConfig& cfg,
                           const std::filesystem::path& model_path,
                           const std::filesystem::path& solution_path);

struct ParsedSolution {
  Point point;  // every model variable; missing ones default to 0
  double objective = 0.0;  // recomputed with EvaluatePoint
  std::optional<double> reported_objective;
  std::optional<SolveStatus> status;
  std::optional<double> gap;
  bool objective_consistent = true;  // within 1e-5 relative of reported
  std::vector<std::string> warnings;
};

// Throws ParseError carrying the 1-based line number of a bad line.
ParsedSolution ParseSolution(std::string_view text, SolutionFormat format,
                             const MilpModel& model, bool strict_names = false);

// write_mps -> invoke -> parse -> evaluate. With `relaxed`, integrality is
// dropped first. A returned point violating any row by more than 1e-6
// downgrades the outcome to kError.
SolveOutcome SolveModel(const MilpModel& model, const SolverConfig& cfg,
                        bool relaxed = false);

}  // namespace ucflex

#endif  // UCFLEX_SOLVER_BRIDGE_H_
