#ifndef UCFLEX_ORACLE_H_
#define UCFLEX_ORACLE_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ucflex/formulation.h"
#include "ucflex/instance.h"
#include "ucflex/milp_ir.h"
#include "ucflex/solver_bridge.h"

namespace ucflex {

inline constexpr int kOracleMaxUnits = 4;
inline constexpr int kOracleMaxHorizon = 8;

// On/off matrix over the physical units, in the order of
// ModelClusters(instance, Variant::kIUC).
struct CommitmentPattern {
  std::vector<std::string> labels;      // "c1u1", ...
  std::vector<std::vector<int>> on;     // [unit][t], t 0-based
  std::vector<std::vector<int>> start;  // derived y
  std::vector<std::vector<int>> stop;   // derived z
  // Number of raw patterns this representative stands for under symmetry
  // pruning; 1 without pruning.
  std::uint64_t multiplicity = 1;
};

// Min up/down check for one unit's sequence, with the truncated windows used
// near the start of the horizon.
bool UnitSequenceFeasible(const std::vector<int>& on, bool initial_on,
                          int min_up, int min_down);

// Visits every feasible pattern in a fixed order; returning false from the
// visitor stops the enumeration. With `prune`, units of the same cluster
// that share their initial state are interchangeable and only one
// representative per multiset of schedules is visited. Throws SizeError
// beyond kOracleMaxUnits units or kOracleMaxHorizon periods.
void EnumerateCommitmentPatterns(
    const SystemInstance& instance, bool prune,
    const std::function<bool(const CommitmentPattern&)>& visit);

std::vector<CommitmentPattern> ListCommitmentPatterns(
    const SystemInstance& instance, bool prune = true);

struct OracleOptions {
  bool prune = true;
  int workers = 1;
  FormulationOptions formulation;  // pruning is disabled when noise is set
};

struct OracleResult {
  double objective = 0.0;
  CommitmentPattern best_pattern;
  Point best_dispatch;
  int patterns = 0;
  std::uint64_t raw_patterns = 0;  // sum of multiplicities
  // Patterns whose dispatch LP has no solution (ramp or capability limits
  // that the penalty slacks cannot absorb).
  int infeasible_patterns = 0;
  // Worst IR violation over all dispatch LP points, and whether every LP
  // objective matched its solver-reported value.
  double max_violation = 0.0;
  bool objectives_consistent = true;
  double wall_seconds = 0.0;
};

// Exact IUC optimum: every pattern fixes u, y, z of the IUC model and the
// remaining dispatch LP is solved through the solver bridge. Infeasible
// dispatch LPs drop their pattern. Throws SizeError from the guard and
// SolverError when a dispatch LP fails otherwise or no pattern is feasible.
OracleResult BruteForceOptimum(const SystemInstance& instance,
                               const SolverConfig& solver,
                               const OracleOptions& options = {});

}  // namespace ucflex

#endif  // UCFLEX_ORACLE_H_
