#include "ucflex/oracle.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <mutex>
#include <thread>
#include <tuple>

#include "ucflex/errors.h"

namespace ucflex {

bool UnitSequenceFeasible(const std::vector<int>& on, bool initial_on,
                          int min_up, int min_down) {
  const int T = static_cast<int>(on.size());
  std::vector<int> y(T), z(T);
  int prev = initial_on ? 1 : 0;
  for (int t = 0; t < T; ++t) {
    y[t] = on[t] > prev ? 1 : 0;
    z[t] = on[t] < prev ? 1 : 0;
    prev = on[t];
  }
  for (int t = 0; t < T; ++t) {
    int starts = 0, stops = 0;
    for (int i = std::max(0, t - min_up + 1); i <= t; ++i) starts += y[i];
    for (int i = std::max(0, t - min_down + 1); i <= t; ++i) stops += z[i];
    if (starts > on[t] || stops > 1 - on[t]) return false;
  }
  return true;
}

namespace {

struct UnitInfo {
  std::string label;
  const ClusterSpec* spec;
  bool initial_on;
  int group;
};

std::vector<std::vector<int>> FeasibleSequences(int horizon, bool initial_on,
                                                int min_up, int min_down) {
  std::vector<std::vector<int>> out;
  for (unsigned mask = 0; mask < (1u << horizon); ++mask) {
    std::vector<int> seq(horizon);
    for (int t = 0; t < horizon; ++t) seq[t] = (mask >> t) & 1u;
    if (UnitSequenceFeasible(seq, initial_on, min_up, min_down)) {
      out.push_back(std::move(seq));
    }
  }
  return out;
}

std::uint64_t Factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

}  // namespace

void EnumerateCommitmentPatterns(
    const SystemInstance& instance, bool prune,
    const std::function<bool(const CommitmentPattern&)>& visit) {
  const int T = instance.horizon;
  if (instance.total_units() > kOracleMaxUnits || T > kOracleMaxHorizon) {
    throw SizeError("oracle guard: at most " + std::to_string(kOracleMaxUnits) +
                    " units and " + std::to_string(kOracleMaxHorizon) +
                    " periods, got " + std::to_string(instance.total_units()) +
                    " units and " + std::to_string(T) + " periods");
  }
  const auto clusters = ModelClusters(instance, Variant::kIUC);

  // Interchangeable units share the cluster and the initial state.
  std::vector<UnitInfo> units;
  std::map<std::tuple<int, int, double>, int> group_of;
  std::vector<std::vector<int>> groups;  // unit indices per group
  for (const ModelCluster& mc : clusters) {
    int group = static_cast<int>(groups.size());
    if (prune) {
      const auto key = std::make_tuple(mc.source, mc.spec.init_online,
                                       mc.spec.init_power_above_min);
      auto [it, fresh] = group_of.emplace(key, group);
      group = it->second;
      if (fresh) groups.emplace_back();
    } else {
      groups.emplace_back();
    }
    groups[group].push_back(static_cast<int>(units.size()));
    units.push_back({mc.label, &instance.clusters[mc.source],
                     mc.spec.init_online > 0, group});
  }

  std::vector<std::vector<std::vector<int>>> sequences(groups.size());
  for (size_t k = 0; k < groups.size(); ++k) {
    const UnitInfo& u = units[groups[k].front()];
    sequences[k] = FeasibleSequences(T, u.initial_on, u.spec->min_up,
                                     u.spec->min_down);
  }

  CommitmentPattern pattern;
  for (const UnitInfo& u : units) pattern.labels.push_back(u.label);
  pattern.on.assign(units.size(), {});

  // choice[k] holds a nondecreasing index tuple into sequences[k].
  std::vector<std::vector<int>> choice(groups.size());
  bool stop = false;

  auto emit = [&]() {
    std::uint64_t mult = 1;
    for (size_t k = 0; k < groups.size(); ++k) {
      std::map<int, int> counts;
      for (size_t m = 0; m < groups[k].size(); ++m) {
        pattern.on[groups[k][m]] = sequences[k][choice[k][m]];
        ++counts[choice[k][m]];
      }
      std::uint64_t f = Factorial(static_cast<int>(groups[k].size()));
      for (const auto& [idx, n] : counts) f /= Factorial(n);
      mult *= f;
    }
    pattern.multiplicity = mult;
    pattern.start.assign(units.size(), std::vector<int>(T, 0));
    pattern.stop.assign(units.size(), std::vector<int>(T, 0));
    for (size_t i = 0; i < units.size(); ++i) {
      int prev = units[i].initial_on ? 1 : 0;
      for (int t = 0; t < T; ++t) {
        pattern.start[i][t] = pattern.on[i][t] > prev ? 1 : 0;
        pattern.stop[i][t] = pattern.on[i][t] < prev ? 1 : 0;
        prev = pattern.on[i][t];
      }
    }
    if (!visit(pattern)) stop = true;
  };

  std::function<void(size_t, size_t, int)> recurse = [&](size_t k, size_t m,
                                                         int from) {
    if (stop) return;
    if (k == groups.size()) {
      emit();
      return;
    }
    if (m == groups[k].size()) {
      recurse(k + 1, 0, 0);
      return;
    }
    for (int s = from; s < static_cast<int>(sequences[k].size()); ++s) {
      choice[k].resize(m + 1);
      choice[k][m] = s;
      recurse(k, m + 1, s);
      if (stop) return;
    }
  };
  recurse(0, 0, 0);
}

std::vector<CommitmentPattern> ListCommitmentPatterns(
    const SystemInstance& instance, bool prune) {
  std::vector<CommitmentPattern> out;
  EnumerateCommitmentPatterns(instance, prune,
                              [&](const CommitmentPattern& p) {
                                out.push_back(p);
                                return true;
                              });
  return out;
}

OracleResult BruteForceOptimum(const SystemInstance& instance,
                               const SolverConfig& solver,
                               const OracleOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  RequireValid(instance);
  const bool prune = options.prune && options.formulation.iuc_cost_noise == 0.0;
  const auto patterns = ListCommitmentPatterns(instance, prune);
  const MilpModel iuc =
      BuildFormulation(instance, Variant::kIUC, options.formulation);

  struct Slot {
    bool done = false;
    bool infeasible = false;
    double objective = 0.0;
    Point point;
    double max_violation = 0.0;
    bool consistent = true;
    std::string error;
  };
  std::vector<Slot> results(patterns.size());
  std::atomic<size_t> next{0};

  auto work = [&]() {
    for (size_t i = next++; i < patterns.size(); i = next++) {
      const CommitmentPattern& p = patterns[i];
      Point fixed;
      for (size_t k = 0; k < p.labels.size(); ++k) {
        for (int t = 0; t < instance.horizon; ++t) {
          fixed[ClusterVarName("u", p.labels[k], t + 1)] = p.on[k][t];
          fixed[ClusterVarName("y", p.labels[k], t + 1)] = p.start[k][t];
          fixed[ClusterVarName("z", p.labels[k], t + 1)] = p.stop[k][t];
        }
      }
      Slot& r = results[i];
      try {
        const SolveOutcome out =
            SolveModel(iuc.WithFixedValues(fixed), solver, /*relaxed=*/true);
        if (out.status == SolveStatus::kInfeasible) {
          r.infeasible = true;
          continue;
        }
        if (out.status != SolveStatus::kOptimal) {
          r.error = "dispatch LP " + std::to_string(i) + ": " +
                    std::string(ToString(out.status)) + " " + out.message;
          continue;
        }
        r.objective = out.objective;
        r.point = out.point;
        r.max_violation = out.max_violation;
        if (out.solver_objective) {
          const double scale = std::max(
              {1.0, std::abs(out.objective), std::abs(*out.solver_objective)});
          r.consistent =
              std::abs(out.objective - *out.solver_objective) <= 1e-5 * scale;
        }
        r.done = true;
      } catch (const std::exception& e) {
        r.error = e.what();
      }
    }
  };
  const int workers = std::max(1, options.workers);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  OracleResult best;
  best.patterns = static_cast<int>(patterns.size());
  bool found = false;
  for (size_t i = 0; i < patterns.size(); ++i) {
    const Slot& r = results[i];
    best.raw_patterns += patterns[i].multiplicity;
    if (r.infeasible) {
      ++best.infeasible_patterns;
      continue;
    }
    if (!r.done) throw SolverError(r.error);
    best.max_violation = std::max(best.max_violation, r.max_violation);
    best.objectives_consistent = best.objectives_consistent && r.consistent;
    if (!found || r.objective < best.objective) {
      found = true;
      best.objective = r.objective;
      best.best_pattern = patterns[i];
      best.best_dispatch = r.point;
    }
  }
  if (!found) throw SolverError("every commitment pattern is infeasible");
  best.wall_seconds = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  return best;
}

}  // namespace ucflex
