#include "ucflex/harness.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <thread>

#include "ucflex/errors.h"
#include "ucflex/schedule.h"

namespace ucflex {

SystemInstance ResolveInstance(const InstanceRef& ref) {
  struct Visitor {
    SystemInstance operator()(const std::filesystem::path& p) const {
      return LoadInstance(p.string());
    }
    SystemInstance operator()(const GeneratorConfig& cfg) const {
      return GenerateRandomInstance(cfg);
    }
    SystemInstance operator()(const SystemInstance& inst) const {
      RequireValid(inst);
      return inst;
    }
  };
  return std::visit(Visitor{}, ref.source);
}

SystemInstance WithReserveFraction(const SystemInstance& instance,
                                   double fraction) {
  SystemInstance out = instance;
  for (int t = 0; t < out.horizon; ++t) {
    out.reserve_up_req[t] = fraction * out.demand[t];
    out.reserve_down_req[t] = fraction * out.demand[t];
  }
  return out;
}

void ExperimentPlan::Validate() const {
  if (instances.empty()) throw ConfigError("plan has no instances");
  if (variants.empty()) throw ConfigError("plan has no variants");
  for (double r : reserve_levels) {
    if (!(r >= 0.0)) throw ConfigError("reserve levels must be >= 0");
  }
  if (repetitions < 1) throw ConfigError("repetitions must be >= 1");
  if (workers < 1) throw ConfigError("workers must be >= 1");
  if (!(iuc_noise >= 0.0)) throw ConfigError("IUC noise must be >= 0");
  solver.Validate();
}

bool ExperimentReport::all_ok() const {
  return std::all_of(rows.begin(), rows.end(),
                     [](const ReportRow& r) { return r.ok; });
}

const ReportRow* ExperimentReport::Find(std::string_view instance,
                                        std::optional<double> reserve,
                                        Variant variant, int repetition) const {
  for (const ReportRow& r : rows) {
    if (r.instance == instance && r.reserve == reserve &&
        r.variant == variant && r.repetition == repetition) {
      return &r;
    }
  }
  return nullptr;
}

namespace {

std::string DescribeIssue(const FeasibilityIssue& f) {
  std::string s = f.tag;
  if (!f.cluster.empty()) s += " " + f.cluster;
  if (f.g > 0) s += " g" + std::to_string(f.g);
  if (f.t > 0) s += " t" + std::to_string(f.t);
  char buf[32];
  std::snprintf(buf, sizeof(buf), " by %.3g", f.amount);
  return s + buf;
}

struct Cell {
  size_t instance;
  std::optional<double> reserve;
  int repetition;
  Variant variant;
};

ReportRow RunCell(const std::string& name, const SystemInstance& base,
                  const Cell& cell, const ExperimentPlan& plan) {
  ReportRow row;
  row.instance = name;
  row.reserve = cell.reserve;
  row.variant = cell.variant;
  row.repetition = cell.repetition;
  try {
    const SystemInstance inst =
        cell.reserve ? WithReserveFraction(base, *cell.reserve) : base;
    FormulationOptions fo;
    fo.instance_id = name;
    if (cell.variant == Variant::kIUC) {
      fo.iuc_cost_noise = plan.iuc_noise;
      fo.noise_seed = plan.noise_seed;
    }
    const MilpModel model = BuildFormulation(inst, cell.variant, fo);
    row.stats = ModelStatistics(model);
    const SolveOutcome out = SolveModel(model, plan.solver);
    row.status = out.status;
    row.runtime_s = out.wall_seconds;
    row.gap = out.gap;
    row.message = out.message;
    if (!out.has_point()) return row;
    row.objective = out.objective;
    row.solver_objective = out.solver_objective;
    row.max_violation = out.max_violation;
    if (out.solver_objective) {
      const double scale = std::max(
          {1.0, std::abs(out.objective), std::abs(*out.solver_objective)});
      row.objective_consistent =
          std::abs(out.objective - *out.solver_objective) <= 1e-5 * scale;
    }
    // The re-check runs on the instance the model was built from; with IUC
    // noise only costs differ, which the checker does not look at.
    const Schedule sched = ExtractSchedule(inst, cell.variant, out.point);
    for (const auto& f : CheckScheduleFeasibility(inst, cell.variant, sched)) {
      row.issues.push_back(DescribeIssue(f));
    }
    if (IsSlotResolved(cell.variant)) {
      for (const auto& f :
           CheckScheduleFeasibility(inst, Variant::kCCUC, sched)) {
        row.issues.push_back("projection " + DescribeIssue(f));
      }
    }
    row.ok = row.issues.empty() && row.objective_consistent;
    if (!row.issues.empty() && row.message.empty()) {
      row.message = "schedule re-check failed: " + row.issues.front();
    }
  } catch (const std::exception& e) {
    row.status = SolveStatus::kError;
    row.message = e.what();
  }
  return row;
}

void RunCells(const std::vector<size_t>& order, const std::vector<Cell>& cells,
              const std::vector<std::string>& names,
              const std::vector<SystemInstance>& instances,
              const ExperimentPlan& plan, std::vector<ReportRow>& rows) {
  std::atomic<size_t> next{0};
  auto work = [&]() {
    for (size_t i = next++; i < order.size(); i = next++) {
      const Cell& c = cells[order[i]];
      rows[order[i]] = RunCell(names[c.instance], instances[c.instance], c, plan);
    }
  };
  const int workers =
      std::min<int>(plan.workers, std::max<size_t>(1, order.size()));
  if (workers <= 1) {
    work();
    return;
  }
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& th : pool) th.join();
}

}  // namespace

ExperimentReport RunExperiment(const ExperimentPlan& plan) {
  plan.Validate();
  std::vector<std::string> names;
  std::vector<SystemInstance> instances;
  for (size_t i = 0; i < plan.instances.size(); ++i) {
    const InstanceRef& ref = plan.instances[i];
    names.push_back(ref.name.empty() ? "instance" + std::to_string(i + 1)
                                     : ref.name);
    instances.push_back(ResolveInstance(ref));
  }

  // IUC first within each group, then the other variants in plan order.
  std::vector<Variant> variants;
  if (std::find(plan.variants.begin(), plan.variants.end(), Variant::kIUC) !=
      plan.variants.end()) {
    variants.push_back(Variant::kIUC);
  }
  for (Variant v : plan.variants) {
    if (v != Variant::kIUC &&
        std::find(variants.begin(), variants.end(), v) == variants.end()) {
      variants.push_back(v);
    }
  }
  std::vector<std::optional<double>> reserves;
  if (plan.reserve_levels.empty()) {
    reserves.push_back(std::nullopt);
  } else {
    for (double r : plan.reserve_levels) reserves.push_back(r);
  }

  std::vector<Cell> cells;
  for (size_t i = 0; i < instances.size(); ++i) {
    for (const auto& r : reserves) {
      for (int rep = 0; rep < plan.repetitions; ++rep) {
        for (Variant v : variants) cells.push_back({i, r, rep, v});
      }
    }
  }
  std::vector<size_t> anchors, rest;
  for (size_t k = 0; k < cells.size(); ++k) {
    (cells[k].variant == Variant::kIUC ? anchors : rest).push_back(k);
  }
  ExperimentReport report;
  report.rows.resize(cells.size());
  RunCells(anchors, cells, names, instances, plan, report.rows);
  RunCells(rest, cells, names, instances, plan, report.rows);

  for (ReportRow& row : report.rows) {
    if (!row.ok) continue;
    const ReportRow* iuc =
        report.Find(row.instance, row.reserve, Variant::kIUC, row.repetition);
    if (!iuc || !iuc->ok) continue;
    if (std::abs(iuc->objective) > 1e-9) {
      row.error_vs_iuc = (iuc->objective - row.objective) / iuc->objective;
    } else if (std::abs(row.objective) <= 1e-9) {
      row.error_vs_iuc = 0.0;
    }
  }
  return report;
}

std::optional<ReportFormat> ParseReportFormat(std::string_view text) {
  if (text == "csv") return ReportFormat::kCsv;
  if (text == "markdown" || text == "md") return ReportFormat::kMarkdown;
  return std::nullopt;
}

std::string FormatPercent(double fraction) {
  char buf[64];
  const double pct = fraction * 100.0;
  const double mag = std::abs(pct);
  // Two decimals, three for tiny nonzero errors.
  const int digits = (mag < 0.0005 || mag >= 0.01) ? 2 : 3;
  std::snprintf(buf, sizeof(buf), "%.*f%%", digits, pct);
  std::string s = buf;
  if (s == "-0.00%" || s == "-0.000%") s.erase(0, 1);
  return s;
}

namespace {

std::string Num(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

std::string Opt(const std::optional<double>& v) {
  return v ? Num(*v) : std::string();
}

std::string ReserveLabel(const std::optional<double>& r) {
  return r ? FormatPercent(*r) : std::string("instance");
}

}  // namespace

std::string EmitReport(const ExperimentReport& report, ReportFormat format) {
  std::ostringstream os;
  if (format == ReportFormat::kCsv) {
    os << "instance,reserve,variant,objective,error_vs_iuc,runtime_s,gap,"
          "n_binary,n_integer,n_continuous,n_constraints,n_nonzeros\n";
    for (const ReportRow& r : report.rows) {
      os << r.instance << ',' << Opt(r.reserve) << ',' << ToString(r.variant)
         << ',' << (r.ok ? Num(r.objective) : std::string()) << ','
         << Opt(r.error_vs_iuc) << ',' << Num(r.runtime_s) << ','
         << Opt(r.gap) << ',' << r.stats.n_binary << ',' << r.stats.n_integer
         << ',' << r.stats.n_continuous << ',' << r.stats.n_constraints << ','
         << r.stats.n_nonzeros << '\n';
    }
    return os.str();
  }

  // Markdown: one table per instance, variants as columns.
  std::vector<std::string> instances;
  std::vector<Variant> variants;
  for (const ReportRow& r : report.rows) {
    if (std::find(instances.begin(), instances.end(), r.instance) ==
        instances.end()) {
      instances.push_back(r.instance);
    }
    if (std::find(variants.begin(), variants.end(), r.variant) ==
        variants.end()) {
      variants.push_back(r.variant);
    }
  }
  for (const std::string& name : instances) {
    os << "### " << name << "\n\n| Reserve | Result |";
    for (Variant v : variants) os << ' ' << ToString(v) << " |";
    os << "\n|---|---|";
    for (size_t i = 0; i < variants.size(); ++i) os << "---|";
    os << "\n";
    std::vector<std::pair<std::optional<double>, int>> groups;
    for (const ReportRow& r : report.rows) {
      if (r.instance != name) continue;
      const std::pair<std::optional<double>, int> key{r.reserve, r.repetition};
      if (std::find(groups.begin(), groups.end(), key) == groups.end()) {
        groups.push_back(key);
      }
    }
    for (const auto& [reserve, rep] : groups) {
      std::string label = ReserveLabel(reserve);
      if (rep > 0) label += " (rep " + std::to_string(rep + 1) + ")";
      for (int line = 0; line < 3; ++line) {
        static const char* kNames[] = {"O.f.", "O.f. Error", "Rtime [s]"};
        os << "| " << (line == 0 ? label : "") << " | " << kNames[line] << " |";
        for (Variant v : variants) {
          const ReportRow* r = report.Find(name, reserve, v, rep);
          std::string cell = "n/a";
          if (r && r->ok) {
            char buf[64];
            if (line == 0) {
              std::snprintf(buf, sizeof(buf), "%.2f", r->objective);
              cell = buf;
            } else if (line == 1) {
              cell = v == Variant::kIUC ? "-"
                     : r->error_vs_iuc  ? FormatPercent(*r->error_vs_iuc)
                                        : "n/a";
            } else {
              std::snprintf(buf, sizeof(buf), "%.2f", r->runtime_s);
              cell = buf;
            }
          } else if (r) {
            cell = std::string(ToString(r->status));
            if (r->status == SolveStatus::kOptimal) cell = "failed";
          }
          os << ' ' << cell << " |";
        }
        os << "\n";
      }
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace ucflex
