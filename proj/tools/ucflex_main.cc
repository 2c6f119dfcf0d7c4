// ucflex command line: gen, solve, compare, oracle, check.
//
// Exit codes: 0 success, 1 usage error, 2 solver error, 3 validation or
// feasibility failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ucflex/errors.h"
#include "ucflex/formulation.h"
#include "ucflex/harness.h"
#include "ucflex/instance.h"
#include "ucflex/oracle.h"
#include "ucflex/schedule.h"
#include "ucflex/solver_bridge.h"

namespace {

using namespace ucflex;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitSolver = 2;
constexpr int kExitInvalid = 3;

struct SolverFlags {
  std::string cmd;
  double gap = 1e-6;
  double time_limit = 600.0;
  std::string format = "pairs";
  bool strict_mps = false;
  bool keep_files = false;
  std::string work_dir;

  void Register(CLI::App* app) {
    app->add_option("--solver-cmd", cmd,
                    "Command template with {model_path} {solution_path} "
                    "{gap} {timelimit} (default: $UCFLEX_SOLVER_CMD or the "
                    "bundled HiGHS driver)");
    app->add_option("--mip-gap", gap, "Relative MIP gap")->capture_default_str();
    app->add_option("--time-limit", time_limit, "Seconds")->capture_default_str();
    app->add_option("--solution-format", format, "pairs | columns")
        ->capture_default_str();
    app->add_flag("--strict-mps", strict_mps, "8-character MPS names");
    app->add_flag("--keep-files", keep_files, "Keep the scratch directory");
    app->add_option("--work-dir", work_dir, "Scratch directory root");
  }

  SolverConfig Config() const {
    SolverConfig cfg = DefaultSolverConfig();
    if (!cmd.empty()) cfg.command_template = cmd;
    cfg.mip_gap = gap;
    cfg.time_limit_s = time_limit;
    auto fmt = ParseSolutionFormat(format);
    if (!fmt) throw ConfigError("unknown solution format \"" + format + "\"");
    cfg.format = *fmt;
    cfg.strict_fixed_mps = strict_mps;
    cfg.keep_files = keep_files;
    cfg.work_dir = work_dir;
    cfg.Validate();
    return cfg;
  }
};

Variant RequireVariant(const std::string& text) {
  auto v = ParseVariant(text);
  if (!v) throw ConfigError("unknown variant \"" + text + "\"");
  return *v;
}

std::vector<std::string> SplitList(const std::vector<std::string>& items) {
  std::vector<std::string> out;
  for (const std::string& item : items) {
    std::stringstream ss(item);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (!part.empty()) out.push_back(part);
    }
  }
  return out;
}

// "0.05" or "5%".
double ParseFraction(const std::string& text) {
  try {
    size_t used = 0;
    double v = std::stod(text, &used);
    if (used < text.size() && text.substr(used) == "%") return v / 100.0;
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError("bad reserve level \"" + text + "\"");
}

void WriteText(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

std::string ReadText(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string SolutionText(const MilpModel& model, const SolveOutcome& out) {
  std::ostringstream os;
  os.precision(17);
  os << "=status= " << ToString(out.status) << "\n";
  if (!out.has_point()) return os.str();
  os << "=obj= " << out.objective << "\n";
  if (out.gap) os << "=gap= " << *out.gap << "\n";
  for (const Variable& v : model.variables()) {
    os << v.name << ' ' << out.point.at(v.name) << "\n";
  }
  return os.str();
}

int RunGen(const GeneratorConfig& cfg, const std::string& out,
           const std::string& preset) {
  SystemInstance inst;
  if (preset.empty()) {
    inst = GenerateRandomInstance(cfg);
  } else if (preset == "ramp-trap") {
    inst = BuildRampTrapInstance();
  } else if (preset == "ramp-trap-reduced") {
    inst = BuildReducedRampTrapInstance();
  } else {
    throw ConfigError("unknown preset \"" + preset + "\"");
  }
  WriteText(out, SerializeInstance(inst));
  return kExitOk;
}

int RunSolve(const std::string& instance_path, const std::string& variant_text,
             const SolverFlags& flags, bool relaxed, const std::string& out,
             const std::string& mps_out, double noise_pct,
             std::uint64_t seed) {
  const SystemInstance inst = LoadInstance(instance_path);
  const Variant variant = RequireVariant(variant_text);
  const SolverConfig cfg = flags.Config();
  FormulationOptions fo;
  fo.instance_id = std::filesystem::path(instance_path).stem().string();
  fo.iuc_cost_noise = noise_pct / 100.0;
  fo.noise_seed = seed;
  const MilpModel model = BuildFormulation(inst, variant, fo);
  if (!mps_out.empty()) WriteMps(model, mps_out, cfg.strict_fixed_mps);
  const SolveOutcome result = SolveModel(model, cfg, relaxed);
  std::cerr << ToString(variant) << ": " << ToString(result.status);
  if (result.has_point()) std::cerr << " objective " << result.objective;
  std::cerr << " in " << result.wall_seconds << " s";
  if (!result.message.empty()) std::cerr << " (" << result.message << ")";
  std::cerr << "\n";
  WriteText(out, SolutionText(relaxed ? RelaxIntegrality(model) : model,
                              result));
  switch (result.status) {
    case SolveStatus::kOptimal:
    case SolveStatus::kFeasibleGap:
      break;
    case SolveStatus::kInfeasible:
      return kExitInvalid;
    default:
      return kExitSolver;
  }
  if (!relaxed) {
    const auto issues = CheckScheduleFeasibility(
        inst, variant, ExtractSchedule(inst, variant, result.point));
    if (!issues.empty()) {
      std::cerr << "schedule re-check: " << issues.size() << " issue(s)\n";
      return kExitInvalid;
    }
  }
  return kExitOk;
}

int RunCompare(const std::vector<std::string>& instance_paths,
               const std::vector<std::string>& variant_items,
               const std::vector<std::string>& reserve_items,
               const std::string& format_text, int workers, double noise_pct,
               std::uint64_t seed, int repetitions, const SolverFlags& flags,
               const std::string& out) {
  ExperimentPlan plan;
  for (const std::string& p : SplitList(instance_paths)) {
    plan.instances.push_back(
        {std::filesystem::path(p).stem().string(), std::filesystem::path(p)});
  }
  auto variant_list = SplitList(variant_items);
  if (variant_list.empty()) {
    for (Variant v : kAllVariants) plan.variants.push_back(v);
  } else {
    for (const std::string& v : variant_list) {
      plan.variants.push_back(RequireVariant(v));
    }
  }
  for (const std::string& r : SplitList(reserve_items)) {
    plan.reserve_levels.push_back(ParseFraction(r));
  }
  auto format = ParseReportFormat(format_text);
  if (!format) throw ConfigError("unknown format \"" + format_text + "\"");
  plan.workers = workers;
  plan.iuc_noise = noise_pct / 100.0;
  plan.noise_seed = seed;
  plan.repetitions = repetitions;
  plan.solver = flags.Config();
  const ExperimentReport report = RunExperiment(plan);
  WriteText(out, EmitReport(report, *format));
  bool solver_failed = false;
  for (const ReportRow& r : report.rows) {
    if (r.ok) continue;
    std::cerr << r.instance << " " << ToString(r.variant) << ": "
              << ToString(r.status) << " " << r.message << "\n";
    if (!r.issues.empty() || !r.objective_consistent) continue;
    solver_failed = true;
  }
  if (report.all_ok()) return kExitOk;
  return solver_failed ? kExitSolver : kExitInvalid;
}

int RunOracle(const std::string& instance_path, const SolverFlags& flags,
              int workers, bool no_prune) {
  const SystemInstance inst = LoadInstance(instance_path);
  OracleOptions opts;
  opts.workers = workers;
  opts.prune = !no_prune;
  const OracleResult r = BruteForceOptimum(inst, flags.Config(), opts);
  std::printf("objective %.10g\npatterns %d (raw %llu)\n", r.objective,
              r.patterns, static_cast<unsigned long long>(r.raw_patterns));
  for (size_t k = 0; k < r.best_pattern.labels.size(); ++k) {
    std::printf("%s ", r.best_pattern.labels[k].c_str());
    for (int on : r.best_pattern.on[k]) std::printf("%d", on);
    std::printf("\n");
  }
  return kExitOk;
}

int RunCheck(const std::string& instance_path, const std::string& variant_text,
             const std::string& solution_path, const std::string& format_text) {
  const SystemInstance inst = LoadInstance(instance_path);
  const Variant variant = RequireVariant(variant_text);
  auto format = ParseSolutionFormat(format_text);
  if (!format) throw ConfigError("unknown solution format \"" + format_text + "\"");
  const MilpModel model = BuildFormulation(inst, variant);
  const ParsedSolution sol =
      ParseSolution(ReadText(solution_path), *format, model);
  for (const std::string& w : sol.warnings) std::cerr << "warning: " << w << "\n";
  const Evaluation ev = EvaluatePoint(model, sol.point);
  const auto issues = CheckScheduleFeasibility(
      inst, variant, ExtractSchedule(inst, variant, sol.point));
  std::printf("objective %.10g\nmodel violations %zu\nintegrality %zu\n"
              "schedule issues %zu\n",
              ev.objective, ev.violations.size(), ev.integrality.size(),
              issues.size());
  for (const auto& f : issues) {
    std::printf("  %s %s t=%d g=%d by %g\n", f.tag.c_str(), f.cluster.c_str(),
                f.t, f.g, f.amount);
  }
  return ev.feasible() && issues.empty() && sol.objective_consistent
             ? kExitOk
             : kExitInvalid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unit-commitment formulation builder and cross-checker"};
  app.require_subcommand(1);

  // gen
  GeneratorConfig gen_cfg;
  std::string gen_out, gen_preset;
  auto* gen = app.add_subcommand("gen", "Generate an instance file");
  gen->add_option("--seed", gen_cfg.seed)->capture_default_str();
  gen->add_option("--clusters", gen_cfg.n_clusters)->capture_default_str();
  gen->add_option("--units", gen_cfg.units_per_cluster)->capture_default_str();
  gen->add_option("--horizon", gen_cfg.horizon)->capture_default_str();
  gen->add_option("--reserve-fraction", gen_cfg.reserve_fraction)
      ->capture_default_str();
  gen->add_option("--renewable-fraction", gen_cfg.renewable_fraction)
      ->capture_default_str();
  gen->add_option("--peak-base-ratio", gen_cfg.peak_base_ratio)
      ->capture_default_str();
  gen->add_option("--capacity-margin", gen_cfg.capacity_margin)
      ->capture_default_str();
  gen->add_option("--preset", gen_preset, "ramp-trap | ramp-trap-reduced");
  gen->add_option("--out", gen_out, "Output path (default stdout)");

  // solve
  SolverFlags solve_flags;
  std::string solve_instance, solve_variant, solve_out, solve_mps;
  bool solve_relaxed = false;
  double solve_noise = 0.0;
  std::uint64_t solve_seed = 0;
  auto* solve = app.add_subcommand("solve", "Build and solve one variant");
  solve->add_option("--instance", solve_instance)->required();
  solve->add_option("--variant", solve_variant)->required();
  solve_flags.Register(solve);
  solve->add_flag("--relaxed", solve_relaxed, "Drop integrality");
  solve->add_option("--out", solve_out, "Solution output (default stdout)");
  solve->add_option("--write-mps", solve_mps, "Also save the MPS model");
  solve->add_option("--iuc-noise-pct", solve_noise)->capture_default_str();
  solve->add_option("--seed", solve_seed, "Noise seed")->capture_default_str();

  // compare
  SolverFlags cmp_flags;
  std::vector<std::string> cmp_instances, cmp_variants, cmp_reserves;
  std::string cmp_format = "csv", cmp_out;
  int cmp_workers = 1, cmp_reps = 1;
  double cmp_noise = 0.0;
  std::uint64_t cmp_seed = 0;
  auto* cmp = app.add_subcommand("compare", "Run a variant matrix");
  cmp->add_option("--instances", cmp_instances)->required();
  cmp->add_option("--variants", cmp_variants, "Comma list (default all)");
  cmp->add_option("--reserve-levels", cmp_reserves,
                  "Comma list of demand fractions, e.g. 0.1,5%");
  cmp->add_option("--format", cmp_format, "csv | markdown")
      ->capture_default_str();
  cmp->add_option("--workers", cmp_workers)->capture_default_str();
  cmp->add_option("--repetitions", cmp_reps)->capture_default_str();
  cmp->add_option("--iuc-noise-pct", cmp_noise)->capture_default_str();
  cmp->add_option("--seed", cmp_seed, "Noise seed")->capture_default_str();
  cmp->add_option("--out", cmp_out, "Report path (default stdout)");
  cmp_flags.Register(cmp);

  // oracle
  SolverFlags or_flags;
  std::string or_instance;
  int or_workers = 1;
  bool or_no_prune = false;
  auto* orc = app.add_subcommand("oracle", "Brute-force IUC optimum");
  orc->add_option("--instance", or_instance)->required();
  orc->add_option("--workers", or_workers)->capture_default_str();
  orc->add_flag("--no-prune", or_no_prune, "Disable symmetry pruning");
  or_flags.Register(orc);

  // check
  std::string chk_instance, chk_variant, chk_solution, chk_format = "pairs";
  auto* chk = app.add_subcommand("check", "Re-check a solution file");
  chk->add_option("--instance", chk_instance)->required();
  chk->add_option("--variant", chk_variant)->required();
  chk->add_option("--solution", chk_solution)->required();
  chk->add_option("--solution-format", chk_format)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen) return RunGen(gen_cfg, gen_out, gen_preset);
    if (*solve) {
      return RunSolve(solve_instance, solve_variant, solve_flags, solve_relaxed,
                      solve_out, solve_mps, solve_noise, solve_seed);
    }
    if (*cmp) {
      return RunCompare(cmp_instances, cmp_variants, cmp_reserves, cmp_format,
                        cmp_workers, cmp_noise, cmp_seed, cmp_reps, cmp_flags,
                        cmp_out);
    }
    if (*orc) return RunOracle(or_instance, or_flags, or_workers, or_no_prune);
    if (*chk) return RunCheck(chk_instance, chk_variant, chk_solution, chk_format);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitUsage;
}
