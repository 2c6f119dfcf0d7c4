#include "ucflex/solver_bridge.h"

#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "ucflex/errors.h"

#ifndef UCFLEX_DEFAULT_SOLVER_CMD
#define UCFLEX_DEFAULT_SOLVER_CMD ""
#endif

namespace ucflex {

namespace fs = std::filesystem;

std::optional<SolutionFormat> ParseSolutionFormat(std::string_view text) {
  if (text == "pairs" || text == "plain") return SolutionFormat::kPlainPairs;
  if (text == "columns" || text == "csv") return SolutionFormat::kColumns;
  return std::nullopt;
}

std::string_view ToString(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
      return "optimal";
    case SolveStatus::kFeasibleGap:
      return "feasible-gap";
    case SolveStatus::kInfeasible:
      return "infeasible";
    case SolveStatus::kTimeout:
      return "timeout";
    case SolveStatus::kError:
      return "error";
  }
  return "?";
}

void SolverConfig::Validate() const {
  if (command_template.find("{model_path}") == std::string::npos ||
      command_template.find("{solution_path}") == std::string::npos) {
    throw ConfigError(
        "solver command template must contain {model_path} and "
        "{solution_path}");
  }
  if (!(mip_gap >= 0.0)) throw ConfigError("MIP gap must be >= 0");
  if (!(time_limit_s > 0.0)) throw ConfigError("time limit must be > 0");
  if (!(kill_grace_s >= 0.0)) throw ConfigError("kill grace must be >= 0");
}

std::string DefaultSolverCommand() {
  if (const char* env = std::getenv("UCFLEX_SOLVER_CMD"); env && *env) {
    return env;
  }
  return UCFLEX_DEFAULT_SOLVER_CMD;
}

SolverConfig DefaultSolverConfig() {
  SolverConfig cfg;
  cfg.command_template = DefaultSolverCommand();
  return cfg;
}

std::string ShellQuote(std::string_view text) {
  std::string out = "'";
  for (char ch : text) {
    if (ch == '\'') {
      out += "'\\''";
    } else {
      out += ch;
    }
  }
  return out + "'";
}

namespace {

void ReplaceAll(std::string& s, std::string_view from, const std::string& to) {
  for (size_t pos = s.find(from); pos != std::string::npos;
       pos = s.find(from, pos + to.size())) {
    s.replace(pos, from.size(), to);
  }
}

std::string FormatNumber(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

std::string ExpandCommandTemplate(const SolverConfig& cfg,
                                  const fs::path& model_path,
                                  const fs::path& solution_path) {
  std::string cmd = cfg.command_template;
  ReplaceAll(cmd, "{model_path}", ShellQuote(model_path.string()));
  ReplaceAll(cmd, "{solution_path}", ShellQuote(solution_path.string()));
  ReplaceAll(cmd, "{gap}", FormatNumber(cfg.mip_gap));
  ReplaceAll(cmd, "{timelimit}", FormatNumber(cfg.time_limit_s));
  return cmd;
}

ProcessResult InvokeSolver(const SolverConfig& cfg, const fs::path& model_path,
                           const fs::path& solution_path) {
  const std::string cmd = ExpandCommandTemplate(cfg, model_path, solution_path);
  const fs::path out_path = solution_path.string() + ".stdout";
  const fs::path err_path = solution_path.string() + ".stderr";

  const auto start = std::chrono::steady_clock::now();
  const pid_t pid = fork();
  if (pid < 0) throw SolverError("fork failed");
  if (pid == 0) {
    setpgid(0, 0);
    const int out = open(out_path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
    const int err = open(err_path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
    if (out >= 0) dup2(out, STDOUT_FILENO);
    if (err >= 0) dup2(err, STDERR_FILENO);
    execl("/bin/sh", "sh", "-c", cmd.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  setpgid(pid, pid);

  ProcessResult result;
  const auto limit = std::chrono::duration<double>(cfg.time_limit_s +
                                                   cfg.kill_grace_s);
  int status = 0;
  while (true) {
    const pid_t done = waitpid(pid, &status, WNOHANG);
    if (done == pid) break;
    if (done < 0) {
      status = -1;
      break;
    }
    if (std::chrono::steady_clock::now() - start > limit) {
      kill(-pid, SIGKILL);
      kill(pid, SIGKILL);
      waitpid(pid, &status, 0);
      result.timed_out = true;
      break;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(2));
  }
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  if (!result.timed_out && status >= 0) {
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status)
                                         : 128 + WTERMSIG(status);
  }
  result.stdout_text = ReadFile(out_path);
  result.stderr_text = ReadFile(err_path);
  return result;
}

namespace {

std::optional<double> ToDouble(std::string_view s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<SolveStatus> ToStatus(std::string_view s) {
  if (s == "optimal") return SolveStatus::kOptimal;
  if (s == "feasible" || s == "feasible-gap") return SolveStatus::kFeasibleGap;
  if (s == "infeasible") return SolveStatus::kInfeasible;
  if (s == "timeout") return SolveStatus::kTimeout;
  if (s == "error" || s == "unbounded") return SolveStatus::kError;
  return std::nullopt;
}

std::vector<std::string_view> Split(std::string_view line, bool commas) {
  std::vector<std::string_view> out;
  size_t i = 0;
  auto sep = [&](char ch) {
    return ch == ' ' || ch == '\t' || ch == '\r' || (commas && ch == ',');
  };
  while (i < line.size()) {
    while (i < line.size() && sep(line[i])) ++i;
    size_t j = i;
    while (j < line.size() && !sep(line[j])) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

ParsedSolution ParseSolution(std::string_view text, SolutionFormat format,
                             const MilpModel& model, bool strict_names) {
  ParsedSolution out;
  std::vector<std::optional<double>> values(model.num_variables());
  auto resolve = [&](std::string_view name) -> std::optional<int> {
    if (!strict_names) return model.FindVariable(name);
    if (name.size() == 8 && name[0] == 'C') {
      int idx = 0;
      auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + 8, idx);
      if (ec == std::errc() && idx >= 1 && idx <= model.num_variables()) {
        return idx - 1;
      }
    }
    return std::nullopt;
  };

  int line_no = 0;
  bool header_seen = format == SolutionFormat::kPlainPairs;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    const bool commas = format == SolutionFormat::kColumns;
    const auto fields = Split(line, commas);
    if (fields.empty() || fields[0].starts_with("#")) {
      if (end == text.size()) break;
      continue;
    }
    if (!header_seen) {
      if (fields.size() != 2) {
        throw ParseError("line " + std::to_string(line_no) +
                             ": header must name two columns",
                         line_no);
      }
      header_seen = true;
      continue;
    }
    if (fields.size() != 2) {
      throw ParseError("line " + std::to_string(line_no) +
                           ": expected `name value`",
                       line_no);
    }
    const std::string_view key = fields[0];
    if (format == SolutionFormat::kPlainPairs && key == "=status=") {
      out.status = ToStatus(fields[1]);
      if (!out.status) {
        throw ParseError("line " + std::to_string(line_no) +
                             ": unknown status \"" + std::string(fields[1]) +
                             "\"",
                         line_no);
      }
      continue;
    }
    const auto value = ToDouble(fields[1]);
    if (!value) {
      throw ParseError("line " + std::to_string(line_no) + ": bad number \"" +
                           std::string(fields[1]) + "\"",
                       line_no);
    }
    if (format == SolutionFormat::kPlainPairs && key == "=obj=") {
      out.reported_objective = *value;
      continue;
    }
    if (format == SolutionFormat::kPlainPairs && key == "=gap=") {
      out.gap = *value;
      continue;
    }
    if (auto idx = resolve(key)) {
      values[*idx] = *value;
    } else {
      out.warnings.push_back("ignoring unknown variable \"" + std::string(key) +
                             "\"");
    }
    if (end == text.size()) break;
  }

  const bool infeasible = out.status && !(*out.status == SolveStatus::kOptimal ||
                                          *out.status == SolveStatus::kFeasibleGap);
  std::vector<double> dense(values.size(), 0.0);
  int missing = 0;
  for (size_t j = 0; j < values.size(); ++j) {
    if (values[j]) {
      dense[j] = *values[j];
    } else {
      ++missing;
    }
  }
  if (missing > 0 && !infeasible) {
    out.warnings.push_back(std::to_string(missing) +
                           " variable(s) missing from solution, set to 0");
  }
  out.point = model.ToPoint(dense);
  out.objective = EvaluateDense(model, dense).objective;
  if (out.reported_objective && !infeasible) {
    const double scale =
        std::max({1.0, std::abs(out.objective), std::abs(*out.reported_objective)});
    out.objective_consistent =
        std::abs(out.objective - *out.reported_objective) <= 1e-5 * scale;
  }
  return out;
}

namespace {

// Unique scratch directory removed on destruction unless kept.
class ScratchDir {
 public:
  ScratchDir(const fs::path& base, bool keep) : keep_(keep) {
    const fs::path root = base.empty() ? fs::temp_directory_path() : base;
    fs::create_directories(root);
    std::string tmpl = (root / "ucflex-XXXXXX").string();
    if (!mkdtemp(tmpl.data())) {
      throw SolverError("cannot create scratch directory under " +
                        root.string());
    }
    path_ = tmpl;
  }
  ~ScratchDir() {
    if (!keep_) {
      std::error_code ec;
      fs::remove_all(path_, ec);
    }
  }
  ScratchDir(const ScratchDir&) = delete;
  ScratchDir& operator=(const ScratchDir&) = delete;

  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
  bool keep_;
};

std::string Tail(const std::string& s, size_t n = 2000) {
  return s.size() <= n ? s : s.substr(s.size() - n);
}

}  // namespace

SolveOutcome SolveModel(const MilpModel& model, const SolverConfig& cfg,
                        bool relaxed) {
  cfg.Validate();
  const MilpModel target = relaxed ? RelaxIntegrality(model) : model;
  ScratchDir dir(cfg.work_dir, cfg.keep_files);
  const fs::path mps = dir.path() / "model.mps";
  const fs::path sol = dir.path() / "model.sol";
  WriteMps(target, mps, cfg.strict_fixed_mps);

  SolveOutcome outcome;
  const ProcessResult run = InvokeSolver(cfg, mps, sol);
  outcome.wall_seconds = run.wall_seconds;
  if (run.timed_out) {
    outcome.status = SolveStatus::kTimeout;
    outcome.message = "solver killed after time limit";
    return outcome;
  }
  if (!fs::exists(sol)) {
    outcome.status = SolveStatus::kError;
    outcome.message = "solver exited with code " +
                      std::to_string(run.exit_code) +
                      " without a solution file: " + Tail(run.stderr_text);
    return outcome;
  }

  ParsedSolution parsed;
  try {
    parsed = ParseSolution(ReadFile(sol), cfg.format, target,
                           cfg.strict_fixed_mps);
  } catch (const ParseError& e) {
    outcome.status = SolveStatus::kError;
    outcome.message = std::string("unreadable solution: ") + e.what();
    return outcome;
  }
  outcome.gap = parsed.gap;
  outcome.solver_objective = parsed.reported_objective;
  SolveStatus status = parsed.status.value_or(SolveStatus::kOptimal);
  if (status == SolveStatus::kTimeout && parsed.reported_objective) {
    status = SolveStatus::kFeasibleGap;
  }
  outcome.status = status;
  if (!outcome.has_point()) {
    outcome.message = "solver reported " + std::string(ToString(status));
    if (status == SolveStatus::kError) outcome.message += ": " + Tail(run.stderr_text);
    return outcome;
  }

  const Evaluation ev = EvaluatePoint(target, parsed.point);
  outcome.point = std::move(parsed.point);
  outcome.objective = ev.objective;
  outcome.max_violation = ev.max_violation;
  if (!ev.violations.empty()) {
    outcome.status = SolveStatus::kError;
    outcome.message = "solution violates " + ev.violations.front().name +
                      " by " + std::to_string(ev.violations.front().amount);
  } else if (!ev.integrality.empty()) {
    outcome.status = SolveStatus::kError;
    outcome.message = "solution not integral at " + ev.integrality.front().name;
  } else if (!parsed.objective_consistent) {
    outcome.status = SolveStatus::kError;
    outcome.message = "recomputed objective " + FormatNumber(ev.objective) +
                      " differs from solver objective " +
                      FormatNumber(*parsed.reported_objective);
  }
  return outcome;
}

}  // namespace ucflex
