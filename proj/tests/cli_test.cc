#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "ucflex/instance.h"
#include "ucflex/solver_bridge.h"

namespace ucflex {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ =
        fs::temp_directory_path() /
        ("ucflex-cli-" +
         std::string(
             ::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  CliRun Exec(const std::string& args) {
    const fs::path out = dir_ / "stdout.txt";
    const fs::path err = dir_ / "stderr.txt";
    const std::string cmd = std::string(UCFLEX_CLI_PATH) + " " + args + " >" +
                            ShellQuote(out.string()) + " 2>" +
                            ShellQuote(err.string());
    const int status = std::system(cmd.c_str());
    CliRun r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = Slurp(out);
    r.err = Slurp(err);
    return r;
  }

  std::string Path(const std::string& name) const {
    return ShellQuote((dir_ / name).string());
  }

  fs::path dir_;
};

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(Exec("").code, 1);
  EXPECT_EQ(Exec("frobnicate").code, 1);
  EXPECT_EQ(Exec("solve --variant PCUC").code, 1);
  ASSERT_EQ(Exec("gen --preset ramp-trap-reduced --out " + Path("t.json")).code,
            0);
  const CliRun bad =
      Exec("solve --instance " + Path("t.json") + " --variant XUC");
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.err.find("unknown variant"), std::string::npos);
  EXPECT_EQ(Exec("gen --preset nope").code, 1);
  EXPECT_EQ(
      Exec("compare --instances " + Path("t.json") + " --format xml").code, 1);
  EXPECT_EQ(
      Exec("compare --instances " + Path("t.json") + " --reserve-levels abc")
          .code,
      1);
  EXPECT_EQ(Exec("--help").code, 0);
}

TEST_F(Cli, GenIsDeterministic) {
  ASSERT_EQ(Exec("gen --seed 4 --horizon 6 --out " + Path("a.json")).code, 0);
  ASSERT_EQ(Exec("gen --seed 4 --horizon 6 --out " + Path("b.json")).code, 0);
  ASSERT_EQ(Exec("gen --seed 5 --horizon 6 --out " + Path("c.json")).code, 0);
  EXPECT_EQ(Slurp(dir_ / "a.json"), Slurp(dir_ / "b.json"));
  EXPECT_NE(Slurp(dir_ / "a.json"), Slurp(dir_ / "c.json"));
  const SystemInstance s = LoadInstance(dir_ / "a.json");
  EXPECT_EQ(s.horizon, 6);
  EXPECT_EQ(s.total_units(), 9);
}

TEST_F(Cli, SolveThenCheck) {
  ASSERT_EQ(Exec("gen --preset ramp-trap-reduced --out " + Path("t.json")).code,
            0);
  const CliRun solve = Exec("solve --instance " + Path("t.json") +
                            " --variant PCUC --mip-gap 1e-9 --out " +
                            Path("sol.txt") + " --write-mps " + Path("m.mps"));
  ASSERT_EQ(solve.code, 0) << solve.err;
  EXPECT_NE(solve.err.find("PCUC: optimal objective"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir_ / "m.mps"));
  const std::string sol = Slurp(dir_ / "sol.txt");
  EXPECT_TRUE(sol.starts_with("=status= optimal\n=obj= ")) << sol;

  const CliRun ok = Exec("check --instance " + Path("t.json") +
                         " --variant PCUC --solution " + Path("sol.txt"));
  EXPECT_EQ(ok.code, 0) << ok.out << ok.err;
  EXPECT_NE(ok.out.find("schedule issues 0"), std::string::npos);

  // One cluster output far above demand breaks the balance row.
  std::ofstream(dir_ / "bad.txt") << std::regex_replace(
      sol, std::regex("\\n(ph_c1_t1) [^\\n]*"), "\n$1 1000");
  const CliRun bad = Exec("check --instance " + Path("t.json") +
                          " --variant PCUC --solution " + Path("bad.txt"));
  EXPECT_EQ(bad.code, 3) << bad.out;

  std::ofstream(dir_ / "garbled.txt") << "u_c1_t1 two\n";
  EXPECT_EQ(Exec("check --instance " + Path("t.json") +
                 " --variant PCUC --solution " + Path("garbled.txt"))
                .code,
            3);
}

TEST_F(Cli, RelaxedSolve) {
  ASSERT_EQ(Exec("gen --preset ramp-trap-reduced --out " + Path("t.json")).code,
            0);
  const CliRun r =
      Exec("solve --instance " + Path("t.json") + " --variant CCUC --relaxed");
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.starts_with("=status= optimal"));
}

TEST_F(Cli, SolverFailureExitCode) {
  ASSERT_EQ(Exec("gen --preset ramp-trap-reduced --out " + Path("t.json")).code,
            0);
  const CliRun r = Exec(
      "solve --instance " + Path("t.json") + " --variant CCUC --solver-cmd " +
      ShellQuote("/nonexistent {model_path} {solution_path}"));
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("=status= error"), std::string::npos);
  const CliRun c =
      Exec("compare --instances " + Path("t.json") +
           " --variants IUC --solver-cmd " +
           ShellQuote("/nonexistent {model_path} {solution_path}"));
  EXPECT_EQ(c.code, 2);
}

TEST_F(Cli, MissingInstanceFile) {
  const CliRun r =
      Exec("solve --instance " + Path("nope.json") + " --variant IUC");
  EXPECT_EQ(r.code, 3);
  EXPECT_FALSE(r.err.empty());
}

TEST_F(Cli, CompareCsvAndMarkdown) {
  ASSERT_EQ(Exec("gen --seed 3 --clusters 2 --units 2 --horizon 6 --out " +
                 Path("g.json"))
                .code,
            0);
  ASSERT_EQ(Exec("gen --preset ramp-trap-reduced --out " + Path("t.json")).code,
            0);
  const CliRun csv =
      Exec("compare --instances " + Path("g.json") + "," + Path("t.json") +
           " --variants IUC,CCUC,PCUC --reserve-levels 5%,0.1"
           " --workers 2 --out " +
           Path("r.csv"));
  ASSERT_EQ(csv.code, 0) << csv.err;
  std::istringstream is(Slurp(dir_ / "r.csv"));
  std::vector<std::string> lines;
  for (std::string l; std::getline(is, l);) lines.push_back(l);
  ASSERT_EQ(lines.size(), 13u);
  EXPECT_TRUE(lines[1].starts_with("g,0.05,IUC,")) << lines[1];
  EXPECT_TRUE(lines[12].starts_with("t,0.1,PCUC,")) << lines[12];

  const CliRun md = Exec("compare --instances " + Path("t.json") +
                         " --variants IUC,CCUC --format markdown");
  ASSERT_EQ(md.code, 0) << md.err;
  EXPECT_NE(md.out.find("### t"), std::string::npos);
  EXPECT_NE(md.out.find("| Reserve | Result | IUC | CCUC |"),
            std::string::npos);
  EXPECT_NE(md.out.find("| O.f. Error | - |"), std::string::npos);
}

TEST_F(Cli, OracleAgreesWithIndividualSolve) {
  ASSERT_EQ(Exec("gen --preset ramp-trap-reduced --out " + Path("t.json")).code,
            0);
  const CliRun orc = Exec("oracle --instance " + Path("t.json"));
  ASSERT_EQ(orc.code, 0) << orc.err;
  std::smatch m;
  ASSERT_TRUE(std::regex_search(orc.out, m, std::regex("objective (\\S+)")));
  const double oracle = std::stod(m[1]);
  const CliRun iuc = Exec("solve --instance " + Path("t.json") +
                          " --variant IUC --mip-gap 1e-9");
  ASSERT_EQ(iuc.code, 0) << iuc.err;
  ASSERT_TRUE(std::regex_search(iuc.out, m, std::regex("=obj= (\\S+)")));
  EXPECT_NEAR(std::stod(m[1]), oracle, 1e-6 * std::abs(oracle));

  ASSERT_EQ(Exec("gen --clusters 2 --units 3 --out " + Path("big.json")).code,
            0);
  EXPECT_EQ(Exec("oracle --instance " + Path("big.json")).code, 3);
}

TEST_F(Cli, NoiseFlagChangesOnlyIndividualModel) {
  ASSERT_EQ(Exec("gen --seed 2 --clusters 2 --units 2 --horizon 6 --out " +
                 Path("g.json"))
                .code,
            0);
  auto obj = [&](const std::string& extra) {
    const CliRun r =
        Exec("solve --instance " + Path("g.json") + extra + " --mip-gap 1e-9");
    EXPECT_EQ(r.code, 0) << r.err;
    std::smatch m;
    EXPECT_TRUE(std::regex_search(r.out, m, std::regex("=obj= (\\S+)")));
    return std::stod(m[1]);
  };
  const double base = obj(" --variant IUC");
  const double noisy = obj(" --variant IUC --iuc-noise-pct 1 --seed 3");
  EXPECT_NE(base, noisy);
  EXPECT_LE(std::abs(noisy - base), 0.05 * std::abs(base));
  EXPECT_DOUBLE_EQ(obj(" --variant CCUC"),
                   obj(" --variant CCUC --iuc-noise-pct 1 --seed 3"));
}

}  // namespace
}  // namespace ucflex
