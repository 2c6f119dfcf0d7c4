#include <gtest/gtest.h>

#include <random>

#include "ucflex/errors.h"
#include "ucflex/milp_ir.h"

namespace ucflex {
namespace {

MilpModel Minimal() {
  return MilpModel::Assemble({{"x", VarKind::kBinary, 0.0, 1.0, "u"}}, {},
                             {{"x", 1.0}}, {"TEST", "min"});
}

MilpModel XAtLeastTwo() {
  return MilpModel::Assemble({{"x", VarKind::kContinuous, 0.0, kInf, "p"}},
                             {{"c1", {{"x", 1.0}}, Sense::kGreaterEqual, 2.0, "eq01"}},
                             {{"x", 1.0}}, {"TEST", "x2"});
}

TEST(Assemble, MinimalModel) {
  const MilpModel m = Minimal();
  EXPECT_EQ(m.num_variables(), 1);
  EXPECT_EQ(m.num_rows(), 0);
  EXPECT_EQ(m.objective(), std::vector<double>{1.0});
  EXPECT_EQ(m.VariableIndex("x"), 0);
  EXPECT_FALSE(m.FindVariable("y").has_value());
  EXPECT_THROW(m.VariableIndex("y"), ModelError);
}

TEST(Assemble, DanglingReference) {
  EXPECT_THROW(MilpModel::Assemble(
                   {{"x", VarKind::kContinuous, 0.0, 1.0, ""}},
                   {{"c", {{"q", 1.0}}, Sense::kLessEqual, 1.0, "eq01"}}, {}, {}),
               ModelError);
  EXPECT_THROW(MilpModel::Assemble({{"x", VarKind::kContinuous, 0.0, 1.0, ""}},
                                   {}, {{"q", 1.0}}, {}),
               ModelError);
}

TEST(Assemble, DuplicateNames) {
  EXPECT_THROW(MilpModel::Assemble({{"u_1", VarKind::kBinary, 0.0, 1.0, "u"},
                                    {"u_1", VarKind::kBinary, 0.0, 1.0, "u"}},
                                   {}, {}, {}),
               ModelError);
  EXPECT_THROW(
      MilpModel::Assemble({{"x", VarKind::kContinuous, 0.0, 1.0, ""}},
                          {{"c", {{"x", 1.0}}, Sense::kLessEqual, 1.0, ""},
                           {"c", {{"x", 1.0}}, Sense::kLessEqual, 1.0, ""}},
                          {}, {}),
      ModelError);
}

TEST(Assemble, RepeatedVariableInRowAndBadBounds) {
  EXPECT_THROW(MilpModel::Assemble(
                   {{"x", VarKind::kContinuous, 0.0, 1.0, ""}},
                   {{"c", {{"x", 1.0}, {"x", 2.0}}, Sense::kLessEqual, 1.0, ""}},
                   {}, {}),
               ModelError);
  EXPECT_THROW(MilpModel::Assemble({{"x", VarKind::kBinary, 0.0, 2.0, ""}}, {},
                                   {}, {}),
               ModelError);
  EXPECT_THROW(MilpModel::Assemble({{"x", VarKind::kContinuous, 3.0, 1.0, ""}},
                                   {}, {}, {}),
               ModelError);
}

TEST(Assemble, ObjectiveEntriesSum) {
  const MilpModel m = MilpModel::Assemble(
      {{"x", VarKind::kContinuous, 0.0, 1.0, ""}}, {},
      {{"x", 1.5}, {"x", 2.0}}, {});
  EXPECT_DOUBLE_EQ(m.objective()[0], 3.5);
}

TEST(Evaluate, FeasiblePoint) {
  const Evaluation ev = EvaluatePoint(XAtLeastTwo(), {{"x", 2.0}});
  EXPECT_DOUBLE_EQ(ev.objective, 2.0);
  EXPECT_TRUE(ev.violations.empty());
  EXPECT_TRUE(ev.feasible());
}

TEST(Evaluate, ViolationWithSlack) {
  const Evaluation ev = EvaluatePoint(XAtLeastTwo(), {{"x", 1.0}});
  ASSERT_EQ(ev.violations.size(), 1u);
  EXPECT_EQ(ev.violations[0].name, "c1");
  EXPECT_EQ(ev.violations[0].tag, "eq01");
  EXPECT_DOUBLE_EQ(ev.violations[0].amount, 1.0);
  EXPECT_DOUBLE_EQ(ev.max_violation, 1.0);
}

TEST(Evaluate, ToleranceIsAbsoluteOneMicro) {
  EXPECT_TRUE(EvaluatePoint(XAtLeastTwo(), {{"x", 2.0 - 0.9e-6}}).feasible());
  EXPECT_FALSE(EvaluatePoint(XAtLeastTwo(), {{"x", 2.0 - 1.1e-6}}).feasible());
}

TEST(Evaluate, IntegralityViolation) {
  const Evaluation ev = EvaluatePoint(Minimal(), {{"x", 0.5}});
  ASSERT_EQ(ev.integrality.size(), 1u);
  EXPECT_EQ(ev.integrality[0].name, "x");
  EXPECT_TRUE(EvaluatePoint(Minimal(), {{"x", 1.0 - 1e-7}}).integrality.empty());
}

TEST(Evaluate, MissingAssignmentNamesVariable) {
  try {
    EvaluatePoint(XAtLeastTwo(), {});
    FAIL() << "expected ModelError";
  } catch (const ModelError& e) {
    EXPECT_NE(std::string(e.what()).find("x"), std::string::npos);
  }
}

TEST(Evaluate, BoundsAreChecked) {
  const Evaluation ev = EvaluatePoint(Minimal(), {{"x", 2.0}});
  ASSERT_FALSE(ev.violations.empty());
  EXPECT_EQ(ev.violations[0].name, "bound:x");
}

TEST(Evaluate, EqualityBothSides) {
  const MilpModel m = MilpModel::Assemble(
      {{"x", VarKind::kContinuous, -kInf, kInf, ""}},
      {{"e", {{"x", 2.0}}, Sense::kEqual, 4.0, "eq08"}}, {}, {});
  EXPECT_TRUE(EvaluatePoint(m, {{"x", 2.0}}).feasible());
  EXPECT_DOUBLE_EQ(EvaluatePoint(m, {{"x", 3.0}}).max_violation, 2.0);
  EXPECT_DOUBLE_EQ(EvaluatePoint(m, {{"x", 1.0}}).max_violation, 2.0);
}

MilpModel ThreeBinaries() {
  return MilpModel::Assemble(
      {{"a", VarKind::kBinary, 0.0, 1.0, "u"},
       {"b", VarKind::kBinary, 0.0, 1.0, "u"},
       {"c", VarKind::kBinary, 0.0, 1.0, "u"},
       {"n", VarKind::kInteger, 0.0, 5.0, "y"},
       {"p", VarKind::kContinuous, 0.0, 10.0, "p"}},
      {{"r1", {{"a", 1.0}, {"b", 1.0}, {"p", -0.5}}, Sense::kLessEqual, 1.0, "eq01"},
       {"r2", {{"c", 1.0}, {"n", 2.0}}, Sense::kEqual, 3.0, "eq02"}},
      {{"a", 1.0}, {"p", 2.0}}, {"TEST", "three"});
}

TEST(Relax, DropsIntegralityKeepsEverythingElse) {
  const MilpModel m = ThreeBinaries();
  const MilpModel r = RelaxIntegrality(m);
  const ModelStats sm = ModelStatistics(m), sr = ModelStatistics(r);
  EXPECT_EQ(sm.n_binary, 3);
  EXPECT_EQ(sm.n_integer, 1);
  EXPECT_EQ(sr.n_binary, 0);
  EXPECT_EQ(sr.n_integer, 0);
  EXPECT_EQ(sr.n_continuous, sm.n_continuous + 4);
  EXPECT_EQ(sr.n_constraints, sm.n_constraints);
  EXPECT_EQ(sr.n_nonzeros, sm.n_nonzeros);
  EXPECT_EQ(r.objective(), m.objective());
  for (int j = 0; j < m.num_variables(); ++j) {
    EXPECT_EQ(r.variables()[j].name, m.variables()[j].name);
    EXPECT_EQ(r.variables()[j].lower, m.variables()[j].lower);
    EXPECT_EQ(r.variables()[j].upper, m.variables()[j].upper);
  }
  for (int i = 0; i < m.num_rows(); ++i) {
    EXPECT_EQ(r.rows()[i].name, m.rows()[i].name);
    EXPECT_EQ(r.rows()[i].rhs, m.rows()[i].rhs);
    ASSERT_EQ(r.rows()[i].terms.size(), m.rows()[i].terms.size());
  }
}

TEST(Relax, Idempotent) {
  const MilpModel once = RelaxIntegrality(ThreeBinaries());
  const MilpModel twice = RelaxIntegrality(once);
  EXPECT_EQ(ModelStatistics(once), ModelStatistics(twice));
  for (int j = 0; j < once.num_variables(); ++j) {
    EXPECT_EQ(once.variables()[j].kind, twice.variables()[j].kind);
  }
}

TEST(Stats, MinimalModel) {
  const ModelStats s = ModelStatistics(Minimal());
  EXPECT_EQ(s, (ModelStats{1, 0, 0, 0, 0}));
}

// n_nonzeros equals the summed term counts for random models.
TEST(Stats, NonzerosMatchTermsProperty) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Variable> vars;
    const int n = 1 + static_cast<int>(rng() % 8);
    for (int j = 0; j < n; ++j) {
      vars.push_back({"v" + std::to_string(j),
                      static_cast<VarKind>(rng() % 3), 0.0, 1.0, ""});
    }
    std::vector<LinearConstraint> rows;
    size_t terms = 0;
    const int m = static_cast<int>(rng() % 6);
    for (int i = 0; i < m; ++i) {
      LinearConstraint c{"r" + std::to_string(i), {}, Sense::kLessEqual, 1.0, ""};
      for (int j = 0; j < n; ++j) {
        if (rng() % 2) c.terms.push_back({vars[j].name, 1.0 + j});
      }
      terms += c.terms.size();
      rows.push_back(c);
    }
    const ModelStats s =
        ModelStatistics(MilpModel::Assemble(vars, rows, {}, {}));
    EXPECT_EQ(s.n_nonzeros, static_cast<int>(terms));
    EXPECT_EQ(s.n_constraints, m);
    EXPECT_EQ(s.n_binary + s.n_integer + s.n_continuous, n);
  }
}

TEST(Builder, MergesAndDropsZeros) {
  ModelBuilder b;
  const int x = b.AddVariable({"x", VarKind::kContinuous, 0.0, 1.0, ""});
  const int y = b.AddVariable({"y", VarKind::kContinuous, 0.0, 1.0, ""});
  b.AddRow("r", "eq01", {{x, 1.0}, {y, 2.0}, {x, 3.0}, {y, -2.0}},
           Sense::kLessEqual, 1.0);
  const MilpModel m = std::move(b).Build({"T", "i"});
  ASSERT_EQ(m.rows()[0].terms.size(), 1u);
  EXPECT_EQ(m.rows()[0].terms[0].var, x);
  EXPECT_DOUBLE_EQ(m.rows()[0].terms[0].coef, 4.0);
}

TEST(Model, FixAndReweight) {
  const MilpModel m = ThreeBinaries();
  const MilpModel fixed = m.WithFixedValues({{"a", 1.0}, {"n", 1.0}});
  EXPECT_EQ(fixed.variables()[0].lower, 1.0);
  EXPECT_EQ(fixed.variables()[0].upper, 1.0);
  EXPECT_EQ(fixed.variables()[3].lower, 1.0);
  EXPECT_EQ(fixed.variables()[1].upper, 1.0);
  EXPECT_THROW(m.WithFixedValues({{"zz", 1.0}}), ModelError);
  const MilpModel w = m.WithObjective({{"b", -1.0}});
  EXPECT_EQ(w.objective(), (std::vector<double>{0, -1, 0, 0, 0}));
  EXPECT_EQ(m.Tags(), (std::set<std::string>{"eq01", "eq02"}));
  EXPECT_EQ(m.CountRows("eq02"), 1);
}

TEST(Model, DensePointRoundTrip) {
  const MilpModel m = ThreeBinaries();
  const std::vector<double> v = {1, 0, 1, 1, 2.5};
  EXPECT_EQ(m.ToDense(m.ToPoint(v)), v);
  Point partial = m.ToPoint(v);
  partial.erase("n");
  EXPECT_THROW(m.ToDense(partial), ModelError);
}

}  // namespace
}  // namespace ucflex
