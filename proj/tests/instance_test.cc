#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <string>

#include "test_util.h"
#include "ucflex/errors.h"
#include "ucflex/instance.h"

namespace ucflex {
namespace {

using testing::MakeCluster;
using testing::MakeInstance;

bool HasMessage(const std::vector<Violation>& v, const std::string& message) {
  for (const auto& x : v) {
    if (x.message == message) return true;
  }
  return false;
}

TEST(ValidateInstance, SuBelowMinimum) {
  ClusterSpec c = MakeCluster();
  c.su_cap = 10.0;
  const auto report = ValidateInstance(MakeInstance({10.0}, {c}));
  ASSERT_TRUE(HasMessage(report, "SU < P_"));
  for (const auto& v : report) {
    if (v.message == "SU < P_") {
      EXPECT_EQ(v.field, "su_cap");
      EXPECT_EQ(v.cluster, "a");
    }
  }
}

TEST(ValidateInstance, MinUpZero) {
  ClusterSpec c = MakeCluster();
  c.min_up = 0;
  EXPECT_TRUE(HasMessage(ValidateInstance(MakeInstance({10.0}, {c})), "TU < 1"));
}

TEST(ValidateInstance, WellFormedIsEmpty) {
  EXPECT_TRUE(ValidateInstance(MakeInstance({10.0, 20.0}, {MakeCluster()})).empty());
}

TEST(ValidateInstance, CatchesEachInvariant) {
  auto check = [](auto mutate, const std::string& message) {
    ClusterSpec c = MakeCluster("a", 2);
    mutate(c);
    EXPECT_TRUE(HasMessage(ValidateInstance(MakeInstance({1.0}, {c})), message))
        << message;
  };
  check([](ClusterSpec& c) { c.p_min = 120.0; }, "P_ > P^");
  check([](ClusterSpec& c) { c.p_min = -1.0; }, "P_ < 0");
  check([](ClusterSpec& c) { c.sd_cap = 110.0; }, "SD > P^");
  check([](ClusterSpec& c) { c.ramp_up = 0.0; }, "RU <= 0");
  check([](ClusterSpec& c) { c.ramp_down = -2.0; }, "RD <= 0");
  check([](ClusterSpec& c) { c.min_down = 0; }, "TD < 1");
  check([](ClusterSpec& c) { c.init_online = 3; }, "u0 > G");
  check(
      [](ClusterSpec& c) {
        c.init_online = 1;
        c.init_power_above_min = 81.0;
      },
      "p0 > (P^ - P_) * u0");
}

TEST(ValidateInstance, SeriesAndIds) {
  SystemInstance s = MakeInstance({1.0, 2.0}, {MakeCluster("a"), MakeCluster("a")});
  s.reserve_up_req = {1.0};
  s.demand[0] = -1.0;
  const auto report = ValidateInstance(s);
  EXPECT_TRUE(HasMessage(report, "duplicate cluster id"));
  EXPECT_TRUE(HasMessage(report, "length 1 != T 2"));
  EXPECT_TRUE(HasMessage(report, "entry < 0 or not finite"));
  EXPECT_THROW(RequireValid(s), ValidationError);
}

TEST(Generator, SameSeedSameBytes) {
  GeneratorConfig cfg;
  cfg.seed = 42;
  EXPECT_EQ(SerializeInstance(GenerateRandomInstance(cfg)),
            SerializeInstance(GenerateRandomInstance(cfg)));
  GeneratorConfig other = cfg;
  other.seed = 43;
  EXPECT_NE(SerializeInstance(GenerateRandomInstance(cfg)),
            SerializeInstance(GenerateRandomInstance(other)));
}

TEST(Generator, StructureEchoesConfig) {
  GeneratorConfig cfg;
  cfg.n_clusters = 3;
  cfg.units_per_cluster = 3;
  cfg.horizon = 24;
  const SystemInstance s = GenerateRandomInstance(cfg);
  EXPECT_EQ(s.horizon, 24);
  ASSERT_EQ(s.clusters.size(), 3u);
  for (const auto& c : s.clusters) EXPECT_EQ(c.unit_count, 3);
  EXPECT_EQ(s.demand.size(), 24u);
}

TEST(Generator, ValidAndSizedAcrossSeeds) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    GeneratorConfig cfg;
    cfg.seed = seed;
    cfg.n_clusters = 1 + static_cast<int>(seed % 4);
    cfg.units_per_cluster = 1 + static_cast<int>(seed % 5);
    cfg.horizon = 1 + static_cast<int>(seed % 30);
    cfg.renewable_fraction = (seed % 3 == 0) ? 0.3 : 0.0;
    const SystemInstance s = GenerateRandomInstance(cfg);
    EXPECT_TRUE(ValidateInstance(s).empty())
        << "seed " << seed << "\n" << FormatViolations(ValidateInstance(s));
    double fleet = 0.0;
    for (const auto& c : s.clusters) fleet += c.p_max * c.unit_count;
    const double peak = *std::max_element(s.demand.begin(), s.demand.end());
    EXPECT_GE(fleet, 1.2 * peak - 1e-9) << "seed " << seed;
    EXPECT_EQ(s.renewable_profile.has_value(), cfg.renewable_fraction > 0.0);
  }
}

TEST(Generator, RejectsInfeasibleRanges) {
  GeneratorConfig cfg;
  cfg.p_min_frac = {1.2, 1.5};
  EXPECT_THROW(GenerateRandomInstance(cfg), ConfigError);
  cfg = {};
  cfg.cost_variable = {10.0, 5.0};
  EXPECT_THROW(GenerateRandomInstance(cfg), ConfigError);
  cfg = {};
  cfg.capacity_margin = 1.1;
  EXPECT_THROW(GenerateRandomInstance(cfg), ConfigError);
  cfg = {};
  cfg.cost_noise_pct = -0.1;
  EXPECT_THROW(GenerateRandomInstance(cfg), ConfigError);
}

TEST(RampTrap, StepBetweenOneAndTenRamps) {
  const SystemInstance s = BuildRampTrapInstance();
  ASSERT_TRUE(ValidateInstance(s).empty());
  ASSERT_EQ(s.clusters.size(), 1u);
  const ClusterSpec& c = s.clusters[0];
  EXPECT_EQ(c.unit_count, 10);
  EXPECT_DOUBLE_EQ(c.ramp_up, 20.0);
  // Largest one-hour increase of demand.
  double step = 0.0;
  for (int t = 1; t < s.horizon; ++t) {
    step = std::max(step, s.demand[t] - s.demand[t - 1]);
  }
  EXPECT_DOUBLE_EQ(step, 60.0);
  EXPECT_GT(step, c.ramp_up);
  EXPECT_LT(step, c.unit_count * c.ramp_up);
  // Plateau: nine units at full output, one online unit below it.
  const auto units = InitialUnitStates(c);
  int full = 0, partial = 0;
  for (const auto& [on, p] : units) {
    if (on && p == c.headroom()) ++full;
    if (on && p < c.headroom()) ++partial;
  }
  EXPECT_EQ(full, 9);
  EXPECT_EQ(partial, 0);
  EXPECT_LT(c.init_online, c.unit_count);
}

TEST(RampTrap, ReducedVersionIsValid) {
  const SystemInstance s = BuildReducedRampTrapInstance();
  EXPECT_TRUE(ValidateInstance(s).empty());
  EXPECT_EQ(s.clusters.at(0).unit_count, 3);
  EXPECT_LE(s.horizon, 8);
}

TEST(InitialUnitStates, GreedyFill) {
  ClusterSpec c = MakeCluster("a", 4);
  c.init_online = 3;
  c.init_power_above_min = 170.0;
  const auto units = InitialUnitStates(c);
  ASSERT_EQ(units.size(), 4u);
  EXPECT_EQ(units[0], std::make_pair(true, 80.0));
  EXPECT_EQ(units[1], std::make_pair(true, 80.0));
  EXPECT_EQ(units[2], std::make_pair(true, 10.0));
  EXPECT_EQ(units[3], std::make_pair(false, 0.0));
}

constexpr const char* kMinimal = R"({
  "horizon": 2,
  "demand": [10, 20.5],
  "reserve_up_req": [0, 1],
  "reserve_down_req": [0, 0],
  "cost_curtailment": 1,
  "cost_shed": 1000,
  "cost_reserve_shortfall": 100,
  "clusters": [{
    "id": "a", "unit_count": 2, "p_max": 100, "p_min": 20,
    "ramp_up": 30, "ramp_down": 30, "su_cap": 40, "sd_cap": 40,
    "min_up": 2, "min_down": 1, "cost_fixed": 5, "cost_variable": 7,
    "cost_startup": 50, "cost_shutdown": 0, "init_online": 1,
    "init_power_above_min": 10
  }]
})";

TEST(ParseInstance, Minimal) {
  const SystemInstance s = ParseInstance(kMinimal);
  EXPECT_EQ(s.horizon, 2);
  EXPECT_EQ(s.demand, (std::vector<double>{10.0, 20.5}));
  ASSERT_EQ(s.clusters.size(), 1u);
  EXPECT_EQ(s.clusters[0].id, "a");
  EXPECT_EQ(s.clusters[0].min_up, 2);
  EXPECT_DOUBLE_EQ(s.clusters[0].init_power_above_min, 10.0);
  EXPECT_FALSE(s.renewable_profile.has_value());
}

TEST(ParseInstance, MissingDemandNamesField) {
  std::string text = kMinimal;
  text.replace(text.find("\"demand\": [10, 20.5],"),
               std::string("\"demand\": [10, 20.5],").size(), "");
  try {
    ParseInstance(text);
    FAIL() << "expected SchemaError";
  } catch (const SchemaError& e) {
    EXPECT_EQ(e.field(), "demand");
    EXPECT_NE(std::string(e.what()).find("demand"), std::string::npos);
  }
}

TEST(ParseInstance, DemandLengthMismatchIsValidationError) {
  std::string text = kMinimal;
  text.replace(text.find("[10, 20.5]"), 10, "[10]");
  EXPECT_THROW(ParseInstance(text), ValidationError);
}

TEST(ParseInstance, UnknownFieldRejected) {
  std::string text = kMinimal;
  text.replace(text.find("\"horizon\""), 9, "\"colour\": 1, \"horizon\"");
  EXPECT_THROW(ParseInstance(text), SchemaError);
  std::string in_cluster = kMinimal;
  in_cluster.replace(in_cluster.find("\"id\""), 4, "\"kind\": \"gas\", \"id\"");
  EXPECT_THROW(ParseInstance(in_cluster), SchemaError);
}

TEST(ParseInstance, WrongTypeNamesField) {
  std::string text = kMinimal;
  text.replace(text.find("\"min_up\": 2"), 11, "\"min_up\": 2.5");
  try {
    ParseInstance(text);
    FAIL() << "expected SchemaError";
  } catch (const SchemaError& e) {
    EXPECT_EQ(e.field(), "min_up");
  }
}

TEST(ParseInstance, SyntaxErrorCarriesPosition) {
  std::string text = kMinimal;
  text.replace(text.find("\"cost_shed\": 1000,"), 18, "\"cost_shed\": 1000,,");
  try {
    ParseInstance(text);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 7);
    EXPECT_GT(e.column(), 0);
  }
}

TEST(Serialize, CanonicalKeyOrder) {
  const std::string out = SerializeInstance(ParseInstance(kMinimal));
  const char* keys[] = {"\"horizon\"", "\"demand\"", "\"reserve_up_req\"",
                        "\"reserve_down_req\"", "\"cost_curtailment\"",
                        "\"cost_shed\"", "\"cost_reserve_shortfall\"",
                        "\"clusters\""};
  size_t last = 0;
  for (const char* k : keys) {
    const size_t pos = out.find(k);
    ASSERT_NE(pos, std::string::npos) << k;
    EXPECT_GT(pos, last) << k;
    last = pos;
  }
  const char* cluster_keys[] = {
      "\"id\"",        "\"unit_count\"",   "\"p_max\"",         "\"p_min\"",
      "\"ramp_up\"",   "\"ramp_down\"",    "\"su_cap\"",        "\"sd_cap\"",
      "\"min_up\"",    "\"min_down\"",     "\"cost_fixed\"",    "\"cost_variable\"",
      "\"cost_startup\"", "\"cost_shutdown\"", "\"init_online\"",
      "\"init_power_above_min\""};
  for (const char* k : cluster_keys) {
    const size_t pos = out.find(k, last);
    ASSERT_NE(pos, std::string::npos) << k;
    last = pos;
  }
}

// parse(serialize(x)) == x for generated instances, including awkward
// doubles that need all 17 digits.
TEST(Serialize, RoundTripProperty) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    GeneratorConfig cfg;
    cfg.seed = seed;
    cfg.renewable_fraction = seed % 2 ? 0.25 : 0.0;
    SystemInstance s = GenerateRandomInstance(cfg);
    s.demand[0] += 1.0 / 3.0;
    s.clusters[0].cost_variable = 0.1 + 0.2;
    const SystemInstance back = ParseInstance(SerializeInstance(s));
    EXPECT_EQ(back, s) << "seed " << seed;
    EXPECT_EQ(SerializeInstance(back), SerializeInstance(s));
  }
}

TEST(Serialize, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "ucflex_inst_rt.json";
  const SystemInstance s = BuildRampTrapInstance();
  SaveInstance(s, path.string());
  EXPECT_EQ(LoadInstance(path.string()), s);
  std::filesystem::remove(path);
  EXPECT_THROW(LoadInstance("/nonexistent/dir/x.json"), Error);
}

}  // namespace
}  // namespace ucflex
