#include "ucflex/formulation.h"

#include <algorithm>
#include <cctype>
#include <random>

#include "ucflex/errors.h"

namespace ucflex {

std::string_view ToString(Variant v) {
  switch (v) {
    case Variant::kIUC:
      return "IUC";
    case Variant::kCCUC:
      return "CCUC";
    case Variant::kPCUC_S:
      return "PCUC_S";
    case Variant::kPCUC_R:
      return "PCUC_R";
    case Variant::kPCUC:
      return "PCUC";
  }
  return "?";
}

std::optional<Variant> ParseVariant(std::string_view text) {
  std::string norm;
  for (char ch : text) {
    norm.push_back(ch == '-' ? '_' : static_cast<char>(std::toupper(
                                         static_cast<unsigned char>(ch))));
  }
  for (Variant v : kAllVariants) {
    if (norm == ToString(v)) return v;
  }
  return std::nullopt;
}

std::vector<ModelCluster> ModelClusters(const SystemInstance& instance,
                                        Variant variant,
                                        const FormulationOptions& options) {
  std::vector<ModelCluster> out;
  std::mt19937_64 rng(options.noise_seed);
  for (size_t k = 0; k < instance.clusters.size(); ++k) {
    const ClusterSpec& c = instance.clusters[k];
    const std::string label = "c" + std::to_string(k + 1);
    if (variant != Variant::kIUC) {
      out.push_back({label, static_cast<int>(k), c});
      continue;
    }
    const auto states = InitialUnitStates(c);
    for (int g = 0; g < c.unit_count; ++g) {
      ModelCluster mc{label + "u" + std::to_string(g + 1), static_cast<int>(k),
                      c};
      mc.spec.unit_count = 1;
      mc.spec.init_online = states[g].first ? 1 : 0;
      mc.spec.init_power_above_min = states[g].second;
      if (options.iuc_cost_noise > 0.0) {
        const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        mc.spec.cost_variable *= 1.0 + options.iuc_cost_noise * (2.0 * unit - 1.0);
      }
      out.push_back(std::move(mc));
    }
  }
  return out;
}

std::string ClusterVarName(std::string_view group, std::string_view label,
                           int t) {
  return std::string(group) + "_" + std::string(label) + "_t" +
         std::to_string(t);
}

std::string SlotVarName(std::string_view group, std::string_view label, int g,
                        int t) {
  return std::string(group) + "_" + std::string(label) + "_g" +
         std::to_string(g) + "_t" + std::to_string(t);
}

std::string SystemVarName(std::string_view group, int t) {
  return std::string(group) + "_t" + std::to_string(t);
}

namespace {

std::vector<int> Series(ModelBuilder& b, std::string_view prefix,
                        std::string_view group, const std::string& label,
                        int horizon, VarKind kind, double upper) {
  std::vector<int> ids;
  for (int t = 1; t <= horizon; ++t) {
    ids.push_back(b.AddVariable({ClusterVarName(prefix, label, t), kind, 0.0,
                                 upper, std::string(group)}));
  }
  return ids;
}

std::vector<std::vector<int>> SlotSeries(ModelBuilder& b,
                                         std::string_view prefix,
                                         std::string_view group,
                                         const std::string& label, int slots,
                                         int horizon, VarKind kind,
                                         double upper) {
  std::vector<std::vector<int>> ids(slots);
  for (int g = 1; g <= slots; ++g) {
    for (int t = 1; t <= horizon; ++t) {
      ids[g - 1].push_back(b.AddVariable({SlotVarName(prefix, label, g, t), kind,
                                          0.0, upper, std::string(group)}));
    }
  }
  return ids;
}

std::string RowName(std::string_view tag, const std::string& label, int t) {
  return std::string(tag) + "_" + label + "_t" + std::to_string(t);
}

std::string SlotRowName(std::string_view tag, const std::string& label, int g,
                        int t) {
  return std::string(tag) + "_" + label + "_g" + std::to_string(g) + "_t" +
         std::to_string(t);
}

// Initial on/off state and output above minimum of each slot: slots 1..u0 on,
// p0 filled in slot order.
struct SlotStart {
  std::vector<double> on;
  std::vector<double> p;
};

SlotStart InitialSlots(const ClusterSpec& c) {
  SlotStart s;
  for (const auto& [on, p] : InitialUnitStates(c)) {
    s.on.push_back(on ? 1.0 : 0.0);
    s.p.push_back(p);
  }
  return s;
}

}  // namespace

ClusterBlock AddClusterVariables(ModelBuilder& b, const ModelCluster& mc,
                                 int horizon, bool slot_resolved) {
  const int G = mc.spec.unit_count;
  const VarKind count_kind = G == 1 ? VarKind::kBinary : VarKind::kInteger;
  const double count_ub = G;
  ClusterBlock blk;
  blk.u = Series(b, "u", "u", mc.label, horizon, count_kind, count_ub);
  blk.y = Series(b, "y", "y", mc.label, horizon, count_kind, count_ub);
  blk.z = Series(b, "z", "z", mc.label, horizon, count_kind, count_ub);
  blk.p = Series(b, "p", "p", mc.label, horizon, VarKind::kContinuous, kInf);
  blk.p_hat =
      Series(b, "ph", "p_hat", mc.label, horizon, VarKind::kContinuous, kInf);
  blk.r_plus =
      Series(b, "rp", "r_plus", mc.label, horizon, VarKind::kContinuous, kInf);
  blk.r_minus =
      Series(b, "rm", "r_minus", mc.label, horizon, VarKind::kContinuous, kInf);
  if (slot_resolved) {
    blk.u_slot = SlotSeries(b, "ut", "u_tilde", mc.label, G, horizon,
                            VarKind::kBinary, 1.0);
    blk.p_slot = SlotSeries(b, "pt", "p_tilde", mc.label, G, horizon,
                            VarKind::kContinuous, kInf);
    blk.r_plus_slot = SlotSeries(b, "rpt", "r_tilde_plus", mc.label, G, horizon,
                                 VarKind::kContinuous, kInf);
    blk.r_minus_slot = SlotSeries(b, "rmt", "r_tilde_minus", mc.label, G,
                                  horizon, VarKind::kContinuous, kInf);
  }
  return blk;
}

void AddCommitmentLogic(ModelBuilder& b, const ModelCluster& mc,
                        const ClusterBlock& blk, int horizon) {
  const ClusterSpec& c = mc.spec;
  for (int t = 1; t <= horizon; ++t) {
    const int i = t - 1;
    std::vector<Entry> terms = {{blk.u[i], 1.0}, {blk.y[i], -1.0},
                                {blk.z[i], 1.0}};
    double rhs = c.init_online;
    if (t > 1) {
      terms.push_back({blk.u[i - 1], -1.0});
      rhs = 0.0;
    }
    b.AddRow(RowName("eq01", mc.label, t), "eq01", std::move(terms),
             Sense::kEqual, rhs);
  }
  // Windows are truncated at t = 1 for t < TU (t < TD).
  for (int t = 1; t <= horizon; ++t) {
    std::vector<Entry> terms = {{blk.u[t - 1], -1.0}};
    for (int s = std::max(1, t - c.min_up + 1); s <= t; ++s) {
      terms.push_back({blk.y[s - 1], 1.0});
    }
    b.AddRow(RowName("eq02", mc.label, t), "eq02", std::move(terms),
             Sense::kLessEqual, 0.0);
  }
  for (int t = 1; t <= horizon; ++t) {
    std::vector<Entry> terms = {{blk.u[t - 1], 1.0}};
    for (int s = std::max(1, t - c.min_down + 1); s <= t; ++s) {
      terms.push_back({blk.z[s - 1], 1.0});
    }
    b.AddRow(RowName("eq03", mc.label, t), "eq03", std::move(terms),
             Sense::kLessEqual, c.unit_count);
  }
}

void AddClusterCapacity(ModelBuilder& b, const ModelCluster& mc,
                        const ClusterBlock& blk, int horizon,
                        bool with_min_output) {
  const ClusterSpec& c = mc.spec;
  const double span = c.p_max - c.p_min;
  for (int t = 1; t <= horizon; ++t) {
    const int i = t - 1;
    // Shutdowns after the horizon are not modeled: z_{T+1} = 0.
    auto next_z = [&](double coef) -> std::vector<Entry> {
      if (t == horizon) return {};
      return {{blk.z[i + 1], coef}};
    };
    std::vector<Entry> base = {
        {blk.p[i], 1.0}, {blk.r_plus[i], 1.0}, {blk.u[i], -span}};
    if (c.min_up >= 2) {
      auto terms = base;
      terms.push_back({blk.y[i], c.p_max - c.su_cap});
      for (Entry e : next_z(c.p_max - c.sd_cap)) terms.push_back(e);
      b.AddRow(RowName("eq04", mc.label, t), "eq04", std::move(terms),
               Sense::kLessEqual, 0.0);
    } else {
      auto t5 = base;
      for (Entry e : next_z(c.p_max - c.sd_cap)) t5.push_back(e);
      t5.push_back({blk.y[i], std::max(c.sd_cap - c.su_cap, 0.0)});
      b.AddRow(RowName("eq05", mc.label, t), "eq05", std::move(t5),
               Sense::kLessEqual, 0.0);
      auto t6 = base;
      t6.push_back({blk.y[i], c.p_max - c.su_cap});
      for (Entry e : next_z(std::max(c.su_cap - c.sd_cap, 0.0))) t6.push_back(e);
      b.AddRow(RowName("eq06", mc.label, t), "eq06", std::move(t6),
               Sense::kLessEqual, 0.0);
    }
  }
  if (with_min_output) {
    for (int t = 1; t <= horizon; ++t) {
      b.AddRow(RowName("eq07", mc.label, t), "eq07",
               {{blk.p[t - 1], 1.0}, {blk.r_minus[t - 1], -1.0}},
               Sense::kGreaterEqual, 0.0);
    }
  }
  for (int t = 1; t <= horizon; ++t) {
    b.AddRow(RowName("eq08", mc.label, t), "eq08",
             {{blk.p_hat[t - 1], 1.0},
              {blk.u[t - 1], -c.p_min},
              {blk.p[t - 1], -1.0}},
             Sense::kEqual, 0.0);
  }
}

void AddClusterRamps(ModelBuilder& b, const ModelCluster& mc,
                     const ClusterBlock& blk, int horizon) {
  const ClusterSpec& c = mc.spec;
  for (int t = 1; t <= horizon; ++t) {
    const int i = t - 1;
    std::vector<Entry> terms = {
        {blk.p[i], 1.0}, {blk.r_plus[i], 1.0}, {blk.u[i], -c.ramp_up}};
    double rhs = c.init_power_above_min;
    if (t > 1) {
      terms.push_back({blk.p[i - 1], -1.0});
      rhs = 0.0;
    }
    b.AddRow(RowName("eq09", mc.label, t), "eq09", std::move(terms),
             Sense::kLessEqual, rhs);
  }
  for (int t = 1; t <= horizon; ++t) {
    const int i = t - 1;
    std::vector<Entry> terms = {{blk.p[i], -1.0}, {blk.r_minus[i], 1.0}};
    double rhs = c.ramp_down * c.init_online - c.init_power_above_min;
    if (t > 1) {
      terms.push_back({blk.p[i - 1], 1.0});
      terms.push_back({blk.u[i - 1], -c.ramp_down});
      rhs = 0.0;
    }
    b.AddRow(RowName("eq10", mc.label, t), "eq10", std::move(terms),
             Sense::kLessEqual, rhs);
  }
}

void AddUnitOrdering(ModelBuilder& b, const ModelCluster& mc,
                     const ClusterBlock& blk, int horizon) {
  const int G = mc.spec.unit_count;
  for (int t = 1; t <= horizon; ++t) {
    b.AddRow(RowName("eq11", mc.label, t), "eq11",
             {{blk.u_slot[0][t - 1], 1.0}}, Sense::kLessEqual, 1.0);
  }
  for (int g = 1; g < G; ++g) {
    for (int t = 1; t <= horizon; ++t) {
      b.AddRow(SlotRowName("eq12", mc.label, g, t), "eq12",
               {{blk.u_slot[g][t - 1], 1.0}, {blk.u_slot[g - 1][t - 1], -1.0}},
               Sense::kLessEqual, 0.0);
    }
  }
  for (int t = 1; t <= horizon; ++t) {
    b.AddRow(RowName("eq13", mc.label, t), "eq13",
             {{blk.u_slot[G - 1][t - 1], 1.0}}, Sense::kGreaterEqual, 0.0);
  }
}

void AddUnitCapacity(ModelBuilder& b, const ModelCluster& mc,
                     const ClusterBlock& blk, int horizon,
                     bool with_plain_capacity) {
  const ClusterSpec& c = mc.spec;
  const int G = c.unit_count;
  if (with_plain_capacity) {
    for (int g = 1; g <= G; ++g) {
      for (int t = 1; t <= horizon; ++t) {
        const int i = t - 1;
        b.AddRow(SlotRowName("eq14", mc.label, g, t), "eq14",
                 {{blk.p_slot[g - 1][i], 1.0},
                  {blk.r_plus_slot[g - 1][i], 1.0},
                  {blk.u_slot[g - 1][i], -c.headroom()}},
                 Sense::kLessEqual, 0.0);
      }
    }
  }
  for (int g = 1; g <= G; ++g) {
    for (int t = 1; t <= horizon; ++t) {
      const int i = t - 1;
      b.AddRow(SlotRowName("eq15", mc.label, g, t), "eq15",
               {{blk.p_slot[g - 1][i], 1.0}, {blk.r_minus_slot[g - 1][i], -1.0}},
               Sense::kGreaterEqual, 0.0);
    }
  }
}

void AddAggregation(ModelBuilder& b, const ModelCluster& mc,
                    const ClusterBlock& blk, int horizon) {
  const int G = mc.spec.unit_count;
  auto link = [&](std::string_view tag, const std::vector<int>& total,
                  const std::vector<std::vector<int>>& parts) {
    for (int t = 1; t <= horizon; ++t) {
      std::vector<Entry> terms = {{total[t - 1], 1.0}};
      for (int g = 0; g < G; ++g) terms.push_back({parts[g][t - 1], -1.0});
      b.AddRow(RowName(tag, mc.label, t), std::string(tag), std::move(terms),
               Sense::kEqual, 0.0);
    }
  };
  link("eq16", blk.u, blk.u_slot);
  link("eq17", blk.r_plus, blk.r_plus_slot);
  link("eq18", blk.r_minus, blk.r_minus_slot);
  link("eq19", blk.p, blk.p_slot);
}

void AddUnitSuSdCapacity(ModelBuilder& b, const ModelCluster& mc,
                         const ClusterBlock& blk, int horizon) {
  const ClusterSpec& c = mc.spec;
  const int G = c.unit_count;
  const SlotStart start = InitialSlots(c);
  for (int g = 1; g <= G; ++g) {
    const auto& us = blk.u_slot[g - 1];
    for (int t = 1; t <= horizon; ++t) {
      const int i = t - 1;
      const std::vector<Entry> lhs = {{blk.p_slot[g - 1][i], 1.0},
                                      {blk.r_plus_slot[g - 1][i], 1.0}};
      // Previous-hour slot state: a variable, or a constant at t = 1.
      auto with_prev = [&](std::vector<Entry> terms, double coef,
                           double& rhs) {
        if (t > 1) {
          terms.push_back({us[i - 1], -coef});
        } else {
          rhs += coef * start.on[g - 1];
        }
        return terms;
      };
      // ũ_{g,T+1} is taken equal to ũ_{g,T}.
      const int next = t < horizon ? i + 1 : i;
      if (c.min_up >= 2) {
        double rhs20 = 0.0;
        auto t20 = lhs;
        t20.push_back({us[i], -(c.su_cap - c.p_min)});
        t20 = with_prev(std::move(t20), c.p_max - c.su_cap, rhs20);
        b.AddRow(SlotRowName("eq20", mc.label, g, t), "eq20", std::move(t20),
                 Sense::kLessEqual, rhs20);
        auto t21 = lhs;
        t21.push_back({us[i], -(c.sd_cap - c.p_min)});
        t21.push_back({us[next], -(c.p_max - c.sd_cap)});
        b.AddRow(SlotRowName("eq21", mc.label, g, t), "eq21", std::move(t21),
                 Sense::kLessEqual, 0.0);
      } else {
        double rhs22 = 0.0;
        auto t22 = lhs;
        t22.push_back({us[i], -(c.su_cap - c.p_max + c.sd_cap - c.p_min)});
        t22.push_back({us[next], -(c.p_max - c.sd_cap)});
        t22 = with_prev(std::move(t22), c.p_max - c.su_cap, rhs22);
        b.AddRow(SlotRowName("eq22", mc.label, g, t), "eq22", std::move(t22),
                 Sense::kLessEqual, rhs22);
      }
    }
  }
}

void AddUnitRamps(ModelBuilder& b, const ModelCluster& mc,
                  const ClusterBlock& blk, int horizon) {
  const ClusterSpec& c = mc.spec;
  const int G = c.unit_count;
  const SlotStart start = InitialSlots(c);
  for (int g = 1; g <= G; ++g) {
    const auto& us = blk.u_slot[g - 1];
    const auto& ps = blk.p_slot[g - 1];
    for (int t = 1; t <= horizon; ++t) {
      const int i = t - 1;
      std::vector<Entry> terms = {{ps[i], 1.0},
                                  {blk.r_plus_slot[g - 1][i], 1.0},
                                  {us[i], -c.ramp_up}};
      double rhs = start.p[g - 1];
      if (t > 1) {
        terms.push_back({ps[i - 1], -1.0});
        rhs = 0.0;
      }
      b.AddRow(SlotRowName("eq23", mc.label, g, t), "eq23", std::move(terms),
               Sense::kLessEqual, rhs);
    }
    for (int t = 1; t <= horizon; ++t) {
      const int i = t - 1;
      std::vector<Entry> terms = {{ps[i], -1.0},
                                  {blk.r_minus_slot[g - 1][i], 1.0}};
      double rhs = c.ramp_down * start.on[g - 1] - start.p[g - 1];
      if (t > 1) {
        terms.push_back({ps[i - 1], 1.0});
        terms.push_back({us[i - 1], -c.ramp_down});
        rhs = 0.0;
      }
      b.AddRow(SlotRowName("eq24", mc.label, g, t), "eq24", std::move(terms),
               Sense::kLessEqual, rhs);
    }
  }
}

void AddSystemConstraints(ModelBuilder& b, const SystemInstance& instance,
                          const std::vector<ModelCluster>& clusters,
                          const std::vector<ClusterBlock>& blocks) {
  const int T = instance.horizon;
  const bool renewables = instance.renewable_profile.has_value();
  std::vector<int> shed, curtail, short_up, short_down;
  for (int t = 1; t <= T; ++t) {
    shed.push_back(b.AddVariable(
        {SystemVarName("shed", t), VarKind::kContinuous, 0.0, kInf, "shed"}));
  }
  if (renewables) {
    for (int t = 1; t <= T; ++t) {
      curtail.push_back(b.AddVariable({SystemVarName("curt", t),
                                       VarKind::kContinuous, 0.0,
                                       (*instance.renewable_profile)[t - 1],
                                       "curtail"}));
    }
  }
  for (int t = 1; t <= T; ++t) {
    short_up.push_back(b.AddVariable({SystemVarName("sru", t),
                                      VarKind::kContinuous, 0.0, kInf,
                                      "short_up"}));
  }
  for (int t = 1; t <= T; ++t) {
    short_down.push_back(b.AddVariable({SystemVarName("srd", t),
                                        VarKind::kContinuous, 0.0, kInf,
                                        "short_down"}));
  }

  for (int t = 1; t <= T; ++t) {
    const int i = t - 1;
    std::vector<Entry> bal, up, down;
    for (const ClusterBlock& blk : blocks) {
      bal.push_back({blk.p_hat[i], 1.0});
      up.push_back({blk.r_plus[i], 1.0});
      down.push_back({blk.r_minus[i], 1.0});
    }
    bal.push_back({shed[i], 1.0});
    double net = instance.demand[i];
    if (renewables) {
      bal.push_back({curtail[i], -1.0});
      net -= (*instance.renewable_profile)[i];
    }
    up.push_back({short_up[i], 1.0});
    down.push_back({short_down[i], 1.0});
    b.AddRow(SystemVarName("sysbal", t), "sysbal", std::move(bal),
             Sense::kEqual, net);
    b.AddRow(SystemVarName("sysrup", t), "sysrup", std::move(up),
             Sense::kGreaterEqual, instance.reserve_up_req[i]);
    b.AddRow(SystemVarName("sysrdn", t), "sysrdn", std::move(down),
             Sense::kGreaterEqual, instance.reserve_down_req[i]);
  }

  for (size_t k = 0; k < clusters.size(); ++k) {
    const ClusterSpec& c = clusters[k].spec;
    const ClusterBlock& blk = blocks[k];
    for (int i = 0; i < T; ++i) {
      b.AddObjective(blk.u[i], c.cost_fixed);
      b.AddObjective(blk.p_hat[i], c.cost_variable);
      b.AddObjective(blk.y[i], c.cost_startup);
      b.AddObjective(blk.z[i], c.cost_shutdown);
    }
  }
  for (int i = 0; i < T; ++i) {
    b.AddObjective(shed[i], instance.cost_shed);
    if (renewables) b.AddObjective(curtail[i], instance.cost_curtailment);
    b.AddObjective(short_up[i], instance.cost_reserve_shortfall);
    b.AddObjective(short_down[i], instance.cost_reserve_shortfall);
  }
}

MilpModel BuildFormulation(const SystemInstance& instance, Variant variant,
                           const FormulationOptions& options) {
  RequireValid(instance);
  const int T = instance.horizon;
  const auto clusters = ModelClusters(instance, variant, options);
  const bool slots = IsSlotResolved(variant);
  ModelBuilder b;
  std::vector<ClusterBlock> blocks;
  for (const ModelCluster& mc : clusters) {
    blocks.push_back(AddClusterVariables(b, mc, T, slots));
  }
  for (size_t k = 0; k < clusters.size(); ++k) {
    const ModelCluster& mc = clusters[k];
    const ClusterBlock& blk = blocks[k];
    AddCommitmentLogic(b, mc, blk, T);
    if (!slots) {
      AddClusterCapacity(b, mc, blk, T, /*with_min_output=*/true);
      AddClusterRamps(b, mc, blk, T);
      continue;
    }
    AddClusterCapacity(b, mc, blk, T, /*with_min_output=*/false);
    AddUnitOrdering(b, mc, blk, T);
    AddUnitCapacity(b, mc, blk, T,
                    /*with_plain_capacity=*/variant == Variant::kPCUC_S);
    AddAggregation(b, mc, blk, T);
    if (variant != Variant::kPCUC_S) AddUnitSuSdCapacity(b, mc, blk, T);
    if (variant == Variant::kPCUC_R) {
      AddClusterRamps(b, mc, blk, T);
    } else {
      AddUnitRamps(b, mc, blk, T);
    }
  }
  AddSystemConstraints(b, instance, clusters, blocks);
  return std::move(b).Build({std::string(ToString(variant)),
                             options.instance_id});
}

std::set<std::string> ExpectedTags(const SystemInstance& instance,
                                   Variant variant) {
  std::set<std::string> tags = {"eq01", "eq02", "eq03", "eq08",
                                "sysbal", "sysrup", "sysrdn"};
  bool any_tu2 = false, any_tu1 = false, any_multi = false;
  for (const ClusterSpec& c : instance.clusters) {
    (c.min_up >= 2 ? any_tu2 : any_tu1) = true;
    any_multi |= c.unit_count >= 2;
  }
  if (any_tu2) tags.insert("eq04");
  if (any_tu1) tags.insert({"eq05", "eq06"});
  if (!IsSlotResolved(variant)) {
    tags.insert({"eq07", "eq09", "eq10"});
    return tags;
  }
  tags.insert({"eq11", "eq13", "eq15", "eq16", "eq17", "eq18", "eq19"});
  if (any_multi) tags.insert("eq12");
  if (variant == Variant::kPCUC_S) {
    tags.insert("eq14");
  } else {
    if (any_tu2) tags.insert({"eq20", "eq21"});
    if (any_tu1) tags.insert("eq22");
  }
  if (variant == Variant::kPCUC_R) {
    tags.insert({"eq09", "eq10"});
  } else {
    tags.insert({"eq23", "eq24"});
  }
  return tags;
}

MilpModel BuildOrderedSlotPolytope(const ClusterSpec& cluster, int horizon) {
  ModelBuilder b;
  const ModelCluster mc{"c1", 0, cluster};
  const ClusterBlock blk = AddClusterVariables(b, mc, horizon, true);
  AddUnitOrdering(b, mc, blk, horizon);
  AddUnitCapacity(b, mc, blk, horizon, /*with_plain_capacity=*/true);
  for (int t = 1; t <= horizon; ++t) {
    std::vector<Entry> u = {{blk.u[t - 1], 1.0}};
    std::vector<Entry> p = {{blk.p[t - 1], 1.0}};
    for (int g = 0; g < cluster.unit_count; ++g) {
      u.push_back({blk.u_slot[g][t - 1], -1.0});
      p.push_back({blk.p_slot[g][t - 1], -1.0});
    }
    b.AddRow(RowName("eq16", mc.label, t), "eq16", std::move(u), Sense::kEqual,
             0.0);
    b.AddRow(RowName("eq19", mc.label, t), "eq19", std::move(p), Sense::kEqual,
             0.0);
  }
  return std::move(b).Build({"slot_polytope", cluster.id});
}

}  // namespace ucflex
