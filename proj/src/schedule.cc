#include "ucflex/schedule.h"

#include <algorithm>
#include <cmath>

#include "ucflex/errors.h"

namespace ucflex {

namespace {

double Lookup(const Point& point, const std::string& name) {
  auto it = point.find(name);
  if (it == point.end()) {
    throw ModelError("solution has no value for variable \"" + name + "\"");
  }
  return it->second;
}

double RoundIntegral(double v, const std::string& name) {
  const double r = std::round(v);
  if (std::abs(v - r) > kFeasibilityTol) {
    throw ValidationError("variable \"" + name + "\" = " + std::to_string(v) +
                          " is not integral");
  }
  return r;
}

}  // namespace

Schedule ExtractSchedule(const SystemInstance& instance, Variant variant,
                         const Point& point) {
  const int T = instance.horizon;
  Schedule s;
  s.variant = variant;
  s.horizon = T;
  for (const ModelCluster& mc : ModelClusters(instance, variant)) {
    ClusterSchedule cs;
    cs.label = mc.label;
    cs.source = mc.source;
    cs.unit_count = mc.spec.unit_count;
    for (int t = 1; t <= T; ++t) {
      auto count = [&](std::string_view group) {
        const std::string name = ClusterVarName(group, mc.label, t);
        return RoundIntegral(Lookup(point, name), name);
      };
      auto value = [&](std::string_view group) {
        return Lookup(point, ClusterVarName(group, mc.label, t));
      };
      cs.u.push_back(count("u"));
      cs.y.push_back(count("y"));
      cs.z.push_back(count("z"));
      cs.p.push_back(value("p"));
      cs.p_hat.push_back(value("ph"));
      cs.r_plus.push_back(value("rp"));
      cs.r_minus.push_back(value("rm"));
    }
    if (IsSlotResolved(variant)) {
      for (int g = 1; g <= mc.spec.unit_count; ++g) {
        SlotSchedule slot;
        for (int t = 1; t <= T; ++t) {
          const std::string un = SlotVarName("ut", mc.label, g, t);
          slot.u.push_back(RoundIntegral(Lookup(point, un), un));
          slot.p.push_back(Lookup(point, SlotVarName("pt", mc.label, g, t)));
          slot.r_plus.push_back(
              Lookup(point, SlotVarName("rpt", mc.label, g, t)));
          slot.r_minus.push_back(
              Lookup(point, SlotVarName("rmt", mc.label, g, t)));
        }
        cs.slots.push_back(std::move(slot));
      }
    }
    s.clusters.push_back(std::move(cs));
  }
  for (int t = 1; t <= T; ++t) {
    s.shed.push_back(Lookup(point, SystemVarName("shed", t)));
    s.curtail.push_back(instance.renewable_profile
                            ? Lookup(point, SystemVarName("curt", t))
                            : 0.0);
    s.short_up.push_back(Lookup(point, SystemVarName("sru", t)));
    s.short_down.push_back(Lookup(point, SystemVarName("srd", t)));
  }
  return s;
}

namespace {

class Checker {
 public:
  Checker(const SystemInstance& instance, Variant variant, double tol)
      : instance_(instance), variant_(variant), tol_(tol),
        T_(instance.horizon) {}

  std::vector<FeasibilityIssue> Run(const Schedule& s) {
    const auto clusters = ModelClusters(instance_, variant_);
    if (s.clusters.size() != clusters.size() || s.horizon != T_) {
      Flag("shape", "", 0, 0, 1.0);
      return std::move(issues_);
    }
    for (size_t k = 0; k < clusters.size(); ++k) {
      CheckCluster(clusters[k], s.clusters[k]);
    }
    CheckSystem(s);
    return std::move(issues_);
  }

 private:
  void Flag(const std::string& tag, const std::string& cluster, int t, int g,
            double amount) {
    if (amount > tol_) issues_.push_back({tag, cluster, t, g, amount});
  }

  bool SizesOk(const std::string& label,
               std::initializer_list<const std::vector<double>*> series) {
    for (const auto* v : series) {
      if (static_cast<int>(v->size()) != T_) {
        Flag("shape", label, 0, 0, 1.0);
        return false;
      }
    }
    return true;
  }

  void CheckCluster(const ModelCluster& mc, const ClusterSchedule& cs) {
    const ClusterSpec& c = mc.spec;
    const std::string& L = mc.label;
    if (!SizesOk(L, {&cs.u, &cs.y, &cs.z, &cs.p, &cs.p_hat, &cs.r_plus,
                     &cs.r_minus})) {
      return;
    }
    const double G = c.unit_count;
    const double span = c.p_max - c.p_min;
    auto u = [&](int t) { return t == 0 ? c.init_online : cs.u[t - 1]; };
    auto p = [&](int t) { return t == 0 ? c.init_power_above_min : cs.p[t - 1]; };
    auto z_next = [&](int t) { return t < T_ ? cs.z[t] : 0.0; };

    for (int t = 1; t <= T_; ++t) {
      const int i = t - 1;
      for (double v : {cs.u[i], cs.y[i], cs.z[i], cs.p[i], cs.p_hat[i],
                       cs.r_plus[i], cs.r_minus[i]}) {
        Flag("bound", L, t, 0, -v);
      }
      Flag("bound", L, t, 0, cs.u[i] - G);
      for (double v : {cs.u[i], cs.y[i], cs.z[i]}) {
        Flag("integrality", L, t, 0, std::abs(v - std::round(v)));
      }
      Flag("eq01", L, t, 0, std::abs(u(t) - u(t - 1) - cs.y[i] + cs.z[i]));
      double ys = 0.0, zs = 0.0;
      for (int s = std::max(1, t - c.min_up + 1); s <= t; ++s) ys += cs.y[s - 1];
      for (int s = std::max(1, t - c.min_down + 1); s <= t; ++s) {
        zs += cs.z[s - 1];
      }
      Flag("eq02", L, t, 0, ys - u(t));
      Flag("eq03", L, t, 0, zs - (G - u(t)));

      const double out = cs.p[i] + cs.r_plus[i];
      if (c.min_up >= 2) {
        Flag("eq04", L, t, 0,
             out - (span * u(t) - (c.p_max - c.su_cap) * cs.y[i] -
                    (c.p_max - c.sd_cap) * z_next(t)));
      } else {
        Flag("eq05", L, t, 0,
             out - (span * u(t) - (c.p_max - c.sd_cap) * z_next(t) -
                    std::max(c.sd_cap - c.su_cap, 0.0) * cs.y[i]));
        Flag("eq06", L, t, 0,
             out - (span * u(t) - (c.p_max - c.su_cap) * cs.y[i] -
                    std::max(c.su_cap - c.sd_cap, 0.0) * z_next(t)));
      }
      Flag("eq08", L, t, 0, std::abs(cs.p_hat[i] - c.p_min * u(t) - cs.p[i]));
      if (!IsSlotResolved(variant_)) {
        Flag("eq07", L, t, 0, cs.r_minus[i] - cs.p[i]);
      }
      if (!IsSlotResolved(variant_) || variant_ == Variant::kPCUC_R) {
        Flag("eq09", L, t, 0,
             p(t) - p(t - 1) + cs.r_plus[i] - c.ramp_up * u(t));
        Flag("eq10", L, t, 0,
             -p(t) + p(t - 1) + cs.r_minus[i] - c.ramp_down * u(t - 1));
      }
    }
    if (IsSlotResolved(variant_)) CheckSlots(mc, cs);
  }

  void CheckSlots(const ModelCluster& mc, const ClusterSchedule& cs) {
    const ClusterSpec& c = mc.spec;
    const std::string& L = mc.label;
    const int G = c.unit_count;
    if (static_cast<int>(cs.slots.size()) != G) {
      Flag("shape", L, 0, 0, 1.0);
      return;
    }
    for (const SlotSchedule& sl : cs.slots) {
      if (!SizesOk(L, {&sl.u, &sl.p, &sl.r_plus, &sl.r_minus})) return;
    }
    // Slot start: slots 1..u0 on, p0 filled in slot order.
    std::vector<double> on0(G, 0.0), p0(G, 0.0);
    double left = c.init_power_above_min;
    for (int g = 0; g < c.init_online; ++g) {
      on0[g] = 1.0;
      p0[g] = std::min(left, c.p_max - c.p_min);
      left -= p0[g];
    }
    const double span = c.p_max - c.p_min;

    for (int t = 1; t <= T_; ++t) {
      const int i = t - 1;
      double su = 0.0, sp = 0.0, srp = 0.0, srm = 0.0;
      for (int g = 1; g <= G; ++g) {
        const SlotSchedule& sl = cs.slots[g - 1];
        auto ut = [&](int tt) {
          if (tt == 0) return on0[g - 1];
          return sl.u[std::min(tt, T_) - 1];  // ũ_{T+1} := ũ_T
        };
        auto pt = [&](int tt) { return tt == 0 ? p0[g - 1] : sl.p[tt - 1]; };
        for (double v : {sl.u[i], sl.p[i], sl.r_plus[i], sl.r_minus[i]}) {
          Flag("bound", L, t, g, -v);
        }
        Flag("bound", L, t, g, sl.u[i] - 1.0);
        Flag("integrality", L, t, g, std::abs(sl.u[i] - std::round(sl.u[i])));
        if (g == 1) Flag("eq11", L, t, g, sl.u[i] - 1.0);
        if (g < G) Flag("eq12", L, t, g, cs.slots[g].u[i] - sl.u[i]);
        if (g == G) Flag("eq13", L, t, g, -sl.u[i]);

        const double out = sl.p[i] + sl.r_plus[i];
        if (variant_ == Variant::kPCUC_S) {
          Flag("eq14", L, t, g, out - span * ut(t));
        }
        Flag("eq15", L, t, g, sl.r_minus[i] - sl.p[i]);
        if (variant_ != Variant::kPCUC_S) {
          if (c.min_up >= 2) {
            Flag("eq20", L, t, g,
                 out - ((c.su_cap - c.p_min) * ut(t) +
                        (c.p_max - c.su_cap) * ut(t - 1)));
            Flag("eq21", L, t, g,
                 out - ((c.sd_cap - c.p_min) * ut(t) +
                        (c.p_max - c.sd_cap) * ut(t + 1)));
          } else {
            Flag("eq22", L, t, g,
                 out - ((c.su_cap - c.p_max + c.sd_cap - c.p_min) * ut(t) +
                        (c.p_max - c.su_cap) * ut(t - 1) +
                        (c.p_max - c.sd_cap) * ut(t + 1)));
          }
        }
        if (variant_ != Variant::kPCUC_R) {
          Flag("eq23", L, t, g,
               pt(t) - pt(t - 1) + sl.r_plus[i] - c.ramp_up * ut(t));
          Flag("eq24", L, t, g,
               -pt(t) + pt(t - 1) + sl.r_minus[i] - c.ramp_down * ut(t - 1));
        }
        su += sl.u[i];
        sp += sl.p[i];
        srp += sl.r_plus[i];
        srm += sl.r_minus[i];
      }
      Flag("eq16", L, t, 0, std::abs(cs.u[i] - su));
      Flag("eq17", L, t, 0, std::abs(cs.r_plus[i] - srp));
      Flag("eq18", L, t, 0, std::abs(cs.r_minus[i] - srm));
      Flag("eq19", L, t, 0, std::abs(cs.p[i] - sp));
    }
  }

  void CheckSystem(const Schedule& s) {
    if (!SizesOk("", {&s.shed, &s.curtail, &s.short_up, &s.short_down})) return;
    for (int t = 1; t <= T_; ++t) {
      const int i = t - 1;
      double output = 0.0, up = 0.0, down = 0.0;
      for (const ClusterSchedule& cs : s.clusters) {
        output += cs.p_hat[i];
        up += cs.r_plus[i];
        down += cs.r_minus[i];
      }
      const double renewable =
          instance_.renewable_profile ? (*instance_.renewable_profile)[i] : 0.0;
      for (double v : {s.shed[i], s.curtail[i], s.short_up[i], s.short_down[i]}) {
        Flag("bound", "", t, 0, -v);
      }
      Flag("bound", "", t, 0, s.curtail[i] - renewable);
      Flag("sysbal", "", t, 0,
           std::abs(output + renewable - s.curtail[i] + s.shed[i] -
                    instance_.demand[i]));
      Flag("sysrup", "", t, 0,
           instance_.reserve_up_req[i] - up - s.short_up[i]);
      Flag("sysrdn", "", t, 0,
           instance_.reserve_down_req[i] - down - s.short_down[i]);
    }
  }

  const SystemInstance& instance_;
  Variant variant_;
  double tol_;
  int T_;
  std::vector<FeasibilityIssue> issues_;
};

}  // namespace

std::vector<FeasibilityIssue> CheckScheduleFeasibility(
    const SystemInstance& instance, Variant variant, const Schedule& schedule,
    double tol) {
  return Checker(instance, variant, tol).Run(schedule);
}

Schedule DisaggregateToSlots(const SystemInstance& instance,
                             const Schedule& schedule) {
  Schedule out = schedule;
  for (ClusterSchedule& cs : out.clusters) {
    const ClusterSpec& c = instance.clusters.at(cs.source);
    const int G = cs.unit_count;
    const double span = c.p_max - c.p_min;
    cs.slots.assign(G, SlotSchedule{});
    for (SlotSchedule& sl : cs.slots) {
      sl.u.assign(out.horizon, 0.0);
      sl.p.assign(out.horizon, 0.0);
      sl.r_plus.assign(out.horizon, 0.0);
      sl.r_minus.assign(out.horizon, 0.0);
    }
    for (int i = 0; i < out.horizon; ++i) {
      double p = cs.p[i], rp = cs.r_plus[i], rm = cs.r_minus[i];
      const int on = static_cast<int>(std::lround(cs.u[i]));
      for (int g = 0; g < G; ++g) {
        SlotSchedule& sl = cs.slots[g];
        sl.u[i] = g < on ? 1.0 : 0.0;
        // The last on-slot takes whatever is left so totals are preserved.
        const bool last = g == on - 1;
        if (g >= on) continue;
        sl.p[i] = last ? p : std::min(p, span);
        p -= sl.p[i];
        sl.r_plus[i] = last ? rp : std::min(rp, std::max(0.0, span - sl.p[i]));
        rp -= sl.r_plus[i];
        sl.r_minus[i] = last ? rm : std::min(rm, sl.p[i]);
        rm -= sl.r_minus[i];
      }
    }
  }
  return out;
}

}  // namespace ucflex
