#ifndef UCFLEX_FORMULATION_H_
#define UCFLEX_FORMULATION_H_

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ucflex/instance.h"
#include "ucflex/milp_ir.h"

namespace ucflex {

// IUC: every unit modeled on its own.
// CCUC: classic clustered model, integer commitment counts.
// PCUC: clustered model with ordered per-slot constraints.
// PCUC_S: PCUC without the per-slot startup/shutdown capability rows.
// PCUC_R: PCUC without the per-slot ramp rows (cluster ramps kept).
enum class Variant { kIUC, kCCUC, kPCUC_S, kPCUC_R, kPCUC };

inline constexpr std::array<Variant, 5> kAllVariants = {
    Variant::kIUC, Variant::kCCUC, Variant::kPCUC_S, Variant::kPCUC_R,
    Variant::kPCUC};

std::string_view ToString(Variant v);
// Accepts "PCUC_S" and "PCUC-S" spellings, case-insensitive.
std::optional<Variant> ParseVariant(std::string_view text);

inline bool IsSlotResolved(Variant v) {
  return v == Variant::kPCUC || v == Variant::kPCUC_S || v == Variant::kPCUC_R;
}

struct FormulationOptions {
  // Multiplicative noise half-width on cost_variable, per unit, IUC only.
  double iuc_cost_noise = 0.0;
  std::uint64_t noise_seed = 0;
  std::string instance_id = "instance";
};

// The unit groups a model is written over: each whole cluster for clustered
// variants, one group per physical unit (G = 1) for IUC. `spec` carries the
// group's own size, initial state and (possibly noisy) variable cost.
struct ModelCluster {
  std::string label;  // "c1" or, for IUC, "c1u2"
  int source = 0;     // index into SystemInstance::clusters
  ClusterSpec spec;
};

std::vector<ModelCluster> ModelClusters(const SystemInstance& instance,
                                        Variant variant,
                                        const FormulationOptions& options = {});

// Canonical variable names. Periods and slots are 1-based.
std::string ClusterVarName(std::string_view group, std::string_view label,
                           int t);
std::string SlotVarName(std::string_view group, std::string_view label, int g,
                        int t);
std::string SystemVarName(std::string_view group, int t);

// Variable indices of one model cluster. Slot vectors are indexed [g][t]
// (0-based) and empty for variants without slots.
struct ClusterBlock {
  std::vector<int> u, y, z, p, p_hat, r_plus, r_minus;
  std::vector<std::vector<int>> u_slot, p_slot, r_plus_slot, r_minus_slot;
};

ClusterBlock AddClusterVariables(ModelBuilder& b, const ModelCluster& mc,
                                 int horizon, bool slot_resolved);

// Equation families. Each emits rows tagged "eqNN" over t = 1..T (and slots
// g = 1..G where applicable); values before t = 1 come from the initial state.
void AddCommitmentLogic(ModelBuilder& b, const ModelCluster& mc,
                        const ClusterBlock& blk, int horizon);       // eq01-03
void AddClusterCapacity(ModelBuilder& b, const ModelCluster& mc,
                        const ClusterBlock& blk, int horizon,
                        bool with_min_output);                       // eq04-08
void AddClusterRamps(ModelBuilder& b, const ModelCluster& mc,
                     const ClusterBlock& blk, int horizon);          // eq09-10
void AddUnitOrdering(ModelBuilder& b, const ModelCluster& mc,
                     const ClusterBlock& blk, int horizon);          // eq11-13
void AddUnitCapacity(ModelBuilder& b, const ModelCluster& mc,
                     const ClusterBlock& blk, int horizon,
                     bool with_plain_capacity);                      // eq14-15
void AddAggregation(ModelBuilder& b, const ModelCluster& mc,
                    const ClusterBlock& blk, int horizon);           // eq16-19
void AddUnitSuSdCapacity(ModelBuilder& b, const ModelCluster& mc,
                         const ClusterBlock& blk, int horizon);      // eq20-22
void AddUnitRamps(ModelBuilder& b, const ModelCluster& mc,
                  const ClusterBlock& blk, int horizon);             // eq23-24

// Demand balance, reserve cover and the full objective.
void AddSystemConstraints(ModelBuilder& b, const SystemInstance& instance,
                          const std::vector<ModelCluster>& clusters,
                          const std::vector<ClusterBlock>& blocks);

// Throws ValidationError for invalid instances.
MilpModel BuildFormulation(const SystemInstance& instance, Variant variant,
                           const FormulationOptions& options = {});

// Constraint tags a model of this variant must contain, accounting for the
// TU >= 2 / TU = 1 split of each cluster.
std::set<std::string> ExpectedTags(const SystemInstance& instance,
                                   Variant variant);

// Slot polytope of one cluster in isolation: ordering (eq11-13), per-slot
// capacity (eq14-15) and the commitment / production sums (eq16, eq19), with
// no objective. Used to probe integrality of LP optima.
MilpModel BuildOrderedSlotPolytope(const ClusterSpec& cluster, int horizon);

}  // namespace ucflex

#endif  // UCFLEX_FORMULATION_H_
