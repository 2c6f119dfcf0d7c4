#ifndef UCFLEX_SCHEDULE_H_
#define UCFLEX_SCHEDULE_H_

#include <string>
#include <vector>

#include "ucflex/formulation.h"
#include "ucflex/instance.h"
#include "ucflex/milp_ir.h"

namespace ucflex {

// Per-slot trajectories, all of length T.
struct SlotSchedule {
  std::vector<double> u, p, r_plus, r_minus;
};

struct ClusterSchedule {
  std::string label;
  int source = 0;
  int unit_count = 1;
  std::vector<double> u, y, z, p, p_hat, r_plus, r_minus;
  std::vector<SlotSchedule> slots;  // empty unless slot-resolved
};

struct Schedule {
  Variant variant = Variant::kCCUC;
  int horizon = 0;
  std::vector<ClusterSchedule> clusters;  // one per ModelCluster
  std::vector<double> shed, curtail, short_up, short_down;
};

// Reads a solution point back into trajectories. Commitment counts are
// rounded; values further than 1e-6 from an integer raise ValidationError,
// missing variables raise ModelError.
Schedule ExtractSchedule(const SystemInstance& instance, Variant variant,
                         const Point& point);

struct FeasibilityIssue {
  std::string tag;      // equation family, "bound", "integrality" or "shape"
  std::string cluster;  // model cluster label; empty for system rows
  int t = 0;            // 1-based period, 0 when not applicable
  int g = 0;            // 1-based slot, 0 when not applicable
  double amount = 0.0;
};

// Re-checks every equation family of the variant by direct arithmetic on the
// schedule, independently of the MILP model. Empty result means feasible.
std::vector<FeasibilityIssue> CheckScheduleFeasibility(
    const SystemInstance& instance, Variant variant, const Schedule& schedule,
    double tol = kFeasibilityTol);

// Splits cluster trajectories of a clustered schedule over slots: the first
// u_t slots are on, and output and reserves fill slots in order. Used to
// examine what a classic clustered solution asks of individual units.
Schedule DisaggregateToSlots(const SystemInstance& instance,
                             const Schedule& schedule);

}  // namespace ucflex

#endif  // UCFLEX_SCHEDULE_H_
