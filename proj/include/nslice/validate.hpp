#pragma once

#include "nslice/model.hpp"
#include "nslice/placement.hpp"
#include "nslice/routing.hpp"

namespace nslice {

// Independent feasibility checker. Deliberately recomputes everything from the
// raw instance data (integer arithmetic on rates/capacities where the data is
// integral, its own delay recomputation) and shares no logic with the solvers.
struct SolutionReport {
    std::vector<Violation> violations;
    std::vector<Violation> warnings;
    bool feasible() const { return violations.empty(); }
};

SolutionReport check_placement(const Instance& instance, const PlacementSolution& p);

SolutionReport check_routing(const Instance& instance, const PlacementSolution& p,
                             const RoutingSolution& r);

// Placement and routing checks combined.
SolutionReport check_solution(const Instance& instance, const PlacementSolution& p,
                              const RoutingSolution& r);

}  // namespace nslice
