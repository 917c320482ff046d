#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nslice/formulation.hpp"
#include "nslice/model.hpp"

namespace nslice {

// Binary placement: hosts[k][s-1] is the cloud node running position s of
// service k; activated is exactly the set of used nodes.
struct PlacementSolution {
    std::vector<std::vector<std::string>> hosts;
    std::set<std::string> activated;
};

struct TrailEntry {
    std::string variable;
    int direction = 1;   // 1 = fixed to one, 0 = flipped to zero
    std::string status;  // solver status after the decision
};

enum class PlacementOutcome { Feasible, Failed };

struct PlacementResult {
    PlacementOutcome outcome = PlacementOutcome::Failed;
    PlacementSolution solution;
    int lp_solve_count = 0;
    bool numerical_failure = false;
    std::string note;
    std::vector<TrailEntry> trail;
};

// Values within kIntTol of 0/1 count as integral.
inline constexpr double kIntTol = 1e-6;

// Largest strictly fractional unfixed x value; ties go to the lowest
// (service, position, cloud) triple. nullopt when everything is integral.
std::optional<int> select_candidate(const std::vector<double>& values,
                                    const VarIndex& index, const FixingSet& fixings);

// Iterative LP rounding: solve the relaxation, repeatedly pin the largest
// fractional placement variable to one (falling back to zero when that makes
// the LP infeasible) until the placement is binary.
PlacementResult round_placement(const Instance& instance);

// One-shot rounding baseline: a single LP solve, then an independent argmax
// per chain position with no re-solve. Fails whenever the result breaks node
// capacity.
PlacementResult baseline_round(const Instance& instance);

// Upper bound on LP solves for the rounding run: one initial solve plus one
// per placement variable.
long long placement_solve_budget(const Instance& instance);

}  // namespace nslice
