#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "nslice/model.hpp"
#include "nslice/placement.hpp"

namespace nslice {

struct PathFlow {
    std::vector<std::string> nodes;  // a single node for a zero-length segment
    double fraction = 0.0;
};

struct CycleFlow {
    std::vector<std::string> nodes;
    double value = 0.0;
};

struct Decomposition {
    std::vector<PathFlow> paths;
    std::vector<CycleFlow> cycles;  // discarded circulation, reported for audit
};

struct DecompositionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Splits a unit arc-flow (link_flow indexed like network.links) from origin to
// target into paths by repeatedly peeling the minimum-delay path off the
// positive-flow subgraph. Leftover circulation is returned as cycles. Throws
// DecompositionError when residual flow cannot reach the target, which signals
// a conservation violation upstream.
Decomposition decompose_flow(const Network& network,
                             const std::vector<double>& link_flow,
                             const std::string& origin, const std::string& target);

struct RefinementConfig {
    double rho = 2.0;
    int iter_max = 5;
    double prune_threshold = 0.01;  // drop paths below this fraction if capacity allows
};

struct SegmentRoute {
    int service = 0;
    int segment = 0;  // 0 .. chain length
    std::vector<PathFlow> paths;
    double delay = 0.0;  // max delay over the used paths
    std::vector<CycleFlow> cycles_discarded;
};

struct RoutingSolution {
    std::vector<SegmentRoute> segments;  // ordered by (service, segment)
    std::vector<double> service_delay;   // recomputed end-to-end delay per service
    std::vector<double> weights;         // final refinement weights
    int iterations_used = 0;
};

enum class RoutingOutcome { Feasible, Failed, PlacementInfeasible, NumericalFailure };

struct RoutingResult {
    RoutingOutcome outcome = RoutingOutcome::Failed;
    RoutingSolution solution;  // best/last iterate when not Feasible
    int lp_solve_count = 0;
    std::vector<std::vector<double>> delay_history;  // per iteration, per service
};

// End-to-end delay of one service: per segment the max used-path delay, plus
// the processing delay of its hosts. segment_paths[s] holds segment s's paths.
double recompute_delay(const Instance& instance, int service,
                       const PlacementSolution& placement,
                       const std::vector<std::vector<PathFlow>>& segment_paths);

// Iterative LP refinement under a fixed placement: solve the relaxation with
// placement variables pinned and a weighted communication-delay objective,
// decompose, recompute true delays, and double the weight of every service
// over budget until all budgets hold or iter_max is reached.
RoutingResult refine_routing(const Instance& instance,
                             const PlacementSolution& placement,
                             const RefinementConfig& config = {});

}  // namespace nslice
