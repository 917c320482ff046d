#include "nslice/placement.hpp"

#include <algorithm>

#include "nslice/validate.hpp"

namespace nslice {

namespace {

const char* status_name(LPStatus s) {
    switch (s) {
        case LPStatus::Optimal: return "optimal";
        case LPStatus::Infeasible: return "infeasible";
        case LPStatus::Unbounded: return "unbounded";
        case LPStatus::NumericalFailure: return "numerical-failure";
    }
    return "?";
}

// Extracts hosts/activated by thresholding a (near-)binary x vector at 0.5.
// Returns nullopt if some position has no host above threshold.
std::optional<PlacementSolution> extract(const Instance& instance, const VarIndex& ix,
                                         const std::vector<double>& values) {
    PlacementSolution sol;
    sol.hosts.resize(instance.services.size());
    for (int k = 0; k < ix.num_services(); ++k) {
        for (int s = 1; s <= ix.chain_length(k); ++s) {
            int host = -1;
            for (int v = 0; v < ix.num_clouds(); ++v) {
                if (values[ix.x_col(k, s, v)] > 0.5) {
                    host = v;
                    break;
                }
            }
            if (host < 0) return std::nullopt;
            const std::string& id = instance.network.cloud_nodes[host].id;
            sol.hosts[k].push_back(id);
            sol.activated.insert(id);
        }
    }
    return sol;
}

PlacementResult finish(const Instance& instance, const VarIndex& ix,
                       const std::vector<double>& values, PlacementResult result) {
    auto sol = extract(instance, ix, values);
    if (sol && check_placement(instance, *sol).feasible()) {
        result.outcome = PlacementOutcome::Feasible;
        result.solution = std::move(*sol);
    } else {
        result.outcome = PlacementOutcome::Failed;
        result.note = "rounded placement violates the placement constraints";
    }
    return result;
}

}  // namespace

long long placement_solve_budget(const Instance& instance) {
    long long chain_sum = 0;
    for (const auto& svc : instance.services) chain_sum += svc.chain_length();
    return 1 + static_cast<long long>(instance.network.cloud_nodes.size()) * chain_sum;
}

std::optional<int> select_candidate(const std::vector<double>& values,
                                    const VarIndex& index, const FixingSet& fixings) {
    int best = -1;
    double best_val = 0.0;
    for (int col = index.x_begin(); col < index.x_end(); ++col) {
        if (fixings.contains(col)) continue;
        double v = values[col];
        if (v <= kIntTol || v >= 1.0 - kIntTol) continue;
        if (v > best_val) {  // strict: ties keep the lowest column
            best_val = v;
            best = col;
        }
    }
    if (best < 0) return std::nullopt;
    return best;
}

PlacementResult round_placement(const Instance& instance) {
    PlacementResult result;
    Formulation f = build_relaxation(instance);
    const VarIndex& ix = f.index;

    LPSolution sol = solve_lp(f.model);
    result.lp_solve_count = 1;
    if (sol.status != LPStatus::Optimal) {
        result.outcome = PlacementOutcome::Failed;
        result.numerical_failure = sol.status == LPStatus::NumericalFailure;
        result.note = std::string("initial relaxation: ") + status_name(sol.status);
        return result;
    }

    FixingSet fixings;
    std::vector<double> values = sol.values;
    bool after_flip = false;
    while (auto candidate = select_candidate(values, ix, fixings)) {
        // Pin every variable already driven to one by the LP.
        for (int col = ix.x_begin(); col < ix.x_end(); ++col) {
            if (!fixings.contains(col) && values[col] >= 1.0 - kIntTol)
                fixings.set(col, true);
        }
        fixings.set(*candidate, true);
        LPModel fixed = apply_fixings(f.model, ix, fixings);
        sol = solve_lp(fixed, &sol.basis);
        ++result.lp_solve_count;
        const std::string& name = f.model.variables[*candidate].name;
        if (sol.status == LPStatus::Optimal) {
            result.trail.push_back({name, 1, "optimal"});
            values = sol.values;
            after_flip = false;
        } else if (sol.status == LPStatus::Infeasible) {
            result.trail.push_back({name, 1, "infeasible"});
            if (after_flip) {
                // The previous flip to zero was never certified feasible and
                // this solve cannot tell which fixing is to blame; stop.
                result.outcome = PlacementOutcome::Failed;
                result.note = "infeasible after a zero-flip; no backtracking";
                return result;
            }
            fixings.override_to_zero(*candidate);
            values[*candidate] = 0.0;
            result.trail.push_back({name, 0, "flipped"});
            after_flip = true;
        } else {
            result.outcome = PlacementOutcome::Failed;
            result.numerical_failure = sol.status == LPStatus::NumericalFailure;
            result.note = std::string("lp solve: ") + status_name(sol.status);
            result.trail.push_back({name, 1, status_name(sol.status)});
            return result;
        }
    }
    return finish(instance, ix, values, std::move(result));
}

PlacementResult baseline_round(const Instance& instance) {
    PlacementResult result;
    Formulation f = build_relaxation(instance);
    const VarIndex& ix = f.index;

    LPSolution sol = solve_lp(f.model);
    result.lp_solve_count = 1;
    if (sol.status != LPStatus::Optimal) {
        result.outcome = PlacementOutcome::Failed;
        result.numerical_failure = sol.status == LPStatus::NumericalFailure;
        result.note = std::string("initial relaxation: ") + status_name(sol.status);
        return result;
    }

    // Independent argmax per position; first cloud wins ties.
    std::vector<double> binary(f.model.num_vars(), 0.0);
    for (int k = 0; k < ix.num_services(); ++k) {
        for (int s = 1; s <= ix.chain_length(k); ++s) {
            int best = 0;
            for (int v = 1; v < ix.num_clouds(); ++v) {
                if (sol.values[ix.x_col(k, s, v)] > sol.values[ix.x_col(k, s, best)])
                    best = v;
            }
            binary[ix.x_col(k, s, best)] = 1.0;
        }
    }
    return finish(instance, ix, binary, std::move(result));
}

}  // namespace nslice
