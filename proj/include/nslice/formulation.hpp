#pragma once

#include <map>
#include <optional>
#include <stdexcept>

#include "nslice/lp.hpp"
#include "nslice/model.hpp"

namespace nslice {

// Column layout of the compact relaxation, in four contiguous blocks:
//   x[k,s,v]   placement fractions, s in 1..L_k, ordered (k, s, v)
//   y[v]       node activation
//   z[k,s,e]   per-link routing fractions, s in 0..L_k, ordered (k, s, link)
//   theta[k,s] segment communication delays, ordered (k, s in 0..L_k)
// Ascending column order inside the x block is exactly the lexicographic
// (service, position, cloud) order used for rounding tie-breaks.
class VarIndex {
public:
    VarIndex() = default;
    explicit VarIndex(const Instance& instance);

    int x_col(int k, int s, int v) const { return x_off_[k] + (s - 1) * clouds_ + v; }
    int y_col(int v) const { return y_start_ + v; }
    int z_col(int k, int s, int link) const { return z_off_[k] + s * links_ + link; }
    int theta_col(int k, int s) const { return theta_off_[k] + s; }

    int x_begin() const { return 0; }
    int x_end() const { return y_start_; }
    bool is_x_col(int col) const { return col >= 0 && col < y_start_; }

    struct XRef {
        int service;
        int position;  // 1-based chain position
        int cloud;
    };
    XRef x_ref(int col) const;

    int num_services() const { return static_cast<int>(chain_.size()); }
    int num_clouds() const { return clouds_; }
    int num_links() const { return links_; }
    int chain_length(int k) const { return chain_[k]; }
    int num_vars() const { return total_; }

private:
    int clouds_ = 0, links_ = 0, total_ = 0, y_start_ = 0;
    std::vector<int> chain_;
    std::vector<int> x_off_, z_off_, theta_off_;
};

// Closed-form variable/row counts of the relaxation, asserted in tests.
// With S = sum of chain lengths and T = sum of (chain length + 1):
//   x = |V|*S, y = |V|, z = |L|*T, theta = T
//   assignment = S, coupling = |V|*S, node capacity = |V|, link capacity = |L|,
//   conservation = |I|*T, segment delay = T, end-to-end = |K|
struct RelaxationShape {
    long long x_vars = 0, y_vars = 0, z_vars = 0, theta_vars = 0;
    long long rows_assign = 0, rows_couple = 0, rows_nodecap = 0, rows_linkcap = 0;
    long long rows_flow = 0, rows_delay = 0, rows_e2e = 0;
    long long total_vars() const { return x_vars + y_vars + z_vars + theta_vars; }
    long long total_rows() const {
        return rows_assign + rows_couple + rows_nodecap + rows_linkcap + rows_flow +
               rows_delay + rows_e2e;
    }
};
RelaxationShape relaxation_shape(const Instance& instance);

struct Formulation {
    LPModel model;
    VarIndex index;
};

Formulation build_relaxation(const Instance& instance);

struct ConflictingFixingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Equality fixings x[k,s,v] = 0/1, keyed by column.
class FixingSet {
public:
    void set(int col, bool value) {
        auto [it, inserted] = fixings_.try_emplace(col, value);
        if (!inserted && it->second != value)
            throw ConflictingFixingError("column fixed to both 0 and 1");
    }
    void override_to_zero(int col) { fixings_[col] = false; }
    bool contains(int col) const { return fixings_.count(col) > 0; }
    std::optional<bool> get(int col) const {
        auto it = fixings_.find(col);
        if (it == fixings_.end()) return std::nullopt;
        return it->second;
    }
    const std::map<int, bool>& entries() const { return fixings_; }

private:
    std::map<int, bool> fixings_;
};

// Returns a copy of the model with each fixed column pinned (lower = upper).
// Only x columns may be fixed.
LPModel apply_fixings(const LPModel& model, const VarIndex& index,
                      const FixingSet& fixings);

// Swaps the objective for the routing refinement: sum_k w_k * theta_L(k),
// all other coefficients zero. Weights must be >= 1, one per service.
LPModel set_refinement_objective(const LPModel& model, const VarIndex& index,
                                 const std::vector<double>& weights);

}  // namespace nslice
