#include "nslice/formulation.hpp"

#include <unordered_map>

namespace nslice {

VarIndex::VarIndex(const Instance& instance) {
    clouds_ = static_cast<int>(instance.network.cloud_nodes.size());
    links_ = static_cast<int>(instance.network.links.size());
    const int services = static_cast<int>(instance.services.size());
    chain_.resize(services);
    for (int k = 0; k < services; ++k) chain_[k] = instance.services[k].chain_length();

    x_off_.resize(services);
    int col = 0;
    for (int k = 0; k < services; ++k) {
        x_off_[k] = col;
        col += chain_[k] * clouds_;
    }
    y_start_ = col;
    col += clouds_;
    z_off_.resize(services);
    for (int k = 0; k < services; ++k) {
        z_off_[k] = col;
        col += (chain_[k] + 1) * links_;
    }
    theta_off_.resize(services);
    for (int k = 0; k < services; ++k) {
        theta_off_[k] = col;
        col += chain_[k] + 1;
    }
    total_ = col;
}

VarIndex::XRef VarIndex::x_ref(int col) const {
    for (int k = static_cast<int>(x_off_.size()) - 1; k >= 0; --k) {
        if (col >= x_off_[k]) {
            int rel = col - x_off_[k];
            return {k, rel / clouds_ + 1, rel % clouds_};
        }
    }
    throw std::out_of_range("not an x column");
}

RelaxationShape relaxation_shape(const Instance& instance) {
    RelaxationShape s;
    const long long V = static_cast<long long>(instance.network.cloud_nodes.size());
    const long long L = static_cast<long long>(instance.network.links.size());
    const long long I = static_cast<long long>(instance.network.nodes.size());
    long long chain_sum = 0, segment_sum = 0;
    for (const auto& svc : instance.services) {
        chain_sum += svc.chain_length();
        segment_sum += svc.chain_length() + 1;
    }
    s.x_vars = V * chain_sum;
    s.y_vars = V;
    s.z_vars = L * segment_sum;
    s.theta_vars = segment_sum;
    s.rows_assign = chain_sum;
    s.rows_couple = V * chain_sum;
    s.rows_nodecap = V;
    s.rows_linkcap = L;
    s.rows_flow = I * segment_sum;
    s.rows_delay = segment_sum;
    s.rows_e2e = static_cast<long long>(instance.services.size());
    return s;
}

Formulation build_relaxation(const Instance& instance) {
    Formulation f;
    f.index = VarIndex(instance);
    LPModel& lp = f.model;
    const VarIndex& ix = f.index;
    const Network& net = instance.network;
    const int K = static_cast<int>(instance.services.size());
    const int V = ix.num_clouds();
    const int L = ix.num_links();

    // Variables, in the block order documented on VarIndex.
    for (int k = 0; k < K; ++k) {
        const Service& svc = instance.services[k];
        for (int s = 1; s <= svc.chain_length(); ++s)
            for (int v = 0; v < V; ++v)
                lp.add_variable("x[" + svc.id + "," + std::to_string(s) + "," +
                                    net.cloud_nodes[v].id + "]",
                                0.0, 1.0);
    }
    for (int v = 0; v < V; ++v)
        lp.add_variable("y[" + net.cloud_nodes[v].id + "]", 0.0, 1.0);
    for (int k = 0; k < K; ++k) {
        const Service& svc = instance.services[k];
        for (int s = 0; s <= svc.chain_length(); ++s)
            for (int e = 0; e < L; ++e)
                lp.add_variable("z[" + svc.id + "," + std::to_string(s) + "," +
                                    net.links[e].from + ">" + net.links[e].to + "]",
                                0.0, 1.0);
    }
    for (int k = 0; k < K; ++k) {
        const Service& svc = instance.services[k];
        for (int s = 0; s <= svc.chain_length(); ++s)
            lp.add_variable("theta[" + svc.id + "," + std::to_string(s) + "]", 0.0,
                            std::numeric_limits<double>::infinity());
    }

    // Objective: activated nodes plus sigma-weighted total delay.
    for (int v = 0; v < V; ++v) lp.objective[ix.y_col(v)] = 1.0;
    for (int k = 0; k < K; ++k) {
        const Service& svc = instance.services[k];
        for (int s = 0; s <= svc.chain_length(); ++s)
            lp.objective[ix.theta_col(k, s)] = instance.sigma;
        for (int s = 1; s <= svc.chain_length(); ++s)
            for (int v = 0; v < V; ++v)
                lp.objective[ix.x_col(k, s, v)] =
                    instance.sigma * svc.nfv_delay.at(net.cloud_nodes[v].id)[s - 1];
    }

    // Every chain position is hosted by exactly one cloud node.
    for (int k = 0; k < K; ++k) {
        const Service& svc = instance.services[k];
        for (int s = 1; s <= svc.chain_length(); ++s) {
            std::vector<std::pair<int, double>> row;
            for (int v = 0; v < V; ++v) row.push_back({ix.x_col(k, s, v), 1.0});
            lp.add_constraint(std::move(row), Relation::Equal, 1.0,
                              "assign[" + svc.id + "," + std::to_string(s) + "]");
        }
    }
    // Hosting implies activation.
    for (int k = 0; k < K; ++k) {
        const Service& svc = instance.services[k];
        for (int s = 1; s <= svc.chain_length(); ++s)
            for (int v = 0; v < V; ++v)
                lp.add_constraint({{ix.x_col(k, s, v), 1.0}, {ix.y_col(v), -1.0}},
                                  Relation::LessEqual, 0.0,
                                  "couple[" + svc.id + "," + std::to_string(s) + "," +
                                      net.cloud_nodes[v].id + "]");
    }
    // Node compute capacity.
    for (int v = 0; v < V; ++v) {
        std::vector<std::pair<int, double>> row;
        for (int k = 0; k < K; ++k) {
            const Service& svc = instance.services[k];
            for (int s = 1; s <= svc.chain_length(); ++s)
                row.push_back({ix.x_col(k, s, v), svc.rates[s]});
        }
        row.push_back({ix.y_col(v), -net.cloud_nodes[v].capacity});
        lp.add_constraint(std::move(row), Relation::LessEqual, 0.0,
                          "nodecap[" + net.cloud_nodes[v].id + "]");
    }
    // Link capacity over all segments.
    for (int e = 0; e < L; ++e) {
        std::vector<std::pair<int, double>> row;
        for (int k = 0; k < K; ++k) {
            const Service& svc = instance.services[k];
            for (int s = 0; s <= svc.chain_length(); ++s)
                row.push_back({ix.z_col(k, s, e), svc.rates[s]});
        }
        lp.add_constraint(std::move(row), Relation::LessEqual, net.links[e].capacity,
                          "linkcap[" + net.links[e].from + ">" + net.links[e].to + "]");
    }
    // Flow conservation per service, segment and node. Cloud nodes source or
    // sink a segment according to the placement variables; each service's
    // chain is anchored at its source (segment 0) and destination (last
    // segment), which by validation are not cloud nodes.
    std::unordered_map<std::string, int> cloud_index;
    for (int v = 0; v < V; ++v) cloud_index[net.cloud_nodes[v].id] = v;
    const int N = static_cast<int>(net.nodes.size());
    std::unordered_map<std::string, int> node_index;
    for (int i = 0; i < N; ++i) node_index[net.nodes[i]] = i;
    std::vector<int> link_from(L), link_to(L);
    for (int e = 0; e < L; ++e) {
        link_from[e] = node_index.at(net.links[e].from);
        link_to[e] = node_index.at(net.links[e].to);
    }
    for (int k = 0; k < K; ++k) {
        const Service& svc = instance.services[k];
        const int len = svc.chain_length();
        for (int s = 0; s <= len; ++s) {
            std::vector<std::vector<std::pair<int, double>>> per_node(N);
            for (int e = 0; e < L; ++e) {
                per_node[link_to[e]].push_back({ix.z_col(k, s, e), 1.0});
                per_node[link_from[e]].push_back({ix.z_col(k, s, e), -1.0});
            }
            for (int i = 0; i < N; ++i) {
                const std::string& node = net.nodes[i];
                auto row = std::move(per_node[i]);
                auto ci = cloud_index.find(node);
                if (ci != cloud_index.end()) {
                    if (s + 1 <= len) row.push_back({ix.x_col(k, s + 1, ci->second), -1.0});
                    if (s >= 1) row.push_back({ix.x_col(k, s, ci->second), 1.0});
                }
                double rhs = 0.0;
                if (s == 0 && node == svc.source) rhs -= 1.0;
                if (s == len && node == svc.destination) rhs += 1.0;
                lp.add_constraint(std::move(row), Relation::Equal, rhs,
                                  "flow[" + svc.id + "," + std::to_string(s) + "," +
                                      node + "]");
            }
        }
    }
    // Segment delay: theta(k,s) dominates the delay-weighted routing mass.
    for (int k = 0; k < K; ++k) {
        const Service& svc = instance.services[k];
        for (int s = 0; s <= svc.chain_length(); ++s) {
            std::vector<std::pair<int, double>> row;
            for (int e = 0; e < L; ++e)
                row.push_back({ix.z_col(k, s, e), net.links[e].delay});
            row.push_back({ix.theta_col(k, s), -1.0});
            lp.add_constraint(std::move(row), Relation::LessEqual, 0.0,
                              "segdelay[" + svc.id + "," + std::to_string(s) + "]");
        }
    }
    // End-to-end budget: communication plus processing delay.
    for (int k = 0; k < K; ++k) {
        const Service& svc = instance.services[k];
        std::vector<std::pair<int, double>> row;
        for (int s = 0; s <= svc.chain_length(); ++s)
            row.push_back({ix.theta_col(k, s), 1.0});
        for (int s = 1; s <= svc.chain_length(); ++s)
            for (int v = 0; v < V; ++v)
                row.push_back({ix.x_col(k, s, v),
                               svc.nfv_delay.at(net.cloud_nodes[v].id)[s - 1]});
        lp.add_constraint(std::move(row), Relation::LessEqual, svc.delay_budget,
                          "e2e[" + svc.id + "]");
    }
    return f;
}

LPModel apply_fixings(const LPModel& model, const VarIndex& index,
                      const FixingSet& fixings) {
    LPModel out = model;
    for (const auto& [col, value] : fixings.entries()) {
        if (!index.is_x_col(col))
            throw std::invalid_argument("fixings may reference x columns only");
        out.variables[col].lower = value ? 1.0 : 0.0;
        out.variables[col].upper = out.variables[col].lower;
    }
    return out;
}

LPModel set_refinement_objective(const LPModel& model, const VarIndex& index,
                                 const std::vector<double>& weights) {
    if (static_cast<int>(weights.size()) != index.num_services())
        throw std::invalid_argument("one weight per service required");
    for (double w : weights)
        if (!(w >= 1.0)) throw std::invalid_argument("weights must be >= 1");
    LPModel out = model;
    std::fill(out.objective.begin(), out.objective.end(), 0.0);
    for (int k = 0; k < index.num_services(); ++k)
        for (int s = 0; s <= index.chain_length(k); ++s)
            out.objective[index.theta_col(k, s)] = weights[k];
    return out;
}

}  // namespace nslice
