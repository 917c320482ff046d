#include "nslice/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "nslice/rng.hpp"

namespace nslice {

bool Network::is_cloud(const std::string& id) const {
    for (const auto& c : cloud_nodes)
        if (c.id == id) return true;
    return false;
}

int Network::node_index(const std::string& id) const {
    for (size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i] == id) return static_cast<int>(i);
    return -1;
}

ValidationReport validate_instance(const Instance& instance) {
    ValidationReport report;
    const Network& net = instance.network;
    auto flag = [&report](const std::string& code, const std::string& detail) {
        report.push_back({code, detail});
    };

    std::unordered_set<std::string> node_set;
    for (const auto& n : net.nodes) {
        if (!node_set.insert(n).second) flag("duplicate-node", n);
    }

    std::set<std::pair<std::string, std::string>> seen_links;
    for (const auto& l : net.links) {
        if (!node_set.count(l.from) || !node_set.count(l.to))
            flag("dangling-link", l.from + "->" + l.to);
        if (l.from == l.to) flag("self-loop", l.from);
        if (!seen_links.insert({l.from, l.to}).second)
            flag("duplicate-link", l.from + "->" + l.to);
        if (l.capacity <= 0) flag("nonpositive-link-capacity", l.from + "->" + l.to);
        if (l.delay < 0) flag("negative-link-delay", l.from + "->" + l.to);
    }

    std::unordered_set<std::string> cloud_set;
    for (const auto& c : net.cloud_nodes) {
        if (!node_set.count(c.id)) flag("cloud-not-a-node", c.id);
        if (!cloud_set.insert(c.id).second) flag("duplicate-cloud", c.id);
        if (c.capacity <= 0) flag("nonpositive-node-capacity", c.id);
    }

    std::unordered_set<std::string> service_ids;
    for (const auto& svc : instance.services) {
        if (!service_ids.insert(svc.id).second) flag("duplicate-service-id", svc.id);
        if (!node_set.count(svc.source)) flag("unknown-source", svc.id);
        if (!node_set.count(svc.destination)) flag("unknown-destination", svc.id);
        if (cloud_set.count(svc.source)) flag("source-in-cloud", svc.id);
        if (cloud_set.count(svc.destination)) flag("destination-in-cloud", svc.id);
        if (svc.sfc.empty()) flag("empty-sfc", svc.id);
        if (svc.rates.size() != svc.sfc.size() + 1)
            flag("rate-count-mismatch", svc.id);
        for (double r : svc.rates)
            if (r <= 0) flag("nonpositive-rate", svc.id);
        if (svc.delay_budget <= 0) flag("nonpositive-delay-budget", svc.id);
        for (const auto& c : net.cloud_nodes) {
            auto it = svc.nfv_delay.find(c.id);
            if (it == svc.nfv_delay.end() || it->second.size() < svc.sfc.size()) {
                flag("nfv-delay-missing", svc.id + "@" + c.id);
            }
        }
    }

    if (instance.path_budget < 1) flag("nonpositive-path-budget", "");
    if (instance.sigma < 0) flag("negative-sigma", "");
    return report;
}

std::optional<double> shortest_delay(const Network& network, const std::string& s,
                                     const std::string& t) {
    const int n = static_cast<int>(network.nodes.size());
    std::unordered_map<std::string, int> idx;
    for (int i = 0; i < n; ++i) idx[network.nodes[i]] = i;
    auto si = idx.find(s);
    auto ti = idx.find(t);
    if (si == idx.end() || ti == idx.end()) return std::nullopt;

    std::vector<std::vector<std::pair<int, double>>> adj(n);
    for (const auto& l : network.links) {
        auto f = idx.find(l.from);
        auto g = idx.find(l.to);
        if (f != idx.end() && g != idx.end())
            adj[f->second].push_back({g->second, l.delay});
    }

    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(n, kInf);
    dist[si->second] = 0.0;
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    heap.push({0.0, si->second});
    while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (d > dist[u]) continue;
        for (auto [v, w] : adj[u]) {
            if (d + w < dist[v]) {
                dist[v] = d + w;
                heap.push({dist[v], v});
            }
        }
    }
    if (dist[ti->second] == kInf) return std::nullopt;
    return dist[ti->second];
}

double delay_budget(const GeneratorParams& params, double dist, double slack) {
    return params.budget_base + params.budget_dist_factor * dist + slack;
}

namespace {

void check_params(const GeneratorParams& p) {
    if (p.node_count < p.cloud_count + 2)
        throw GenerationError("node_count must leave room for a plain node and the destination");
    if (p.cloud_count < 1) throw GenerationError("cloud_count must be positive");
    if (p.service_count < 1) throw GenerationError("service_count must be positive");
    if (p.nfv_delay_choices.empty() || p.link_delay_choices.empty())
        throw GenerationError("delay choice sets must be nonempty");
    if (p.node_cap_min > p.node_cap_max || p.link_cap_min > p.link_cap_max ||
        p.rate_min > p.rate_max)
        throw GenerationError("empty range");
    const int plain = p.node_count - p.cloud_count - 1;
    const int backbone = 2 * ((plain - 1) + 2 * p.cloud_count);
    if (p.link_count < backbone)
        throw GenerationError("link_count below the minimum connected layout");
}

// Attempts one topology + service draw. Returns nullopt when a sampled source
// cannot reach the destination through a cloud node.
std::optional<Instance> try_generate(const GeneratorParams& p, Rng& rng) {
    Instance inst;
    inst.sigma = p.sigma;
    inst.path_budget = p.path_budget;
    Network& net = inst.network;

    const int plain = p.node_count - p.cloud_count - 1;
    std::vector<std::string> plain_nodes, clouds;
    for (int i = 0; i < plain; ++i) plain_nodes.push_back("n" + std::to_string(i));
    for (int i = 0; i < p.cloud_count; ++i) clouds.push_back("v" + std::to_string(i));
    const std::string dst = "dst";

    net.nodes = plain_nodes;
    net.nodes.insert(net.nodes.end(), clouds.begin(), clouds.end());
    net.nodes.push_back(dst);
    for (const auto& c : clouds)
        net.cloud_nodes.push_back({c, double(rng.uniform_int(p.node_cap_min, p.node_cap_max))});

    std::set<std::pair<std::string, std::string>> used;
    auto add_directed = [&](const std::string& a, const std::string& b) {
        double delay = p.link_delay_choices[rng.uniform_int(0, int(p.link_delay_choices.size()) - 1)];
        double cap = rng.uniform_int(p.link_cap_min, p.link_cap_max);
        net.links.push_back({a, b, delay, cap});
        used.insert({a, b});
    };
    auto add_edge = [&](const std::string& a, const std::string& b) {
        add_directed(a, b);
        add_directed(b, a);
    };

    // Backbone: plain chain -> every cloud -> destination.
    for (int i = 0; i + 1 < plain; ++i) add_edge(plain_nodes[i], plain_nodes[i + 1]);
    for (const auto& c : clouds) {
        add_edge(plain_nodes[plain - 1], c);
        add_edge(c, dst);
    }

    // Extra edges among plain/cloud nodes until the link budget is spent.
    std::vector<std::pair<std::string, std::string>> candidates;
    for (int i = 0; i < plain; ++i)
        for (int j = i + 1; j < plain; ++j)
            candidates.push_back({plain_nodes[i], plain_nodes[j]});
    for (int i = 0; i < plain; ++i)
        for (int j = 0; j < p.cloud_count; ++j)
            candidates.push_back({plain_nodes[i], clouds[j]});
    for (int i = 0; i < p.cloud_count; ++i)
        for (int j = i + 1; j < p.cloud_count; ++j)
            candidates.push_back({clouds[i], clouds[j]});
    rng.shuffle(candidates);
    for (const auto& [a, b] : candidates) {
        if (int(net.links.size()) + 2 > p.link_count) break;
        if (used.count({a, b}) || used.count({b, a})) continue;
        add_edge(a, b);
    }

    // Services: random plain source, the shared destination, a random chain.
    for (int k = 0; k < p.service_count; ++k) {
        Service svc;
        svc.id = "k" + std::to_string(k + 1);
        svc.source = plain_nodes[rng.uniform_int(0, plain - 1)];
        svc.destination = dst;
        for (int s = 0; s < p.sfc_length; ++s)
            svc.sfc.push_back("f" + std::to_string(rng.uniform_int(1, p.function_pool_size)));
        double rate = rng.uniform_int(p.rate_min, p.rate_max);
        svc.rates.assign(p.sfc_length + 1, rate);
        for (const auto& c : clouds) {
            auto& row = svc.nfv_delay[c];
            for (int s = 0; s < p.sfc_length; ++s)
                row.push_back(p.nfv_delay_choices[rng.uniform_int(0, int(p.nfv_delay_choices.size()) - 1)]);
        }
        auto dist = shortest_delay(net, svc.source, dst);
        if (!dist) return std::nullopt;
        svc.delay_budget = delay_budget(p, *dist, rng.uniform_real(p.budget_slack_min, p.budget_slack_max));
        inst.services.push_back(std::move(svc));
    }

    // Each source must reach the destination through at least one cloud node.
    for (const auto& svc : inst.services) {
        bool ok = false;
        for (const auto& c : clouds) {
            if (shortest_delay(net, svc.source, c) && shortest_delay(net, c, dst)) {
                ok = true;
                break;
            }
        }
        if (!ok) return std::nullopt;
    }
    return inst;
}

}  // namespace

Instance generate_instance(const GeneratorParams& params) {
    check_params(params);
    Rng rng(params.seed);
    for (int attempt = 0; attempt < 100; ++attempt) {
        auto inst = try_generate(params, rng);
        if (inst) return *inst;
    }
    throw GenerationError("no admissible topology found within 100 attempts");
}

}  // namespace nslice
