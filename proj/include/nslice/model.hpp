#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nslice {

// One directed link (from, to) with a fixed propagation delay and a rate capacity.
struct Link {
    std::string from;
    std::string to;
    double delay = 0.0;
    double capacity = 0.0;
};

struct CloudNode {
    std::string id;
    double capacity = 0.0;  // compute capacity, one unit of rate costs one unit
};

struct Network {
    std::vector<std::string> nodes;
    std::vector<Link> links;
    std::vector<CloudNode> cloud_nodes;

    bool is_cloud(const std::string& id) const;
    int node_index(const std::string& id) const;  // -1 if unknown
};

// A service request: an ordered function chain routed from source to destination.
// rates[s] is the data rate of segment s (after function s, with rates[0] the
// ingress rate), so rates has sfc.size()+1 entries. nfv_delay maps a cloud node
// id to the per-position processing delays (one entry per chain position).
struct Service {
    std::string id;
    std::string source;
    std::string destination;
    std::vector<std::string> sfc;
    std::vector<double> rates;
    double delay_budget = 0.0;
    std::map<std::string, std::vector<double>> nfv_delay;

    int chain_length() const { return static_cast<int>(sfc.size()); }
};

struct Instance {
    Network network;
    std::vector<Service> services;
    double sigma = 0.001;
    int path_budget = 2;
};

struct Violation {
    std::string code;
    std::string detail;
};

using ValidationReport = std::vector<Violation>;

// Checks every structural invariant of an instance. Violations are data, not
// errors: a valid instance yields an empty report.
ValidationReport validate_instance(const Instance& instance);

// Minimum total link delay over directed paths s -> t; nullopt if unreachable.
// s == t is the empty path with delay 0.
std::optional<double> shortest_delay(const Network& network, const std::string& s,
                                     const std::string& t);

struct GeneratorParams {
    int node_count = 20;
    int link_count = 80;        // directed links
    int cloud_count = 3;
    int service_count = 3;
    int node_cap_min = 50;
    int node_cap_max = 100;
    int link_cap_min = 5;
    int link_cap_max = 55;
    std::vector<int> nfv_delay_choices = {3, 4, 5, 6};
    std::vector<int> link_delay_choices = {1, 2};
    int function_pool_size = 4;
    int sfc_length = 3;
    int rate_min = 1;
    int rate_max = 11;
    double budget_base = 20.0;
    double budget_dist_factor = 3.0;
    double budget_slack_min = 0.0;
    double budget_slack_max = 5.0;
    double sigma = 0.001;
    int path_budget = 2;
    std::uint64_t seed = 1;
};

struct GenerationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Deterministic function of params (same seed, same instance, bit for bit).
// Builds a layered topology: a transit chain of plain nodes feeding the cloud
// layer, every cloud wired to one common destination, plus randomly sampled
// extra edges. Every physical edge is emitted in both directions with
// independently drawn delay and capacity. Sources are drawn from the plain
// nodes, so each source reaches the destination through the cloud layer by
// construction; this is still checked and the topology resampled if violated.
// Throws GenerationError after 100 failed attempts.
Instance generate_instance(const GeneratorParams& params);

// Budget rule used by the generator: base + factor * dist + slack.
double delay_budget(const GeneratorParams& params, double dist, double slack);

}  // namespace nslice
