#pragma once

#include "repfilter/engine.hpp"
#include "repfilter/rational.hpp"

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace repfilter {

struct ErdosRenyi {
    std::uint64_t n = 0;
    Rational edge_probability;
};

struct BarabasiAlbert {
    std::uint64_t n = 0;
    std::uint64_t attachments_per_node = 1;
};

struct ExplicitEdgeList {
    std::vector<ProfileId> profiles;
    std::vector<std::pair<ProfileId, ProfileId>> edges;
};

using Topology = std::variant<ErdosRenyi, BarabasiAlbert, ExplicitEdgeList>;

struct Network {
    std::vector<ProfileId> profiles;                     // sorted
    std::vector<std::pair<ProfileId, ProfileId>> edges;  // first < second, sorted

    friend bool operator==(const Network&, const Network&) = default;
};

// Generated topologies name their nodes n0, n1, ... zero-padded to a common
// width so that id order equals index order. Erdos-Renyi draws each
// unordered pair once in id order; Barabasi-Albert grows from an
// (m+1)-clique with degree-proportional attachment.
Network generate_network(const Topology& topology, std::uint64_t seed);

struct Reciprocal {
    Rational reply_probability{1, 1};
};

struct Spammer {
    enum class Targeting { Fixed, Random };

    std::uint64_t burst_per_tick = 1;
    Targeting targeting = Targeting::Random;
    std::vector<ProfileId> targets;  // used when targeting == Fixed, cycled in order
};

struct Silent {};

using Behavior = std::variant<Reciprocal, Spammer, Silent>;

struct AgentSpec {
    ProfileId id;
    Behavior behavior;
};

struct SimConfig {
    Topology topology;
    std::vector<AgentSpec> agents;
    std::uint64_t ticks = 1;
    std::uint64_t seed = 0;
    EngineConfig engine;

    void validate() const;
};

struct SimMetrics {
    std::uint64_t spam_events_total = 0;
    std::uint64_t spam_events_rejected = 0;
    std::uint64_t legit_events_total = 0;
    std::uint64_t legit_events_rejected = 0;
    Rational spam_block_rate;
    Rational false_positive_rate;
    Rational mean_messages_before_block;

    friend bool operator==(const SimMetrics&, const SimMetrics&) = default;
};

struct SimResult {
    std::vector<InteractionEvent> events;
    std::vector<Decision> decisions;
    SimMetrics metrics;
    SocialGraph initial_graph;
    SocialGraph final_graph;
    std::set<ProfileId> spammers;
};

// Runs the agent-based scenario. Placement: for generated topologies the
// i-th agent takes the place (and replaces the id) of node i; agents beyond
// the node count join as unconnected profiles. For an explicit edge list
// agents are matched by id. Profiles without an agent stay silent.
//
// Per tick, agents act in id order. A Reciprocal agent first answers each
// initiation accepted for it during the previous tick (one reply message,
// drawn with its reply probability), then opens one conversation with a
// random topology neighbor it is not already waiting on. A Spammer sends
// burst_per_tick initiations: a friend request when not yet connected to
// the target, a message otherwise.
SimResult run_simulation(const SimConfig& cfg);

// Tallies decisions against ground truth: an event is spam iff its source
// is in `spammers`.
SimMetrics compute_metrics(std::span<const InteractionEvent> events,
                           std::span<const Decision> decisions,
                           const std::set<ProfileId>& spammers);

// Header plus one row, rates with six fractional digits.
std::string metrics_csv(const SimMetrics& m);

} // namespace repfilter
