#include "repfilter/simulation.hpp"

#include "repfilter/error.hpp"
#include "repfilter/rng.hpp"

#include <map>

namespace repfilter {

void SimConfig::validate() const {
    if (ticks == 0) {
        throw ValidationError("ticks must be positive");
    }
    engine.validate();
    std::set<ProfileId> ids;
    for (const auto& agent : agents) {
        if (!ids.insert(agent.id).second) {
            throw ValidationError("duplicate agent id '" + agent.id.str() + "'");
        }
        if (const auto* r = std::get_if<Reciprocal>(&agent.behavior)) {
            if (r->reply_probability > Rational::integer(1)) {
                throw ValidationError("agent '" + agent.id.str() + "': reply_probability " +
                                      r->reply_probability.to_string() + " exceeds 1");
            }
        } else if (const auto* s = std::get_if<Spammer>(&agent.behavior)) {
            if (s->burst_per_tick < 1) {
                throw ValidationError("agent '" + agent.id.str() + "': burst_per_tick must be >= 1");
            }
            if (s->targeting == Spammer::Targeting::Fixed && s->targets.empty()) {
                throw ValidationError("agent '" + agent.id.str() + "': fixed targeting without targets");
            }
        }
    }
}

namespace {

struct Placement {
    SocialGraph graph;
    std::map<ProfileId, Behavior> behaviors;
    std::map<ProfileId, std::vector<ProfileId>> topology_neighbors;
};

Placement place_agents(const SimConfig& cfg) {
    Network net = generate_network(cfg.topology, cfg.seed);
    const bool generated = !std::holds_alternative<ExplicitEdgeList>(cfg.topology);

    std::map<ProfileId, ProfileId> rename;  // generated id -> agent id
    std::vector<ProfileId> extras;
    if (generated) {
        const std::set<ProfileId> taken(net.profiles.begin(), net.profiles.end());
        for (std::size_t i = 0; i < cfg.agents.size(); ++i) {
            const ProfileId& id = cfg.agents[i].id;
            if (taken.contains(id)) {
                throw ValidationError("agent id '" + id.str() + "' collides with a generated node id");
            }
            if (i < net.profiles.size()) {
                rename.emplace(net.profiles[i], id);
            } else {
                extras.push_back(id);
            }
        }
    } else {
        const std::set<ProfileId> listed(net.profiles.begin(), net.profiles.end());
        for (const auto& agent : cfg.agents) {
            if (!listed.contains(agent.id)) {
                extras.push_back(agent.id);
            }
        }
    }
    auto resolve = [&rename](const ProfileId& id) -> const ProfileId& {
        auto it = rename.find(id);
        return it == rename.end() ? id : it->second;
    };

    Placement p;
    for (const auto& id : net.profiles) {
        p.graph.add_profile(resolve(id));
        p.topology_neighbors[resolve(id)];
    }
    for (const auto& id : extras) {
        p.graph.add_profile(id);
        p.topology_neighbors[id];
    }
    for (const auto& [x, y] : net.edges) {
        const ProfileId& a = resolve(x);
        const ProfileId& b = resolve(y);
        p.graph.connect(a, b);
        p.topology_neighbors[a].push_back(b);
        p.topology_neighbors[b].push_back(a);
    }
    for (auto& [_, list] : p.topology_neighbors) {
        std::sort(list.begin(), list.end());
    }
    for (const auto& agent : cfg.agents) {
        if (const auto* s = std::get_if<Spammer>(&agent.behavior)) {
            for (const auto& t : s->targets) {
                if (!p.graph.has_profile(t) || t == agent.id) {
                    throw ValidationError("agent '" + agent.id.str() + "': invalid target '" +
                                          t.str() + "'");
                }
            }
        }
        p.behaviors.emplace(agent.id, agent.behavior);
    }
    return p;
}

// An initiation accepted for a Reciprocal agent, answered next tick.
struct Pending {
    ProfileId from;
};

class Simulator {
public:
    explicit Simulator(const SimConfig& cfg) : cfg_(cfg), placement_(place_agents(cfg)),
                                               engine_(cfg.engine, placement_.graph) {
        for (const auto& [id, behavior] : placement_.behaviors) {
            rngs_.emplace(id, Rng(derive_seed(cfg.seed, id.str())));
            if (std::holds_alternative<Spammer>(behavior)) {
                result_.spammers.insert(id);
            }
        }
        all_profiles_ = placement_.graph.profiles();
        result_.initial_graph = placement_.graph;
    }

    SimResult run() {
        for (std::uint64_t tick = 0; tick < cfg_.ticks; ++tick) {
            tick_ = tick;
            inbox_ = std::move(next_inbox_);
            next_inbox_.clear();
            for (const auto& [id, behavior] : placement_.behaviors) {
                std::visit([this, &id](const auto& b) { act(id, b); }, behavior);
            }
        }
        result_.metrics = compute_metrics(result_.events, result_.decisions, result_.spammers);
        result_.final_graph = engine_.graph();
        return std::move(result_);
    }

private:
    Decision emit(const ProfileId& src, const ProfileId& dst, EventKind kind) {
        InteractionEvent ev{next_seq_++, tick_, std::move(kind), src, dst};
        Decision d = engine_.process(ev);
        result_.events.push_back(std::move(ev));
        result_.decisions.push_back(d);
        return d;
    }

    // Initiations feed the recipient's inbox for the next tick if it answers mail.
    Decision initiate(const ProfileId& src, const ProfileId& dst, EventKind kind) {
        Decision d = emit(src, dst, std::move(kind));
        if (d.verdict == Verdict::Accept) {
            auto it = placement_.behaviors.find(dst);
            if (it != placement_.behaviors.end() && std::holds_alternative<Reciprocal>(it->second)) {
                next_inbox_[dst].push_back(Pending{src});
            }
        }
        return d;
    }

    void act(const ProfileId& id, const Reciprocal& r) {
        Rng& rng = rngs_.at(id);
        if (auto it = inbox_.find(id); it != inbox_.end()) {
            for (const Pending& item : it->second) {
                // The sender stops waiting whether or not the answer comes.
                awaiting_[item.from].erase(id);
                if (rng.bernoulli(r.reply_probability)) {
                    emit(id, item.from, EventKind::Message);
                }
            }
        }
        std::vector<const ProfileId*> open;
        const auto& waiting = awaiting_[id];
        for (const auto& n : placement_.topology_neighbors.at(id)) {
            if (!waiting.contains(n)) {
                open.push_back(&n);
            }
        }
        if (open.empty()) {
            return;
        }
        const ProfileId& target = *open[rng.uniform(open.size())];
        if (initiate(id, target, EventKind::Message).verdict == Verdict::Accept) {
            awaiting_[id].insert(target);
        }
    }

    void act(const ProfileId& id, const Spammer& s) {
        Rng& rng = rngs_.at(id);
        std::uint64_t& cursor = cursors_[id];
        for (std::uint64_t k = 0; k < s.burst_per_tick; ++k) {
            const ProfileId* target = nullptr;
            if (s.targeting == Spammer::Targeting::Fixed) {
                target = &s.targets[cursor++ % s.targets.size()];
            } else {
                // Uniform over every other profile.
                std::uint64_t pick = rng.uniform(all_profiles_.size() - 1);
                if (all_profiles_[pick] >= id) {
                    ++pick;
                }
                target = &all_profiles_[pick];
            }
            const bool linked = engine_.graph().is_connected(id, *target);
            initiate(id, *target, linked ? EventKind::Message : EventKind::FriendRequest);
        }
    }

    void act(const ProfileId&, const Silent&) {}

    const SimConfig& cfg_;
    Placement placement_;
    FilterEngine engine_;
    std::vector<ProfileId> all_profiles_;
    std::map<ProfileId, Rng> rngs_;
    std::map<ProfileId, std::uint64_t> cursors_;
    std::map<ProfileId, std::vector<Pending>> inbox_;
    std::map<ProfileId, std::vector<Pending>> next_inbox_;
    std::map<ProfileId, std::set<ProfileId>> awaiting_;  // initiator -> neighbors yet to answer
    std::uint64_t next_seq_ = 0;
    std::uint64_t tick_ = 0;
    SimResult result_;
};

} // namespace

SimResult run_simulation(const SimConfig& cfg) {
    cfg.validate();
    return Simulator(cfg).run();
}

SimMetrics compute_metrics(std::span<const InteractionEvent> events,
                           std::span<const Decision> decisions,
                           const std::set<ProfileId>& spammers) {
    if (events.size() != decisions.size()) {
        throw Error("compute_metrics: " + std::to_string(events.size()) + " events but " +
                    std::to_string(decisions.size()) + " decisions");
    }
    SimMetrics m;
    struct PairTally {
        std::uint64_t accepted_before_block = 0;
        bool blocked = false;
    };
    std::map<std::pair<ProfileId, ProfileId>, PairTally> pairs;

    for (std::size_t i = 0; i < events.size(); ++i) {
        const InteractionEvent& ev = events[i];
        const Decision& d = decisions[i];
        if (ev.seq != d.event_seq) {
            throw Error("compute_metrics: event " + std::to_string(i) + " has seq " +
                        std::to_string(ev.seq) + " but its decision has seq " +
                        std::to_string(d.event_seq));
        }
        const bool rejected = d.verdict == Verdict::Reject;
        if (spammers.contains(ev.src)) {
            ++m.spam_events_total;
            m.spam_events_rejected += rejected;
            PairTally& p = pairs[{ev.src, ev.dst}];
            if (!p.blocked) {
                if (rejected) {
                    p.blocked = true;
                } else {
                    ++p.accepted_before_block;
                }
            }
        } else {
            ++m.legit_events_total;
            m.legit_events_rejected += rejected;
        }
    }

    auto rate = [](std::uint64_t part, std::uint64_t whole) {
        return whole == 0 ? Rational{} : Rational(part, whole);
    };
    m.spam_block_rate = rate(m.spam_events_rejected, m.spam_events_total);
    m.false_positive_rate = rate(m.legit_events_rejected, m.legit_events_total);

    std::uint64_t blocked_pairs = 0;
    std::uint64_t accepted_sum = 0;
    for (const auto& [_, p] : pairs) {
        if (p.blocked) {
            ++blocked_pairs;
            accepted_sum += p.accepted_before_block;
        }
    }
    m.mean_messages_before_block = rate(accepted_sum, blocked_pairs);
    return m;
}

std::string metrics_csv(const SimMetrics& m) {
    return "spam_block_rate,false_positive_rate,mean_messages_before_block,spam_total,"
           "spam_rejected,legit_total,legit_rejected\n" +
           m.spam_block_rate.to_decimal(6) + "," + m.false_positive_rate.to_decimal(6) + "," +
           m.mean_messages_before_block.to_decimal(6) + "," + std::to_string(m.spam_events_total) +
           "," + std::to_string(m.spam_events_rejected) + "," + std::to_string(m.legit_events_total) +
           "," + std::to_string(m.legit_events_rejected) + "\n";
}

} // namespace repfilter
