#include "repfilter/engine.hpp"
#include "repfilter/error.hpp"

#include <set>

namespace repfilter {

SocialGraph oracle_state(std::span<const InteractionEvent> events,
                         std::span<const Decision> decisions, bool friend_request_connects,
                         const SocialGraph& initial) {
    if (events.size() != decisions.size()) {
        throw Error("oracle_state: " + std::to_string(events.size()) + " events but " +
                    std::to_string(decisions.size()) + " decisions");
    }

    std::set<ProfileId> profiles;
    for (const auto& id : initial.profiles()) {
        profiles.insert(id);
    }
    std::vector<Edge> edges = initial.edges();
    std::set<std::pair<ProfileId, ProfileId>> linked;
    for (const auto& e : edges) {
        linked.emplace(e.a, e.b);
    }

    // Tallies keyed by (owner, neighbor).
    std::map<std::pair<ProfileId, ProfileId>, ActivityRecord> rows;
    auto touch = [&rows](const ProfileId& owner, const ProfileId& neighbor) -> ActivityRecord& {
        return rows[{owner, neighbor}];
    };
    for (const auto& e : edges) {
        touch(e.a, e.b);
        touch(e.b, e.a);
    }
    for (const auto& id : initial.profiles()) {
        for (const auto& [neighbor, rec] : initial.dataset(id)) {
            if (rec != ActivityRecord{}) {
                throw Error("oracle_state: initial graph must have zero counters");
            }
            touch(id, neighbor);
        }
    }

    for (std::size_t i = 0; i < events.size(); ++i) {
        const InteractionEvent& ev = events[i];
        const Decision& d = decisions[i];
        if (ev.seq != d.event_seq) {
            throw Error("oracle_state: event " + std::to_string(i) + " has seq " +
                        std::to_string(ev.seq) + " but its decision has seq " +
                        std::to_string(d.event_seq));
        }
        profiles.insert(ev.src);
        profiles.insert(ev.dst);
        if (d.verdict == Verdict::Accept) {
            ++touch(ev.src, ev.dst).outgoing;
            ++touch(ev.dst, ev.src).incoming;
            if (friend_request_connects && ev.kind.tag() == EventKind::FriendRequest) {
                const auto key = ev.src < ev.dst ? std::pair{ev.src, ev.dst} : std::pair{ev.dst, ev.src};
                if (linked.insert(key).second) {
                    edges.push_back(Edge{key.first, key.second, RelationshipKind{}});
                }
            }
        } else {
            ++touch(ev.dst, ev.src).rejected;
            touch(ev.src, ev.dst);
        }
    }

    std::map<ProfileId, LocalizedDataSet> datasets;
    for (const auto& [key, rec] : rows) {
        datasets[key.first].emplace(key.second, rec);
    }
    return SocialGraph::from_parts(profiles, edges, datasets);
}

} // namespace repfilter
