#pragma once

#include "repfilter/profile_id.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <vector>

namespace repfilter {

// One row of a profile's localized data-set: activity exchanged with a
// single neighbor, seen from the owner's side.
struct ActivityRecord {
    std::uint64_t incoming = 0;  // accepted interactions neighbor -> owner
    std::uint64_t outgoing = 0;  // accepted interactions owner -> neighbor
    std::uint64_t rejected = 0;  // neighbor -> owner interactions that were refused

    friend bool operator==(const ActivityRecord&, const ActivityRecord&) = default;
};

using LocalizedDataSet = std::map<ProfileId, ActivityRecord>;

struct Edge {
    ProfileId a;  // a < b
    ProfileId b;
    RelationshipKind kind;

    friend bool operator==(const Edge&, const Edge&) = default;
};

// Profiles, undirected relationships and per-profile activity counters.
//
// Edge weights are not stored. They are derived from the counters by the
// trust functions. All mutations keep the dual-record invariant
//   rows(x)[y].outgoing == rows(y)[x].incoming
// and both rows exist whenever either does.
class SocialGraph {
public:
    // Returns true if the profile was newly added.
    bool add_profile(const ProfileId& id);
    bool has_profile(const ProfileId& id) const;

    // Idempotent for an identical edge. Throws GraphError on a self-edge,
    // an unknown endpoint, or an existing edge with a different kind.
    void connect(const ProfileId& x, const ProfileId& y, const RelationshipKind& kind = {});
    bool is_connected(const ProfileId& x, const ProfileId& y) const;

    void apply_accepted_interaction(const ProfileId& src, const ProfileId& dst);
    void record_rejected(const ProfileId& src, const ProfileId& dst);

    // Absent rows read as zero.
    ActivityRecord record(const ProfileId& owner, const ProfileId& neighbor) const;
    // Throws GraphError for an unknown profile.
    const LocalizedDataSet& dataset(const ProfileId& owner) const;
    const std::map<ProfileId, RelationshipKind>& neighbors(const ProfileId& id) const;

    std::vector<ProfileId> profiles() const;
    std::vector<Edge> edges() const;  // sorted by (a, b)
    std::size_t profile_count() const noexcept { return nodes_.size(); }
    std::size_t edge_count() const noexcept { return edge_count_; }

    // Builds a graph from raw parts and checks every structural invariant.
    // Used by snapshot loading and the from-scratch oracle.
    static SocialGraph from_parts(const std::set<ProfileId>& profiles,
                                  const std::vector<Edge>& edges,
                                  const std::map<ProfileId, LocalizedDataSet>& datasets);

    friend bool operator==(const SocialGraph&, const SocialGraph&) = default;

private:
    struct Node {
        std::map<ProfileId, RelationshipKind> adjacent;
        LocalizedDataSet rows;

        friend bool operator==(const Node&, const Node&) = default;
    };

    Node& node(const ProfileId& id, const char* op);
    const Node& node(const ProfileId& id, const char* op) const;

    std::map<ProfileId, Node> nodes_;
    std::size_t edge_count_ = 0;
};

} // namespace repfilter
