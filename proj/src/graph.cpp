#include "repfilter/graph.hpp"

#include "repfilter/error.hpp"

namespace repfilter {

namespace {

std::string unknown(const char* op, const ProfileId& id) {
    return std::string(op) + ": unknown profile '" + id.str() + "'";
}

} // namespace

SocialGraph::Node& SocialGraph::node(const ProfileId& id, const char* op) {
    auto it = nodes_.find(id);
    if (it == nodes_.end()) {
        throw GraphError(unknown(op, id));
    }
    return it->second;
}

const SocialGraph::Node& SocialGraph::node(const ProfileId& id, const char* op) const {
    auto it = nodes_.find(id);
    if (it == nodes_.end()) {
        throw GraphError(unknown(op, id));
    }
    return it->second;
}

bool SocialGraph::add_profile(const ProfileId& id) {
    return nodes_.try_emplace(id).second;
}

bool SocialGraph::has_profile(const ProfileId& id) const {
    return nodes_.contains(id);
}

void SocialGraph::connect(const ProfileId& x, const ProfileId& y, const RelationshipKind& kind) {
    if (x == y) {
        throw GraphError("connect: self-edge on '" + x.str() + "'");
    }
    Node& nx = node(x, "connect");
    Node& ny = node(y, "connect");
    if (auto it = nx.adjacent.find(y); it != nx.adjacent.end()) {
        if (it->second != kind) {
            throw GraphError("connect: edge " + x.str() + "-" + y.str() + " already has kind '" +
                             it->second.str() + "'");
        }
        return;
    }
    nx.adjacent.emplace(y, kind);
    ny.adjacent.emplace(x, kind);
    nx.rows.try_emplace(y);
    ny.rows.try_emplace(x);
    ++edge_count_;
}

bool SocialGraph::is_connected(const ProfileId& x, const ProfileId& y) const {
    auto it = nodes_.find(x);
    return it != nodes_.end() && it->second.adjacent.contains(y);
}

void SocialGraph::apply_accepted_interaction(const ProfileId& src, const ProfileId& dst) {
    if (src == dst) {
        throw GraphError("apply_accepted_interaction: self-interaction on '" + src.str() + "'");
    }
    Node& ns = node(src, "apply_accepted_interaction");
    Node& nd = node(dst, "apply_accepted_interaction");
    // Create both rows before touching either counter so the update is all-or-nothing.
    ActivityRecord& out_row = ns.rows[dst];
    ActivityRecord& in_row = nd.rows[src];
    ++out_row.outgoing;
    ++in_row.incoming;
}

void SocialGraph::record_rejected(const ProfileId& src, const ProfileId& dst) {
    if (src == dst) {
        throw GraphError("record_rejected: self-interaction on '" + src.str() + "'");
    }
    Node& ns = node(src, "record_rejected");
    Node& nd = node(dst, "record_rejected");
    ns.rows.try_emplace(dst);
    ++nd.rows[src].rejected;
}

ActivityRecord SocialGraph::record(const ProfileId& owner, const ProfileId& neighbor) const {
    auto it = nodes_.find(owner);
    if (it == nodes_.end()) {
        return {};
    }
    auto row = it->second.rows.find(neighbor);
    return row == it->second.rows.end() ? ActivityRecord{} : row->second;
}

const LocalizedDataSet& SocialGraph::dataset(const ProfileId& owner) const {
    return node(owner, "dataset").rows;
}

const std::map<ProfileId, RelationshipKind>& SocialGraph::neighbors(const ProfileId& id) const {
    static const std::map<ProfileId, RelationshipKind> none;
    auto it = nodes_.find(id);
    return it == nodes_.end() ? none : it->second.adjacent;
}

std::vector<ProfileId> SocialGraph::profiles() const {
    std::vector<ProfileId> out;
    out.reserve(nodes_.size());
    for (const auto& [id, _] : nodes_) {
        out.push_back(id);
    }
    return out;
}

std::vector<Edge> SocialGraph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (const auto& [id, n] : nodes_) {
        // The upper half of each adjacency map, so every edge appears once.
        for (auto it = n.adjacent.upper_bound(id); it != n.adjacent.end(); ++it) {
            out.push_back(Edge{id, it->first, it->second});
        }
    }
    return out;
}

SocialGraph SocialGraph::from_parts(const std::set<ProfileId>& profiles,
                                    const std::vector<Edge>& edges,
                                    const std::map<ProfileId, LocalizedDataSet>& datasets) {
    SocialGraph g;
    for (const auto& id : profiles) {
        g.add_profile(id);
    }
    for (const auto& [owner, rows] : datasets) {
        Node& n = g.node(owner, "dataset owner");
        for (const auto& [neighbor, rec] : rows) {
            if (neighbor == owner) {
                throw GraphError("dataset of '" + owner.str() + "' has a row for itself");
            }
            if (!g.has_profile(neighbor)) {
                throw GraphError("dataset of '" + owner.str() + "': " + unknown("row", neighbor));
            }
            n.rows.emplace(neighbor, rec);
        }
    }
    for (const auto& e : edges) {
        if (g.is_connected(e.a, e.b)) {
            throw GraphError("duplicate edge " + e.a.str() + "-" + e.b.str());
        }
        g.connect(e.a, e.b, e.kind);
    }
    // connect() may have created empty rows, so check consistency afterwards
    // and against the rows as supplied.
    for (const auto& [owner, n] : g.nodes_) {
        for (const auto& [neighbor, rec] : n.rows) {
            const auto& back = g.nodes_.at(neighbor).rows;
            auto it = back.find(owner);
            if (it == back.end()) {
                throw GraphError("row " + owner.str() + "->" + neighbor.str() +
                                 " has no matching row " + neighbor.str() + "->" + owner.str());
            }
            if (rec.outgoing != it->second.incoming) {
                throw GraphError("dual-record mismatch: " + owner.str() + ".out(" + neighbor.str() +
                                 ")=" + std::to_string(rec.outgoing) + " but " + neighbor.str() +
                                 ".in(" + owner.str() + ")=" + std::to_string(it->second.incoming));
            }
        }
    }
    return g;
}

} // namespace repfilter
