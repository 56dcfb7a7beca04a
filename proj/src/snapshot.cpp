#include "repfilter/snapshot.hpp"

#include "repfilter/error.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>

namespace repfilter {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ParseError("snapshot " + where + ": " + what);
}

const json& require(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        fail(where, std::string("missing field '") + key + "'");
    }
    return *it;
}

// JSON pointer (RFC 6901) child path.
std::string pointer(const std::string& base, const std::string& token) {
    std::string out = base + "/";
    for (char c : token) {
        if (c == '~') {
            out += "~0";
        } else if (c == '/') {
            out += "~1";
        } else {
            out += c;
        }
    }
    return out;
}

ProfileId to_id(const json& v, const std::string& where) {
    if (!v.is_string()) {
        fail(where, "expected a profile id string");
    }
    try {
        return ProfileId(v.get<std::string>());
    } catch (const ValidationError& e) {
        fail(where, e.what());
    }
}

std::uint64_t to_count(const json& v, const std::string& where) {
    if (!v.is_number_unsigned()) {
        fail(where, "expected a non-negative integer");
    }
    return v.get<std::uint64_t>();
}

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> keys,
                         const std::string& where) {
    for (const auto& [k, _] : obj.items()) {
        bool known = false;
        for (const char* allowed : keys) {
            known = known || k == allowed;
        }
        if (!known) {
            fail(pointer(where, k), "unknown field");
        }
    }
}

} // namespace

std::string snapshot(const SocialGraph& graph) {
    json doc = json::object();
    doc["format_version"] = kSnapshotFormatVersion;

    json profiles = json::array();
    json datasets = json::object();
    for (const auto& id : graph.profiles()) {
        profiles.push_back(id.str());
        json rows = json::object();
        for (const auto& [neighbor, rec] : graph.dataset(id)) {
            rows[neighbor.str()] = {{"in", rec.incoming}, {"out", rec.outgoing}, {"rej", rec.rejected}};
        }
        datasets[id.str()] = std::move(rows);
    }
    doc["profiles"] = std::move(profiles);
    doc["datasets"] = std::move(datasets);

    json edges = json::array();
    for (const auto& e : graph.edges()) {
        edges.push_back({{"a", e.a.str()}, {"b", e.b.str()}, {"kind", e.kind.str()}});
    }
    doc["edges"] = std::move(edges);

    return doc.dump(2) + "\n";
}

SocialGraph load_snapshot(std::string_view bytes) {
    json doc;
    try {
        doc = json::parse(bytes.begin(), bytes.end());
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("snapshot: ") + e.what());
    }
    if (!doc.is_object()) {
        fail("/", "expected an object");
    }
    reject_unknown_keys(doc, {"format_version", "profiles", "edges", "datasets"}, "");

    const json& version = require(doc, "format_version", "/");
    if (!version.is_number_integer() || version.get<std::int64_t>() != kSnapshotFormatVersion) {
        fail("/format_version", "unsupported version " + version.dump() + ", expected " +
                                    std::to_string(kSnapshotFormatVersion));
    }

    std::set<ProfileId> profiles;
    const json& plist = require(doc, "profiles", "/");
    if (!plist.is_array()) {
        fail("/profiles", "expected an array");
    }
    for (std::size_t i = 0; i < plist.size(); ++i) {
        const std::string where = "/profiles/" + std::to_string(i);
        if (!profiles.insert(to_id(plist[i], where)).second) {
            fail(where, "duplicate profile");
        }
    }

    std::vector<Edge> edges;
    const json& elist = require(doc, "edges", "/");
    if (!elist.is_array()) {
        fail("/edges", "expected an array");
    }
    for (std::size_t i = 0; i < elist.size(); ++i) {
        const std::string where = "/edges/" + std::to_string(i);
        const json& e = elist[i];
        if (!e.is_object()) {
            fail(where, "expected an object");
        }
        reject_unknown_keys(e, {"a", "b", "kind"}, where);
        const json& kind = require(e, "kind", where);
        if (!kind.is_string()) {
            fail(where + "/kind", "expected a string");
        }
        try {
            edges.push_back(Edge{to_id(require(e, "a", where), where + "/a"),
                                 to_id(require(e, "b", where), where + "/b"),
                                 RelationshipKind(kind.get<std::string>())});
        } catch (const ValidationError& err) {
            fail(where + "/kind", err.what());
        }
    }

    std::map<ProfileId, LocalizedDataSet> datasets;
    const json& dsets = require(doc, "datasets", "/");
    if (!dsets.is_object()) {
        fail("/datasets", "expected an object");
    }
    for (const auto& [owner_key, rows] : dsets.items()) {
        const std::string owner_where = pointer("/datasets", owner_key);
        ProfileId owner = to_id(json(owner_key), owner_where);
        if (!rows.is_object()) {
            fail(owner_where, "expected an object");
        }
        LocalizedDataSet& ds = datasets[owner];
        for (const auto& [neighbor_key, rec] : rows.items()) {
            const std::string where = pointer(owner_where, neighbor_key);
            if (!rec.is_object()) {
                fail(where, "expected an object");
            }
            reject_unknown_keys(rec, {"in", "out", "rej"}, where);
            ds.emplace(to_id(json(neighbor_key), where),
                       ActivityRecord{to_count(require(rec, "in", where), where + "/in"),
                                      to_count(require(rec, "out", where), where + "/out"),
                                      to_count(require(rec, "rej", where), where + "/rej")});
        }
    }

    try {
        return SocialGraph::from_parts(profiles, edges, datasets);
    } catch (const GraphError& e) {
        throw ParseError(std::string("snapshot: inconsistent graph: ") + e.what());
    }
}

SocialGraph load_snapshot_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open snapshot '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_snapshot(buf.str());
}

void write_snapshot_file(const SocialGraph& graph, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << snapshot(graph);
    if (!out) {
        throw Error("cannot write snapshot '" + path + "'");
    }
}

} // namespace repfilter
