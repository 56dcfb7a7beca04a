#include "repfilter/config_io.hpp"

#include "repfilter/error.hpp"

#include "json.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace repfilter {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ParseError(where + ": " + what);
}

void only_fields(const json& obj, std::initializer_list<const char*> fields, const std::string& where) {
    if (!obj.is_object()) {
        fail(where, "expected an object");
    }
    for (const auto& [key, _] : obj.items()) {
        bool known = false;
        for (const char* f : fields) {
            known = known || key == f;
        }
        if (!known) {
            fail(where, "unknown field '" + key + "'");
        }
    }
}

const json& require(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        fail(where, std::string("missing field '") + key + "'");
    }
    return *it;
}

Rational to_rational(const json& v, const std::string& where) {
    try {
        if (v.is_number_unsigned()) {
            return Rational::integer(v.get<std::uint64_t>());
        }
        if (v.is_number_float()) {
            const double d = v.get<double>();
            if (!(d >= 0.0)) {
                fail(where, "expected a non-negative number");
            }
            // Shortest fixed-point text that round-trips, read back exactly.
            char buf[400];
            auto [end, ec] = std::to_chars(buf, buf + sizeof buf, d, std::chars_format::fixed);
            if (ec != std::errc{}) {
                fail(where, "number out of range");
            }
            return Rational::parse(std::string_view(buf, static_cast<std::size_t>(end - buf)));
        }
        if (v.is_string()) {
            return Rational::parse(v.get<std::string>());
        }
    } catch (const ValidationError& e) {
        fail(where, e.what());
    }
    fail(where, "expected a non-negative number or a \"num/den\" string");
}

std::uint64_t to_count(const json& v, const std::string& where) {
    if (!v.is_number_unsigned()) {
        fail(where, "expected a non-negative integer");
    }
    return v.get<std::uint64_t>();
}

std::string to_str(const json& v, const std::string& where) {
    if (!v.is_string()) {
        fail(where, "expected a string");
    }
    return v.get<std::string>();
}

ProfileId to_id(const json& v, const std::string& where) {
    try {
        return ProfileId(to_str(v, where));
    } catch (const ValidationError& e) {
        fail(where, e.what());
    }
}

json parse_document(std::string_view text, const char* what) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ParseError(std::string(what) + ": " + e.what());
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

EngineConfig engine_from_json(const json& doc, const std::string& where) {
    only_fields(doc, {"trust", "fallback_policy", "friend_request_connects"}, where);
    EngineConfig cfg;
    try {
        if (auto it = doc.find("trust"); it != doc.end()) {
            const std::string tw = where + ".trust";
            only_fields(*it, {"threshold", "zero_denominator_trust", "metric"}, tw);
            if (auto f = it->find("threshold"); f != it->end()) {
                cfg.trust.threshold = to_rational(*f, tw + ".threshold");
            }
            if (auto f = it->find("zero_denominator_trust"); f != it->end()) {
                cfg.trust.zero_denominator_trust = to_rational(*f, tw + ".zero_denominator_trust");
            }
            if (auto f = it->find("metric"); f != it->end()) {
                cfg.trust.metric = parse_trust_metric(to_str(*f, tw + ".metric"));
            }
        }
        if (auto f = doc.find("fallback_policy"); f != doc.end()) {
            cfg.fallback_policy = parse_fallback_policy(to_str(*f, where + ".fallback_policy"));
        }
        if (auto f = doc.find("friend_request_connects"); f != doc.end()) {
            if (!f->is_boolean()) {
                fail(where + ".friend_request_connects", "expected a boolean");
            }
            cfg.friend_request_connects = f->get<bool>();
        }
        cfg.validate();
    } catch (const ValidationError& e) {
        fail(where, e.what());
    }
    return cfg;
}

ordered_json engine_to_json(const EngineConfig& cfg) {
    ordered_json trust;
    trust["threshold"] = cfg.trust.threshold.to_string();
    trust["zero_denominator_trust"] = cfg.trust.zero_denominator_trust.to_string();
    trust["metric"] = to_string(cfg.trust.metric);
    ordered_json doc;
    doc["trust"] = std::move(trust);
    doc["fallback_policy"] = to_string(cfg.fallback_policy);
    doc["friend_request_connects"] = cfg.friend_request_connects;
    return doc;
}

Topology topology_from_json(const json& t, const std::string& where) {
    if (!t.is_object()) {
        fail(where, "expected an object");
    }
    const std::string type = to_str(require(t, "type", where), where + ".type");
    if (type == "erdos_renyi") {
        only_fields(t, {"type", "n", "edge_probability"}, where);
        return ErdosRenyi{to_count(require(t, "n", where), where + ".n"),
                          to_rational(require(t, "edge_probability", where), where + ".edge_probability")};
    }
    if (type == "barabasi_albert") {
        only_fields(t, {"type", "n", "attachments_per_node"}, where);
        return BarabasiAlbert{to_count(require(t, "n", where), where + ".n"),
                              to_count(require(t, "attachments_per_node", where),
                                       where + ".attachments_per_node")};
    }
    if (type == "explicit") {
        only_fields(t, {"type", "profiles", "edges"}, where);
        ExplicitEdgeList list;
        const json& profiles = require(t, "profiles", where);
        if (!profiles.is_array()) {
            fail(where + ".profiles", "expected an array");
        }
        for (std::size_t i = 0; i < profiles.size(); ++i) {
            list.profiles.push_back(to_id(profiles[i], where + ".profiles[" + std::to_string(i) + "]"));
        }
        if (auto e = t.find("edges"); e != t.end()) {
            if (!e->is_array()) {
                fail(where + ".edges", "expected an array");
            }
            for (std::size_t i = 0; i < e->size(); ++i) {
                const std::string ew = where + ".edges[" + std::to_string(i) + "]";
                const json& pair = (*e)[i];
                if (!pair.is_array() || pair.size() != 2) {
                    fail(ew, "expected a [a, b] pair");
                }
                list.edges.emplace_back(to_id(pair[0], ew), to_id(pair[1], ew));
            }
        }
        return list;
    }
    fail(where + ".type", "unknown topology '" + type + "'");
}

AgentSpec agent_from_json(const json& a, const std::string& where) {
    if (!a.is_object()) {
        fail(where, "expected an object");
    }
    ProfileId id = to_id(require(a, "id", where), where + ".id");
    const std::string behavior = to_str(require(a, "behavior", where), where + ".behavior");
    if (behavior == "reciprocal") {
        only_fields(a, {"id", "behavior", "reply_probability"}, where);
        Reciprocal r;
        if (auto f = a.find("reply_probability"); f != a.end()) {
            r.reply_probability = to_rational(*f, where + ".reply_probability");
        }
        return AgentSpec{std::move(id), r};
    }
    if (behavior == "spammer") {
        only_fields(a, {"id", "behavior", "burst_per_tick", "targets"}, where);
        Spammer s;
        if (auto f = a.find("burst_per_tick"); f != a.end()) {
            s.burst_per_tick = to_count(*f, where + ".burst_per_tick");
        }
        if (auto f = a.find("targets"); f != a.end()) {
            if (f->is_string() && f->get<std::string>() == "random") {
                s.targeting = Spammer::Targeting::Random;
            } else if (f->is_array()) {
                s.targeting = Spammer::Targeting::Fixed;
                for (std::size_t i = 0; i < f->size(); ++i) {
                    s.targets.push_back(to_id((*f)[i], where + ".targets[" + std::to_string(i) + "]"));
                }
            } else {
                fail(where + ".targets", "expected \"random\" or an array of profile ids");
            }
        }
        return AgentSpec{std::move(id), s};
    }
    if (behavior == "silent") {
        only_fields(a, {"id", "behavior"}, where);
        return AgentSpec{std::move(id), Silent{}};
    }
    fail(where + ".behavior", "unknown behavior '" + behavior + "'");
}

} // namespace

EngineConfig parse_engine_config(std::string_view text) {
    return engine_from_json(parse_document(text, "config"), "config");
}

EngineConfig load_engine_config_file(const std::string& path) {
    return parse_engine_config(read_file(path));
}

std::string engine_config_to_json(const EngineConfig& cfg) {
    return engine_to_json(cfg).dump(2) + "\n";
}

SimConfig parse_sim_config(std::string_view text) {
    const json doc = parse_document(text, "scenario");
    const std::string where = "scenario";
    only_fields(doc, {"topology", "agents", "ticks", "seed", "engine"}, where);
    SimConfig cfg;
    cfg.topology = topology_from_json(require(doc, "topology", where), where + ".topology");
    cfg.ticks = to_count(require(doc, "ticks", where), where + ".ticks");
    if (auto f = doc.find("seed"); f != doc.end()) {
        cfg.seed = to_count(*f, where + ".seed");
    }
    if (auto f = doc.find("agents"); f != doc.end()) {
        if (!f->is_array()) {
            fail(where + ".agents", "expected an array");
        }
        for (std::size_t i = 0; i < f->size(); ++i) {
            cfg.agents.push_back(agent_from_json((*f)[i], where + ".agents[" + std::to_string(i) + "]"));
        }
    }
    if (auto f = doc.find("engine"); f != doc.end()) {
        cfg.engine = engine_from_json(*f, where + ".engine");
    }
    try {
        cfg.validate();
    } catch (const ValidationError& e) {
        fail(where, e.what());
    }
    return cfg;
}

SimConfig load_sim_config_file(const std::string& path) {
    return parse_sim_config(read_file(path));
}

std::string sim_config_to_json(const SimConfig& cfg) {
    ordered_json doc;
    ordered_json topo;
    std::visit(
        [&topo](const auto& t) {
            using T = std::decay_t<decltype(t)>;
            if constexpr (std::is_same_v<T, ErdosRenyi>) {
                topo["type"] = "erdos_renyi";
                topo["n"] = t.n;
                topo["edge_probability"] = t.edge_probability.to_string();
            } else if constexpr (std::is_same_v<T, BarabasiAlbert>) {
                topo["type"] = "barabasi_albert";
                topo["n"] = t.n;
                topo["attachments_per_node"] = t.attachments_per_node;
            } else {
                topo["type"] = "explicit";
                topo["profiles"] = ordered_json::array();
                for (const auto& p : t.profiles) {
                    topo["profiles"].push_back(p.str());
                }
                topo["edges"] = ordered_json::array();
                for (const auto& [a, b] : t.edges) {
                    topo["edges"].push_back({a.str(), b.str()});
                }
            }
        },
        cfg.topology);
    doc["topology"] = std::move(topo);

    ordered_json agents = ordered_json::array();
    for (const auto& agent : cfg.agents) {
        ordered_json a;
        a["id"] = agent.id.str();
        std::visit(
            [&a](const auto& b) {
                using T = std::decay_t<decltype(b)>;
                if constexpr (std::is_same_v<T, Reciprocal>) {
                    a["behavior"] = "reciprocal";
                    a["reply_probability"] = b.reply_probability.to_string();
                } else if constexpr (std::is_same_v<T, Spammer>) {
                    a["behavior"] = "spammer";
                    a["burst_per_tick"] = b.burst_per_tick;
                    if (b.targeting == Spammer::Targeting::Random) {
                        a["targets"] = "random";
                    } else {
                        a["targets"] = ordered_json::array();
                        for (const auto& t : b.targets) {
                            a["targets"].push_back(t.str());
                        }
                    }
                } else {
                    a["behavior"] = "silent";
                }
            },
            agent.behavior);
        agents.push_back(std::move(a));
    }
    doc["agents"] = std::move(agents);
    doc["ticks"] = cfg.ticks;
    doc["seed"] = cfg.seed;
    doc["engine"] = engine_to_json(cfg.engine);
    return doc.dump(2) + "\n";
}

} // namespace repfilter
