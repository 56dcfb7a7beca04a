#include "repfilter/event_log.hpp"

#include "repfilter/error.hpp"

#include "json.hpp"

#include <fstream>
#include <istream>
#include <ostream>

namespace repfilter {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

json parse_object(std::string_view line, std::initializer_list<const char*> fields) {
    json obj;
    try {
        obj = json::parse(line.begin(), line.end());
    } catch (const json::parse_error& e) {
        throw ParseError(e.what());
    }
    if (!obj.is_object()) {
        throw ParseError("expected a JSON object");
    }
    for (const auto& [key, _] : obj.items()) {
        bool known = false;
        for (const char* f : fields) {
            known = known || key == f;
        }
        if (!known) {
            throw ParseError("unknown field '" + key + "'");
        }
    }
    for (const char* f : fields) {
        if (!obj.contains(f)) {
            throw ParseError(std::string("missing field '") + f + "'");
        }
    }
    return obj;
}

std::uint64_t get_count(const json& obj, const char* field) {
    const json& v = obj.at(field);
    if (!v.is_number_unsigned()) {
        throw ParseError(std::string("field '") + field + "' must be a non-negative integer");
    }
    return v.get<std::uint64_t>();
}

std::string get_string(const json& obj, const char* field) {
    const json& v = obj.at(field);
    if (!v.is_string()) {
        throw ParseError(std::string("field '") + field + "' must be a string");
    }
    return v.get<std::string>();
}

template <typename T, typename Decode>
std::vector<T> read_lines(std::istream& in, Decode decode) {
    std::vector<T> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.find_first_not_of(" \t") == std::string::npos) {
            continue;
        }
        try {
            out.push_back(decode(line));
        } catch (const Error& e) {
            throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

std::ifstream open(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open '" + path + "'");
    }
    return in;
}

} // namespace

std::string encode_event(const InteractionEvent& event) {
    ordered_json obj;
    obj["seq"] = event.seq;
    obj["ts"] = event.ts;
    obj["kind"] = event.kind.str();
    obj["src"] = event.src.str();
    obj["dst"] = event.dst.str();
    return obj.dump();
}

InteractionEvent decode_event(std::string_view line) {
    const json obj = parse_object(line, {"seq", "ts", "kind", "src", "dst"});
    InteractionEvent ev{get_count(obj, "seq"), get_count(obj, "ts"),
                        EventKind::parse(get_string(obj, "kind")),
                        ProfileId(get_string(obj, "src")), ProfileId(get_string(obj, "dst"))};
    if (ev.src == ev.dst) {
        throw ParseError("src and dst are both '" + ev.src.str() + "'");
    }
    return ev;
}

std::string encode_decision(const Decision& d) {
    ordered_json obj;
    obj["seq"] = d.event_seq;
    obj["verdict"] = to_string(d.verdict);
    obj["basis"] = to_string(d.basis);
    obj["via"] = d.via ? ordered_json(d.via->str()) : ordered_json(nullptr);
    obj["trust"] = d.trust ? ordered_json(d.trust->to_string()) : ordered_json(nullptr);
    return obj.dump();
}

Decision decode_decision(std::string_view line) {
    const json obj = parse_object(line, {"seq", "verdict", "basis", "via", "trust"});
    Decision d;
    d.event_seq = get_count(obj, "seq");
    d.verdict = parse_verdict(get_string(obj, "verdict"));
    d.basis = parse_decision_basis(get_string(obj, "basis"));
    if (!obj.at("via").is_null()) {
        d.via = ProfileId(get_string(obj, "via"));
    }
    if (!obj.at("trust").is_null()) {
        d.trust = Rational::parse(get_string(obj, "trust"));
    }
    if (d.via.has_value() != (d.basis == DecisionBasis::InferredTrust)) {
        throw ParseError("'via' must be set exactly for inferred decisions");
    }
    if (d.trust.has_value() == (d.basis == DecisionBasis::Fallback)) {
        throw ParseError("'trust' must be null exactly for fallback decisions");
    }
    return d;
}

std::vector<InteractionEvent> read_event_log(std::istream& in) {
    return read_lines<InteractionEvent>(in, decode_event);
}

std::vector<Decision> read_decision_log(std::istream& in) {
    return read_lines<Decision>(in, decode_decision);
}

std::vector<InteractionEvent> read_event_log_file(const std::string& path) {
    auto in = open(path);
    return read_event_log(in);
}

std::vector<Decision> read_decision_log_file(const std::string& path) {
    auto in = open(path);
    return read_decision_log(in);
}

void write_event_log(std::ostream& out, std::span<const InteractionEvent> events) {
    for (const auto& e : events) {
        out << encode_event(e) << '\n';
    }
}

void write_decision_log(std::ostream& out, std::span<const Decision> decisions) {
    for (const auto& d : decisions) {
        out << encode_decision(d) << '\n';
    }
}

} // namespace repfilter
