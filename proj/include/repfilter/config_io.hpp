#pragma once

#include "repfilter/engine.hpp"
#include "repfilter/simulation.hpp"

#include <string>
#include <string_view>

namespace repfilter {

// Engine config document. Every field is optional:
//   {"trust": {"threshold": "1/2", "zero_denominator_trust": 1, "metric": "ratio"},
//    "fallback_policy": "accept", "friend_request_connects": true}
// Rationals may be given as JSON numbers or as "num/den" / decimal strings.
EngineConfig parse_engine_config(std::string_view text);
EngineConfig load_engine_config_file(const std::string& path);
std::string engine_config_to_json(const EngineConfig& cfg);

// Scenario document:
//   {"topology": {"type": "erdos_renyi", "n": 10, "edge_probability": 0.4},
//    "agents": [{"id": "s", "behavior": "spammer", "burst_per_tick": 2, "targets": "random"},
//               {"id": "v", "behavior": "reciprocal", "reply_probability": 1}],
//    "ticks": 50, "seed": 7, "engine": {...}}
// Topology types: erdos_renyi, barabasi_albert (n, attachments_per_node),
// explicit (profiles, edges as [a, b] pairs).
SimConfig parse_sim_config(std::string_view text);
SimConfig load_sim_config_file(const std::string& path);
std::string sim_config_to_json(const SimConfig& cfg);

} // namespace repfilter
