#include "repfilter/config_io.hpp"
#include "repfilter/error.hpp"
#include "repfilter/event_log.hpp"
#include "repfilter/rng.hpp"
#include "repfilter/simulation.hpp"
#include "repfilter/snapshot.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace repfilter;

namespace {

AgentSpec reciprocal(const char* id, Rational p = Rational(1, 1)) {
    return AgentSpec{ProfileId(id), Reciprocal{p}};
}

AgentSpec spammer(const char* id, std::vector<std::string> targets, std::uint64_t burst = 1) {
    Spammer s;
    s.burst_per_tick = burst;
    if (!targets.empty()) {
        s.targeting = Spammer::Targeting::Fixed;
        for (auto& t : targets) {
            s.targets.emplace_back(t);
        }
    }
    return AgentSpec{ProfileId(id), s};
}

ExplicitEdgeList explicit_topology(std::vector<std::string> profiles,
                                   std::vector<std::pair<std::string, std::string>> edges) {
    ExplicitEdgeList t;
    for (auto& p : profiles) {
        t.profiles.emplace_back(p);
    }
    for (auto& [a, b] : edges) {
        t.edges.emplace_back(ProfileId(a), ProfileId(b));
    }
    return t;
}

std::string log_bytes(const SimResult& r) {
    std::ostringstream out;
    write_event_log(out, r.events);
    write_decision_log(out, r.decisions);
    out << metrics_csv(r.metrics) << snapshot(r.final_graph);
    return out.str();
}

} // namespace

TEST(Rng, DerivedSeedsDifferPerStream)
{
    EXPECT_NE(derive_seed(1, "a"), derive_seed(1, "b"));
    EXPECT_NE(derive_seed(1, "a"), derive_seed(2, "a"));
    EXPECT_EQ(derive_seed(9, "agent"), derive_seed(9, "agent"));
}

TEST(Rng, BernoulliEdgesAndFrequency)
{
    Rng rng(1);
    for (int i = 0; i < 100; ++i) {
        EXPECT_TRUE(rng.bernoulli(Rational(1, 1)));
        EXPECT_FALSE(rng.bernoulli(Rational(0, 1)));
    }
    int hits = 0;
    for (int i = 0; i < 20000; ++i) {
        hits += rng.bernoulli(Rational(3, 10));
    }
    EXPECT_NEAR(hits / 20000.0, 0.3, 0.02);
    for (int i = 0; i < 1000; ++i) {
        EXPECT_LT(rng.uniform(7), 7u);
    }
    EXPECT_THROW(rng.uniform(0), ValidationError);
}

TEST(Network, ErdosRenyiExtremes)
{
    const Network full = generate_network(ErdosRenyi{3, Rational(1, 1)}, 0);
    EXPECT_EQ(full.edges.size(), 3u);
    EXPECT_EQ(full.profiles.size(), 3u);
    EXPECT_TRUE(generate_network(ErdosRenyi{5, Rational(0, 1)}, 0).edges.empty());
}

TEST(Network, GeneratedIdsSortInIndexOrder)
{
    const Network net = generate_network(ErdosRenyi{12, Rational(1, 2)}, 1);
    ASSERT_EQ(net.profiles.size(), 12u);
    EXPECT_EQ(net.profiles.front().str(), "n00");
    EXPECT_EQ(net.profiles.back().str(), "n11");
    EXPECT_TRUE(std::is_sorted(net.profiles.begin(), net.profiles.end()));
}

TEST(Network, BarabasiAlbertIsDeterministic)
{
    const Network a = generate_network(BarabasiAlbert{10, 2}, 42);
    const Network b = generate_network(BarabasiAlbert{10, 2}, 42);
    EXPECT_EQ(a, b);
    // (m+1)-clique plus m edges per later node.
    EXPECT_EQ(a.edges.size(), 3u + 7u * 2u);
    EXPECT_NE(a, generate_network(BarabasiAlbert{10, 2}, 43));
}

TEST(Network, InvalidParameters)
{
    EXPECT_THROW(generate_network(ErdosRenyi{1, Rational(1, 2)}, 0), ValidationError);
    EXPECT_THROW(generate_network(ErdosRenyi{4, Rational(3, 2)}, 0), ValidationError);
    EXPECT_THROW(generate_network(BarabasiAlbert{1, 1}, 0), ValidationError);
    EXPECT_THROW(generate_network(BarabasiAlbert{5, 0}, 0), ValidationError);
    EXPECT_THROW(generate_network(BarabasiAlbert{5, 5}, 0), ValidationError);
    EXPECT_THROW(generate_network(explicit_topology({"a", "a"}, {}), 0), ValidationError);
    EXPECT_THROW(generate_network(explicit_topology({"a", "b"}, {{"a", "c"}}), 0), ValidationError);
    EXPECT_THROW(generate_network(explicit_topology({"a", "b"}, {{"a", "a"}}), 0), ValidationError);
}

TEST(Simulation, SpammerAgainstSilentVictimIsBlockedOnSecondMessage)
{
    SimConfig cfg;
    cfg.topology = explicit_topology({"S", "V"}, {});
    cfg.agents = {spammer("S", {"V"}), AgentSpec{ProfileId("V"), Silent{}}};
    cfg.ticks = 5;
    const SimResult r = run_simulation(cfg);
    ASSERT_EQ(r.decisions.size(), 5u);
    EXPECT_EQ(r.events[0].kind.tag(), EventKind::FriendRequest);
    EXPECT_EQ(r.decisions[0].basis, DecisionBasis::Fallback);
    EXPECT_EQ(r.decisions[0].verdict, Verdict::Accept);
    for (std::size_t i = 1; i < 5; ++i) {
        EXPECT_EQ(r.events[i].kind.tag(), EventKind::Message);
        EXPECT_EQ(r.decisions[i].verdict, Verdict::Reject);
    }
    EXPECT_EQ(r.metrics.mean_messages_before_block, Rational(1, 1));
    EXPECT_EQ(r.metrics.spam_block_rate, Rational(4, 5));
}

TEST(Simulation, TwoReciprocalAgentsNeverReject)
{
    SimConfig cfg;
    cfg.topology = explicit_topology({"A", "B"}, {{"A", "B"}});
    cfg.agents = {reciprocal("A"), reciprocal("B")};
    cfg.ticks = 30;
    const SimResult r = run_simulation(cfg);
    EXPECT_GT(r.metrics.legit_events_total, 30u);
    EXPECT_EQ(r.metrics.legit_events_rejected, 0u);
    EXPECT_EQ(r.metrics.false_positive_rate, Rational(0, 1));
    EXPECT_EQ(oracle_state(r.events, r.decisions, true, r.initial_graph), r.final_graph);
}

TEST(Simulation, NoSpammersMeansZeroBlockRate)
{
    SimConfig cfg;
    cfg.topology = ErdosRenyi{6, Rational(1, 2)};
    cfg.agents = {reciprocal("a", Rational(1, 2)), reciprocal("b")};
    cfg.ticks = 10;
    const SimResult r = run_simulation(cfg);
    EXPECT_EQ(r.metrics.spam_events_total, 0u);
    EXPECT_EQ(r.metrics.spam_block_rate, Rational(0, 1));
}

TEST(Simulation, SeedDeterminism)
{
    SimConfig cfg;
    cfg.topology = BarabasiAlbert{12, 2};
    cfg.agents = {reciprocal("r1", Rational(3, 4)), reciprocal("r2"), spammer("s1", {}, 3),
                  spammer("s2", {"r1", "r2"}, 2)};
    cfg.ticks = 25;
    cfg.seed = 1234;
    const std::string first = log_bytes(run_simulation(cfg));
    EXPECT_EQ(first, log_bytes(run_simulation(cfg)));
    cfg.seed = 1235;
    EXPECT_NE(first, log_bytes(run_simulation(cfg)));
}

TEST(Simulation, AddingAnAgentKeepsOtherSubstreams)
{
    SimConfig cfg;
    cfg.topology = explicit_topology({"A", "B"}, {{"A", "B"}});
    cfg.agents = {reciprocal("A", Rational(1, 2)), reciprocal("B", Rational(1, 2))};
    cfg.ticks = 10;
    const SimResult base = run_simulation(cfg);
    cfg.agents.push_back(AgentSpec{ProfileId("Z"), Silent{}});
    const SimResult more = run_simulation(cfg);
    EXPECT_EQ(base.events, more.events);
}

TEST(Simulation, MetricsConservation)
{
    SimConfig cfg;
    cfg.topology = ErdosRenyi{15, Rational(3, 10)};
    cfg.agents = {spammer("s1", {}, 2), spammer("s2", {}, 1)};
    for (int i = 0; i < 10; ++i) {
        cfg.agents.push_back(AgentSpec{ProfileId("r" + std::to_string(i)), Reciprocal{Rational(i, 10)}});
    }
    cfg.ticks = 40;
    cfg.seed = 8;
    const SimResult r = run_simulation(cfg);
    const auto& m = r.metrics;
    EXPECT_EQ(m.spam_events_total + m.legit_events_total, r.events.size());
    std::uint64_t rejected = 0;
    for (const auto& d : r.decisions) {
        rejected += d.verdict == Verdict::Reject;
    }
    EXPECT_EQ(m.spam_events_rejected + m.legit_events_rejected, rejected);
    EXPECT_LE(m.spam_block_rate, Rational(1, 1));
    EXPECT_LE(m.false_positive_rate, Rational(1, 1));
    EXPECT_EQ(oracle_state(r.events, r.decisions, true, r.initial_graph), r.final_graph);
}

TEST(Simulation, PlacementRules)
{
    SimConfig cfg;
    cfg.topology = ErdosRenyi{3, Rational(1, 1)};
    cfg.agents = {reciprocal("x"), reciprocal("y"), reciprocal("z"), reciprocal("extra")};
    cfg.ticks = 1;
    const SimResult r = run_simulation(cfg);
    const SocialGraph& g = r.initial_graph;
    EXPECT_TRUE(g.is_connected(ProfileId("x"), ProfileId("y")));
    EXPECT_TRUE(g.is_connected(ProfileId("y"), ProfileId("z")));
    EXPECT_TRUE(g.neighbors(ProfileId("extra")).empty());
    EXPECT_FALSE(g.has_profile(ProfileId("n0")));

    cfg.agents = {reciprocal("n1")};
    EXPECT_THROW(run_simulation(cfg), ValidationError);
}

TEST(Simulation, InvalidConfigs)
{
    SimConfig cfg;
    cfg.topology = explicit_topology({"A", "B"}, {});
    cfg.agents = {reciprocal("A"), reciprocal("A")};
    EXPECT_THROW(run_simulation(cfg), ValidationError);
    cfg.agents = {reciprocal("A", Rational(3, 2))};
    EXPECT_THROW(run_simulation(cfg), ValidationError);
    cfg.agents = {spammer("A", {"Q"})};
    EXPECT_THROW(run_simulation(cfg), ValidationError);
    cfg.agents = {spammer("A", {"B"}, 0)};
    EXPECT_THROW(run_simulation(cfg), ValidationError);
    cfg.agents = {};
    cfg.ticks = 0;
    EXPECT_THROW(run_simulation(cfg), ValidationError);
}

TEST(Metrics, Arithmetic)
{
    std::vector<InteractionEvent> events;
    std::vector<Decision> decisions;
    std::uint64_t seq = 0;
    auto add = [&](const char* src, const char* dst, Verdict v) {
        events.push_back(InteractionEvent{seq, seq, EventKind::Message, ProfileId(src), ProfileId(dst)});
        decisions.push_back(Decision{seq, v, DecisionBasis::Fallback, std::nullopt, std::nullopt});
        ++seq;
    };
    // s -> v1: 4 accepted then blocked; s -> v2: 2 accepted then blocked.
    for (int i = 0; i < 4; ++i) add("s", "v1", Verdict::Accept);
    for (int i = 0; i < 3; ++i) add("s", "v1", Verdict::Reject);
    for (int i = 0; i < 2; ++i) add("s", "v2", Verdict::Accept);
    for (int i = 0; i < 1; ++i) add("s", "v2", Verdict::Reject);
    const std::set<ProfileId> spammers = {ProfileId("s")};
    const SimMetrics m = compute_metrics(events, decisions, spammers);
    EXPECT_EQ(m.spam_events_total, 10u);
    EXPECT_EQ(m.spam_events_rejected, 4u);
    EXPECT_EQ(m.mean_messages_before_block, Rational(3, 1));
    EXPECT_EQ(m.legit_events_total, 0u);
    EXPECT_EQ(m.false_positive_rate, Rational(0, 1));

    events.clear();
    decisions.clear();
    seq = 0;
    for (int i = 0; i < 4; ++i) add("s", "v1", Verdict::Accept);
    for (int i = 0; i < 6; ++i) add("s", "v2", Verdict::Reject);
    add("u", "v1", Verdict::Accept);
    const SimMetrics m2 = compute_metrics(events, decisions, spammers);
    EXPECT_EQ(m2.spam_events_total, 10u);
    EXPECT_EQ(m2.spam_block_rate, Rational(3, 5));
    EXPECT_EQ(m2.legit_events_total, 1u);
    EXPECT_EQ(m2.mean_messages_before_block, Rational(0, 1));

    EXPECT_THROW(compute_metrics(events, std::span<const Decision>(decisions).first(2), spammers), Error);
}

TEST(Metrics, CsvFormat)
{
    SimMetrics m;
    m.spam_events_total = 3;
    m.spam_events_rejected = 1;
    m.spam_block_rate = Rational(1, 3);
    m.mean_messages_before_block = Rational(5, 2);
    EXPECT_EQ(metrics_csv(m),
              "spam_block_rate,false_positive_rate,mean_messages_before_block,spam_total,"
              "spam_rejected,legit_total,legit_rejected\n"
              "0.333333,0.000000,2.500000,3,1,0,0\n");
}

TEST(ConfigIo, EngineDefaultsAndOverrides)
{
    EXPECT_EQ(parse_engine_config("{}"), EngineConfig{});
    const EngineConfig cfg = parse_engine_config(
        R"({"trust":{"threshold":0.25,"metric":"symmetric","zero_denominator_trust":"3/2"},)"
        R"("fallback_policy":"reject","friend_request_connects":false})");
    EXPECT_EQ(cfg.trust.threshold, Rational(1, 4));
    EXPECT_EQ(cfg.trust.zero_denominator_trust, Rational(3, 2));
    EXPECT_EQ(cfg.trust.metric, TrustMetric::Symmetric);
    EXPECT_EQ(cfg.fallback_policy, FallbackPolicy::Reject);
    EXPECT_FALSE(cfg.friend_request_connects);
    EXPECT_EQ(parse_engine_config(engine_config_to_json(cfg)), cfg);
    EXPECT_EQ(parse_engine_config(R"({"trust":{"threshold":0.1}})").trust.threshold, Rational(1, 10));
}

TEST(ConfigIo, EngineErrors)
{
    for (const char* bad : {R"({"trust":{"threshold":0}})", R"({"trust":{"threshold":1.5}})",
                            R"({"trust":{"threshold":"1/2","zero_denominator_trust":0.25}})",
                            R"({"trust":{"metric":"product"}})", R"({"fallback_policy":"maybe"})",
                            R"({"friend_request_connects":1})", R"({"unknown":true})",
                            R"({"trust":{"threshold":-0.5}})", R"({)"}) {
        EXPECT_THROW(parse_engine_config(bad), ParseError) << bad;
    }
}

TEST(ConfigIo, ScenarioRoundTrip)
{
    const SimConfig cfg = parse_sim_config(R"({
        "topology": {"type": "barabasi_albert", "n": 8, "attachments_per_node": 2},
        "agents": [
            {"id": "s", "behavior": "spammer", "burst_per_tick": 2, "targets": "random"},
            {"id": "t", "behavior": "spammer", "targets": ["v"]},
            {"id": "v", "behavior": "reciprocal", "reply_probability": 0.75},
            {"id": "q", "behavior": "silent"}
        ],
        "ticks": 12, "seed": 99, "engine": {"trust": {"threshold": "2/3"}}
    })");
    EXPECT_EQ(cfg.ticks, 12u);
    EXPECT_EQ(cfg.seed, 99u);
    EXPECT_EQ(cfg.engine.trust.threshold, Rational(2, 3));
    ASSERT_EQ(cfg.agents.size(), 4u);
    EXPECT_EQ(std::get<Reciprocal>(cfg.agents[2].behavior).reply_probability, Rational(3, 4));
    EXPECT_EQ(std::get<Spammer>(cfg.agents[1].behavior).targeting, Spammer::Targeting::Fixed);

    const SimConfig again = parse_sim_config(sim_config_to_json(cfg));
    EXPECT_EQ(sim_config_to_json(again), sim_config_to_json(cfg));
    EXPECT_EQ(log_bytes(run_simulation(cfg)), log_bytes(run_simulation(again)));
}

TEST(ConfigIo, ScenarioErrors)
{
    for (const char* bad : {
             R"({"ticks": 3})",
             R"({"topology": {"type": "ring", "n": 4}, "ticks": 3})",
             R"({"topology": {"type": "erdos_renyi", "n": 4}, "ticks": 3})",
             R"({"topology": {"type": "erdos_renyi", "n": 4, "edge_probability": 0.5}, "ticks": 0})",
             R"({"topology": {"type": "explicit", "profiles": ["a"], "edges": [["a"]]}, "ticks": 1})",
             R"({"topology": {"type": "explicit", "profiles": []}, "ticks": 1,
                 "agents": [{"id": "a", "behavior": "lurker"}]})",
             R"({"topology": {"type": "explicit", "profiles": []}, "ticks": 1,
                 "agents": [{"id": "a", "behavior": "spammer", "targets": 3}]})",
         }) {
        EXPECT_THROW(parse_sim_config(bad), ParseError) << bad;
    }
}
