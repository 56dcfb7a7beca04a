#pragma once

#include "repfilter/graph.hpp"
#include "repfilter/rational.hpp"
#include "repfilter/trust.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace repfilter {

// Interaction kind. Anything that is not one of the named kinds is kept
// verbatim as an Other label.
class EventKind {
public:
    enum Tag { Message, FriendRequest, Comment, Other };

    EventKind() = default;
    EventKind(Tag tag);  // NOLINT: implicit from the named tags
    static EventKind other(std::string label);
    static EventKind parse(std::string_view text);

    Tag tag() const noexcept { return tag_; }
    std::string str() const;

    friend bool operator==(const EventKind&, const EventKind&) = default;

private:
    Tag tag_ = Message;
    std::string label_;
};

struct InteractionEvent {
    std::uint64_t seq = 0;
    std::uint64_t ts = 0;
    EventKind kind;
    ProfileId src;
    ProfileId dst;

    friend bool operator==(const InteractionEvent&, const InteractionEvent&) = default;
};

enum class Verdict { Accept, Reject };
enum class DecisionBasis { DirectTrust, InferredTrust, DefaultTrust, Fallback };

struct Decision {
    std::uint64_t event_seq = 0;
    Verdict verdict = Verdict::Accept;
    DecisionBasis basis = DecisionBasis::Fallback;
    std::optional<ProfileId> via;    // InferredTrust only
    std::optional<Rational> trust;   // absent for Fallback

    friend bool operator==(const Decision&, const Decision&) = default;
};

enum class FallbackPolicy { Accept, Reject };

struct EngineConfig {
    TrustConfig trust;
    FallbackPolicy fallback_policy = FallbackPolicy::Accept;
    bool friend_request_connects = true;

    void validate() const { trust.validate(); }

    friend bool operator==(const EngineConfig&, const EngineConfig&) = default;
};

// Verdict for one event against the current graph. Never mutates.
// Resolution order: direct trust if dst and src are connected, otherwise
// trust inferred through an intermediary, otherwise the fallback policy.
// Acceptance requires trust >= threshold.
Decision decide(const SocialGraph& graph, const InteractionEvent& event, const EngineConfig& cfg);

// Sequential event processor owning the graph.
class FilterEngine {
public:
    explicit FilterEngine(EngineConfig cfg, SocialGraph initial = {});

    // Registers unknown profiles, decides, then updates counters (and the
    // edge for an accepted friend request). Throws EventError for a
    // self-interaction or a seq/ts that goes backwards.
    Decision process(const InteractionEvent& event);

    const SocialGraph& graph() const noexcept { return graph_; }
    const EngineConfig& config() const noexcept { return cfg_; }
    SocialGraph release() && { return std::move(graph_); }

private:
    EngineConfig cfg_;
    SocialGraph graph_;
    std::optional<std::uint64_t> last_seq_;
    std::uint64_t last_ts_ = 0;
};

struct ReplayResult {
    std::vector<Decision> decisions;
    SocialGraph graph;
};

// Folds FilterEngine::process over the events. The first bad event aborts
// with an EventError carrying its seq.
ReplayResult replay(std::span<const InteractionEvent> events, const EngineConfig& cfg,
                    SocialGraph initial = {});

// Rebuilds the graph by counting events per (pair, direction, verdict)
// from scratch, without going through the incremental engine. `initial`
// supplies pre-existing profiles and edges (its counters must be zero).
SocialGraph oracle_state(std::span<const InteractionEvent> events,
                         std::span<const Decision> decisions,
                         bool friend_request_connects = true,
                         const SocialGraph& initial = {});

const char* to_string(Verdict v) noexcept;
const char* to_string(DecisionBasis b) noexcept;
const char* to_string(FallbackPolicy p) noexcept;
Verdict parse_verdict(std::string_view text);
DecisionBasis parse_decision_basis(std::string_view text);
FallbackPolicy parse_fallback_policy(std::string_view text);

} // namespace repfilter
