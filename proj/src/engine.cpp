#include "repfilter/engine.hpp"

#include "repfilter/error.hpp"

namespace repfilter {

EventKind::EventKind(Tag tag) : tag_(tag) {
    if (tag == Other) {
        throw ValidationError("EventKind::Other needs a label");
    }
}

EventKind EventKind::other(std::string label) {
    if (label.empty()) {
        throw ValidationError("empty event kind label");
    }
    if (label == "message" || label == "friend_request" || label == "comment") {
        return parse(label);
    }
    EventKind k;
    k.tag_ = Other;
    k.label_ = std::move(label);
    return k;
}

EventKind EventKind::parse(std::string_view text) {
    if (text == "message") {
        return Message;
    }
    if (text == "friend_request") {
        return FriendRequest;
    }
    if (text == "comment") {
        return Comment;
    }
    return other(std::string(text));
}

std::string EventKind::str() const {
    switch (tag_) {
    case Message:
        return "message";
    case FriendRequest:
        return "friend_request";
    case Comment:
        return "comment";
    case Other:
        break;
    }
    return label_;
}

Decision decide(const SocialGraph& graph, const InteractionEvent& event, const EngineConfig& cfg) {
    if (event.src == event.dst) {
        throw EventError(event.seq, "source and destination are both '" + event.src.str() + "'");
    }
    const TrustConfig& tc = cfg.trust;
    Decision d;
    d.event_seq = event.seq;

    if (graph.is_connected(event.dst, event.src)) {
        const TrustScore t = direct_trust(graph, event.dst, event.src, tc);
        d.basis = t.basis == TrustBasis::Default ? DecisionBasis::DefaultTrust : DecisionBasis::DirectTrust;
        d.trust = t.value;
        d.verdict = t.value >= tc.threshold ? Verdict::Accept : Verdict::Reject;
        return d;
    }
    if (auto t = infer_trust(graph, event.dst, event.src, tc)) {
        d.basis = DecisionBasis::InferredTrust;
        d.via = t->via;
        d.trust = t->value;
        d.verdict = t->value >= tc.threshold ? Verdict::Accept : Verdict::Reject;
        return d;
    }
    d.basis = DecisionBasis::Fallback;
    d.verdict = cfg.fallback_policy == FallbackPolicy::Accept ? Verdict::Accept : Verdict::Reject;
    return d;
}

FilterEngine::FilterEngine(EngineConfig cfg, SocialGraph initial)
    : cfg_(std::move(cfg)), graph_(std::move(initial)) {
    cfg_.validate();
}

Decision FilterEngine::process(const InteractionEvent& event) {
    if (last_seq_ && event.seq <= *last_seq_) {
        throw EventError(event.seq, "out of order, previous seq was " + std::to_string(*last_seq_));
    }
    if (last_seq_ && event.ts < last_ts_) {
        throw EventError(event.seq, "timestamp " + std::to_string(event.ts) +
                                        " precedes previous timestamp " + std::to_string(last_ts_));
    }
    if (event.src == event.dst) {
        throw EventError(event.seq, "source and destination are both '" + event.src.str() + "'");
    }

    graph_.add_profile(event.src);
    graph_.add_profile(event.dst);

    Decision d = decide(graph_, event, cfg_);
    if (d.verdict == Verdict::Accept) {
        if (event.kind.tag() == EventKind::FriendRequest && cfg_.friend_request_connects &&
            !graph_.is_connected(event.src, event.dst)) {
            graph_.connect(event.src, event.dst);
        }
        graph_.apply_accepted_interaction(event.src, event.dst);
    } else {
        graph_.record_rejected(event.src, event.dst);
    }
    last_seq_ = event.seq;
    last_ts_ = event.ts;
    return d;
}

ReplayResult replay(std::span<const InteractionEvent> events, const EngineConfig& cfg,
                    SocialGraph initial) {
    FilterEngine engine(cfg, std::move(initial));
    ReplayResult out;
    out.decisions.reserve(events.size());
    for (const auto& e : events) {
        out.decisions.push_back(engine.process(e));
    }
    out.graph = std::move(engine).release();
    return out;
}

const char* to_string(Verdict v) noexcept {
    return v == Verdict::Accept ? "accept" : "reject";
}

const char* to_string(DecisionBasis b) noexcept {
    switch (b) {
    case DecisionBasis::DirectTrust:
        return "direct";
    case DecisionBasis::InferredTrust:
        return "inferred";
    case DecisionBasis::DefaultTrust:
        return "default";
    case DecisionBasis::Fallback:
        break;
    }
    return "fallback";
}

const char* to_string(FallbackPolicy p) noexcept {
    return p == FallbackPolicy::Accept ? "accept" : "reject";
}

Verdict parse_verdict(std::string_view text) {
    if (text == "accept") {
        return Verdict::Accept;
    }
    if (text == "reject") {
        return Verdict::Reject;
    }
    throw ValidationError("unknown verdict '" + std::string(text) + "'");
}

DecisionBasis parse_decision_basis(std::string_view text) {
    if (text == "direct") {
        return DecisionBasis::DirectTrust;
    }
    if (text == "inferred") {
        return DecisionBasis::InferredTrust;
    }
    if (text == "default") {
        return DecisionBasis::DefaultTrust;
    }
    if (text == "fallback") {
        return DecisionBasis::Fallback;
    }
    throw ValidationError("unknown decision basis '" + std::string(text) + "'");
}

FallbackPolicy parse_fallback_policy(std::string_view text) {
    if (text == "accept") {
        return FallbackPolicy::Accept;
    }
    if (text == "reject") {
        return FallbackPolicy::Reject;
    }
    throw ValidationError("unknown fallback policy '" + std::string(text) + "'");
}

} // namespace repfilter
