#include "repfilter/trust.hpp"

#include "repfilter/error.hpp"

namespace repfilter {

void TrustConfig::validate() const {
    if (threshold.is_zero() || threshold > Rational::integer(1)) {
        throw ValidationError("threshold must lie in (0, 1], got " + threshold.to_string());
    }
    if (zero_denominator_trust < threshold) {
        throw ValidationError("zero_denominator_trust " + zero_denominator_trust.to_string() +
                              " is below the threshold " + threshold.to_string());
    }
}

TrustScore trust_from_counts(std::uint64_t outgoing, std::uint64_t incoming, const TrustConfig& cfg) {
    if (incoming == 0) {
        return TrustScore{cfg.zero_denominator_trust, TrustBasis::Default, std::nullopt};
    }
    Rational value(outgoing, incoming);
    if (cfg.metric == TrustMetric::Symmetric && !value.is_zero()) {
        value = std::min(value, value.inverse());
    }
    return TrustScore{value, TrustBasis::Direct, std::nullopt};
}

TrustScore direct_trust(const SocialGraph& graph, const ProfileId& x, const ProfileId& y,
                        const TrustConfig& cfg) {
    if (x == y) {
        throw GraphError("direct_trust: profile '" + x.str() + "' cannot rate itself");
    }
    const ActivityRecord rec = graph.record(x, y);
    return trust_from_counts(rec.outgoing, rec.incoming, cfg);
}

std::optional<TrustScore> infer_trust(const SocialGraph& graph, const ProfileId& b,
                                      const ProfileId& a, const TrustConfig& cfg) {
    if (a == b) {
        throw GraphError("infer_trust: source and destination are both '" + a.str() + "'");
    }
    const ProfileId* best = nullptr;
    Rational best_vouch;
    Rational best_value;
    // Neighbors are visited in ascending id order, so keeping the first of
    // equal candidates implements the smallest-id tie-break.
    for (const auto& [c, _] : graph.neighbors(b)) {
        if (c == a || !graph.is_connected(c, a)) {
            continue;
        }
        const TrustScore vouch = direct_trust(graph, b, c, cfg);
        if (vouch.basis != TrustBasis::Direct || vouch.value < cfg.threshold) {
            continue;
        }
        const Rational value = direct_trust(graph, c, a, cfg).value;
        if (best == nullptr || vouch.value > best_vouch ||
            (vouch.value == best_vouch && value > best_value)) {
            best = &c;
            best_vouch = vouch.value;
            best_value = value;
        }
    }
    if (best == nullptr) {
        return std::nullopt;
    }
    return TrustScore{best_value, TrustBasis::Inferred, *best};
}

std::pair<TrustScore, TrustScore> edge_weight(const SocialGraph& graph, const ProfileId& x,
                                              const ProfileId& y, const TrustConfig& cfg) {
    if (!graph.is_connected(x, y)) {
        throw GraphError("edge_weight: '" + x.str() + "' and '" + y.str() + "' are not connected");
    }
    return {direct_trust(graph, x, y, cfg), direct_trust(graph, y, x, cfg)};
}

const char* to_string(TrustMetric metric) noexcept {
    return metric == TrustMetric::Ratio ? "ratio" : "symmetric";
}

TrustMetric parse_trust_metric(std::string_view text) {
    if (text == "ratio") {
        return TrustMetric::Ratio;
    }
    if (text == "symmetric") {
        return TrustMetric::Symmetric;
    }
    throw ValidationError("unknown trust metric '" + std::string(text) + "'");
}

} // namespace repfilter
