#pragma once

#include "repfilter/graph.hpp"
#include "repfilter/rational.hpp"

#include <optional>
#include <utility>

namespace repfilter {

enum class TrustMetric {
    Ratio,      // O/I
    Symmetric,  // min(O/I, I/O), bounded to [0, 1]
};

struct TrustConfig {
    Rational threshold{1, 2};
    Rational zero_denominator_trust{1, 1};  // used when I = 0
    TrustMetric metric = TrustMetric::Ratio;

    // threshold in (0, 1] and zero_denominator_trust >= threshold.
    void validate() const;

    friend bool operator==(const TrustConfig&, const TrustConfig&) = default;
};

enum class TrustBasis { Direct, Inferred, Default };

struct TrustScore {
    Rational value;
    TrustBasis basis = TrustBasis::Default;
    std::optional<ProfileId> via;  // set iff basis == Inferred

    friend bool operator==(const TrustScore&, const TrustScore&) = default;
};

// x's trust in y from x's localized data-set: O/I where O counts x -> y and
// I counts y -> x accepted activity. I = 0 yields the configured default.
TrustScore direct_trust(const SocialGraph& graph, const ProfileId& x, const ProfileId& y,
                        const TrustConfig& cfg);

// The same value computed straight from one counter pair.
TrustScore trust_from_counts(std::uint64_t outgoing, std::uint64_t incoming, const TrustConfig& cfg);

// b's view of a borrowed from one intermediary c. A candidate c must be
// connected to both b and a and hold Direct trust from b of at least the
// threshold. The best candidate maximizes T(b,c), then T(c,a), then has the
// smallest id; the result carries T(c,a). Empty if no candidate qualifies.
std::optional<TrustScore> infer_trust(const SocialGraph& graph, const ProfileId& b,
                                      const ProfileId& a, const TrustConfig& cfg);

// Directed weights (T(x,y), T(y,x)) of the edge {x,y}.
std::pair<TrustScore, TrustScore> edge_weight(const SocialGraph& graph, const ProfileId& x,
                                              const ProfileId& y, const TrustConfig& cfg);

const char* to_string(TrustMetric metric) noexcept;
TrustMetric parse_trust_metric(std::string_view text);

} // namespace repfilter
