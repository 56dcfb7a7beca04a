#pragma once

// Test-only helpers: graph builders and brute-force oracles that do not
// share code paths with the library's trust and engine implementations.

#include "repfilter/engine.hpp"
#include "repfilter/graph.hpp"
#include "repfilter/trust.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace repfilter::fixtures {

// Accepted traffic between one pair: x -> y and y -> x counts.
struct PairTraffic {
    std::string x;
    std::string y;
    std::uint64_t x_to_y = 0;
    std::uint64_t y_to_x = 0;
    bool connected = true;
};

inline SocialGraph graph_from_traffic(const std::vector<std::string>& profiles,
                                      const std::vector<PairTraffic>& pairs) {
    SocialGraph g;
    for (const auto& p : profiles) {
        g.add_profile(ProfileId(p));
    }
    for (const auto& t : pairs) {
        const ProfileId x(t.x);
        const ProfileId y(t.y);
        g.add_profile(x);
        g.add_profile(y);
        if (t.connected) {
            g.connect(x, y);
        }
        for (std::uint64_t i = 0; i < t.x_to_y; ++i) {
            g.apply_accepted_interaction(x, y);
        }
        for (std::uint64_t i = 0; i < t.y_to_x; ++i) {
            g.apply_accepted_interaction(y, x);
        }
    }
    return g;
}

// Plain fraction on raw counters, compared by cross multiplication.
struct Frac {
    std::uint64_t num;
    std::uint64_t den;
};

inline bool less(const Frac& l, const Frac& r) {
    using u128 = unsigned __int128;
    return u128(l.num) * r.den < u128(r.num) * l.den;
}

inline bool same(const Frac& l, const Frac& r) { return !less(l, r) && !less(r, l); }

// Trust of owner in other straight from the counters; nullopt when I = 0.
inline std::optional<Frac> raw_trust(const SocialGraph& g, const ProfileId& owner,
                                     const ProfileId& other, TrustMetric metric) {
    const auto rec = g.record(owner, other);
    if (rec.incoming == 0) {
        return std::nullopt;
    }
    Frac f{rec.outgoing, rec.incoming};
    if (metric == TrustMetric::Symmetric && rec.outgoing != 0) {
        const Frac inv{rec.incoming, rec.outgoing};
        if (less(inv, f)) {
            f = inv;
        }
    }
    return f;
}

struct BruteInference {
    Frac value;
    std::string via;
};

// Enumerates every profile as a potential intermediary, sorts the full
// candidate list by the ranking rule and returns the head.
inline std::optional<BruteInference> brute_force_infer(const SocialGraph& g, const ProfileId& b,
                                                       const ProfileId& a, const TrustConfig& cfg) {
    struct Candidate {
        Frac vouch;
        Frac value;
        ProfileId id;
    };
    const Frac theta{cfg.threshold.num(), cfg.threshold.den()};
    const Frac fallback{cfg.zero_denominator_trust.num(), cfg.zero_denominator_trust.den()};
    std::vector<Candidate> all;
    for (const auto& c : g.profiles()) {
        if (c == a || c == b || !g.is_connected(b, c) || !g.is_connected(c, a)) {
            continue;
        }
        const auto vouch = raw_trust(g, b, c, cfg.metric);
        if (!vouch || less(*vouch, theta)) {
            continue;
        }
        all.push_back(Candidate{*vouch, raw_trust(g, c, a, cfg.metric).value_or(fallback), c});
    }
    if (all.empty()) {
        return std::nullopt;
    }
    std::sort(all.begin(), all.end(), [](const Candidate& l, const Candidate& r) {
        if (!same(l.vouch, r.vouch)) {
            return less(r.vouch, l.vouch);
        }
        if (!same(l.value, r.value)) {
            return less(r.value, l.value);
        }
        return l.id < r.id;
    });
    return BruteInference{all.front().value, all.front().id.str()};
}

inline std::string pid(std::size_t i) {
    return "p" + std::string(i < 10 ? "0" : "") + std::to_string(i);
}

// Random well-formed event log over `profiles` ids, seq 0..n-1.
inline std::vector<InteractionEvent> random_events(std::mt19937_64& rng, std::size_t profiles,
                                                   std::size_t n) {
    std::vector<InteractionEvent> out;
    out.reserve(n);
    std::uint64_t ts = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t s = rng() % profiles;
        std::size_t d = rng() % (profiles - 1);
        if (d >= s) {
            ++d;
        }
        static const EventKind kinds[] = {EventKind::Message, EventKind::FriendRequest,
                                          EventKind::Comment, EventKind::other("photo_tag")};
        ts += rng() % 2;
        out.push_back(InteractionEvent{i, ts, kinds[rng() % 4], ProfileId(pid(s)), ProfileId(pid(d))});
    }
    return out;
}

} // namespace repfilter::fixtures
