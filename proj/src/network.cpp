#include "repfilter/error.hpp"
#include "repfilter/rng.hpp"
#include "repfilter/simulation.hpp"

#include <algorithm>
#include <set>

namespace repfilter {

namespace {

std::vector<ProfileId> generated_ids(std::uint64_t n) {
    const std::size_t width = std::to_string(n - 1).size();
    std::vector<ProfileId> ids;
    ids.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        std::string digits = std::to_string(i);
        ids.emplace_back("n" + std::string(width - digits.size(), '0') + digits);
    }
    return ids;
}

Network erdos_renyi(const ErdosRenyi& t, std::uint64_t seed) {
    if (t.n < 2) {
        throw ValidationError("erdos_renyi: n must be at least 2");
    }
    if (t.edge_probability > Rational::integer(1)) {
        throw ValidationError("erdos_renyi: edge_probability " + t.edge_probability.to_string() +
                              " exceeds 1");
    }
    Rng rng(derive_seed(seed, "topology"));
    Network net{generated_ids(t.n), {}};
    for (std::size_t i = 0; i < net.profiles.size(); ++i) {
        for (std::size_t j = i + 1; j < net.profiles.size(); ++j) {
            if (rng.bernoulli(t.edge_probability)) {
                net.edges.emplace_back(net.profiles[i], net.profiles[j]);
            }
        }
    }
    return net;
}

Network barabasi_albert(const BarabasiAlbert& t, std::uint64_t seed) {
    const std::uint64_t m = t.attachments_per_node;
    if (t.n < 2) {
        throw ValidationError("barabasi_albert: n must be at least 2");
    }
    if (m < 1 || m >= t.n) {
        throw ValidationError("barabasi_albert: attachments_per_node must lie in [1, n)");
    }
    Rng rng(derive_seed(seed, "topology"));
    std::vector<ProfileId> ids = generated_ids(t.n);
    std::set<std::pair<std::size_t, std::size_t>> edges;
    // Each edge contributes both endpoints, so a uniform pick from this list
    // is a degree-proportional pick of a node.
    std::vector<std::size_t> endpoints;

    const std::size_t seed_nodes = static_cast<std::size_t>(m) + 1;
    for (std::size_t i = 0; i < seed_nodes; ++i) {
        for (std::size_t j = i + 1; j < seed_nodes; ++j) {
            edges.emplace(i, j);
            endpoints.push_back(i);
            endpoints.push_back(j);
        }
    }
    for (std::size_t v = seed_nodes; v < ids.size(); ++v) {
        std::set<std::size_t> targets;
        while (targets.size() < m) {
            targets.insert(endpoints[rng.uniform(endpoints.size())]);
        }
        for (std::size_t u : targets) {
            edges.emplace(u, v);
            endpoints.push_back(u);
            endpoints.push_back(v);
        }
    }

    Network net{ids, {}};
    for (const auto& [u, v] : edges) {
        net.edges.emplace_back(ids[u], ids[v]);
    }
    return net;
}

Network explicit_list(const ExplicitEdgeList& t) {
    std::set<ProfileId> profiles(t.profiles.begin(), t.profiles.end());
    if (profiles.size() != t.profiles.size()) {
        throw ValidationError("explicit topology: duplicate profile id");
    }
    std::set<std::pair<ProfileId, ProfileId>> edges;
    for (const auto& [x, y] : t.edges) {
        if (x == y) {
            throw ValidationError("explicit topology: self-edge on '" + x.str() + "'");
        }
        if (!profiles.contains(x) || !profiles.contains(y)) {
            throw ValidationError("explicit topology: edge " + x.str() + "-" + y.str() +
                                  " references an unlisted profile");
        }
        if (!edges.insert(x < y ? std::pair{x, y} : std::pair{y, x}).second) {
            throw ValidationError("explicit topology: duplicate edge " + x.str() + "-" + y.str());
        }
    }
    return Network{{profiles.begin(), profiles.end()}, {edges.begin(), edges.end()}};
}

} // namespace

Network generate_network(const Topology& topology, std::uint64_t seed) {
    return std::visit(
        [seed](const auto& t) -> Network {
            using T = std::decay_t<decltype(t)>;
            if constexpr (std::is_same_v<T, ErdosRenyi>) {
                return erdos_renyi(t, seed);
            } else if constexpr (std::is_same_v<T, BarabasiAlbert>) {
                return barabasi_albert(t, seed);
            } else {
                return explicit_list(t);
            }
        },
        topology);
}

} // namespace repfilter
