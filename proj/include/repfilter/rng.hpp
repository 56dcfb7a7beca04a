#pragma once

#include "repfilter/rational.hpp"

#include <cstdint>
#include <random>
#include <string_view>

namespace repfilter {

// Seed for an independent substream, derived from the root seed and a
// stream name (an agent id, "topology", ...). Adding a stream never
// perturbs the draws of another.
std::uint64_t derive_seed(std::uint64_t root, std::string_view stream) noexcept;

// mt19937_64 is fully specified by the standard; the helpers below avoid
// the standard distributions, whose output is implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Exact: true with probability p.num / p.den over 64-bit draws.
    bool bernoulli(const Rational& p);

    // Uniform in [0, n). n must be positive.
    std::uint64_t uniform(std::uint64_t n);

private:
    std::mt19937_64 engine_;
};

} // namespace repfilter
