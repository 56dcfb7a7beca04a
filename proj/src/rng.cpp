#include "repfilter/rng.hpp"

#include "repfilter/error.hpp"

namespace repfilter {

namespace {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

std::uint64_t derive_seed(std::uint64_t root, std::string_view stream) noexcept {
    // FNV-1a over the stream name, then mixed with the root seed.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : stream) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return splitmix64(splitmix64(root) ^ h);
}

bool Rng::bernoulli(const Rational& p) {
    if (p.num() >= p.den()) {
        return true;
    }
    if (p.is_zero()) {
        return false;
    }
    using u128 = unsigned __int128;
    // u / 2^64 < num / den  <=>  u * den < num * 2^64
    return u128(next()) * p.den() < (u128(p.num()) << 64);
}

std::uint64_t Rng::uniform(std::uint64_t n) {
    if (n == 0) {
        throw ValidationError("uniform draw over an empty range");
    }
    // Rejection sampling removes modulo bias.
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % n + 1) % n;
    std::uint64_t x;
    do {
        x = next();
    } while (x > limit);
    return x % n;
}

} // namespace repfilter
