#include "repfilter/rational.hpp"

#include "repfilter/error.hpp"

#include <charconv>
#include <numeric>

namespace repfilter {

namespace {

using u128 = unsigned __int128;

std::uint64_t parse_u64(std::string_view digits, std::string_view whole) {
    if (digits.empty()) {
        throw ValidationError("malformed rational '" + std::string(whole) + "'");
    }
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
        throw ValidationError("malformed rational '" + std::string(whole) + "'");
    }
    return value;
}

} // namespace

Rational::Rational(std::uint64_t num, std::uint64_t den) {
    if (den == 0) {
        throw ValidationError("rational with zero denominator");
    }
    const std::uint64_t g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
}

Rational Rational::parse(std::string_view text) {
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        return Rational(parse_u64(text.substr(0, slash), text),
                        parse_u64(text.substr(slash + 1), text));
    }
    auto dot = text.find('.');
    if (dot == std::string_view::npos) {
        return integer(parse_u64(text, text));
    }
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    // 10^18 is the largest power of ten below 2^64.
    if (frac.size() > 18 || (whole.empty() && frac.empty())) {
        throw ValidationError("malformed rational '" + std::string(text) + "'");
    }
    std::uint64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) {
        scale *= 10;
    }
    const std::uint64_t w = whole.empty() ? 0 : parse_u64(whole, text);
    const std::uint64_t f = frac.empty() ? 0 : parse_u64(frac, text);
    const u128 num = u128(w) * scale + f;
    if (num > UINT64_MAX) {
        throw ValidationError("rational out of range '" + std::string(text) + "'");
    }
    return Rational(static_cast<std::uint64_t>(num), scale);
}

Rational Rational::inverse() const {
    if (num_ == 0) {
        throw ValidationError("inverse of zero");
    }
    return Rational(den_, num_);
}

std::string Rational::to_string() const {
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::string Rational::to_decimal(int digits) const {
    u128 scale = 1;
    for (int i = 0; i < digits; ++i) {
        scale *= 10;
    }
    // num * scale fits: num < 2^64 and scale <= 10^18 < 2^60.
    const u128 scaled = (u128(num_) * scale * 2 + den_) / (u128(den_) * 2);
    const u128 whole = scaled / scale;
    u128 frac = scaled % scale;

    auto u128_to_string = [](u128 v) {
        if (v == 0) {
            return std::string("0");
        }
        std::string out;
        while (v > 0) {
            out.insert(out.begin(), char('0' + int(v % 10)));
            v /= 10;
        }
        return out;
    };

    std::string out = u128_to_string(whole);
    if (digits > 0) {
        std::string tail(static_cast<std::size_t>(digits), '0');
        for (int i = digits - 1; i >= 0; --i) {
            tail[static_cast<std::size_t>(i)] = char('0' + int(frac % 10));
            frac /= 10;
        }
        out += "." + tail;
    }
    return out;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept {
    return u128(a.num_) * b.den_ <=> u128(b.num_) * a.den_;
}

} // namespace repfilter
