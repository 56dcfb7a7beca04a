#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace repfilter {

// Exact non-negative rational, always stored in lowest terms with den > 0.
// Trust values, thresholds and probabilities all use this type so that
// comparisons against the threshold never depend on floating point.
class Rational {
public:
    constexpr Rational() noexcept = default;
    Rational(std::uint64_t num, std::uint64_t den);

    static Rational integer(std::uint64_t value) { return Rational(value, 1); }

    // Accepts "num/den", "num", or a plain decimal such as "0.125".
    static Rational parse(std::string_view text);

    std::uint64_t num() const noexcept { return num_; }
    std::uint64_t den() const noexcept { return den_; }

    bool is_zero() const noexcept { return num_ == 0; }

    // Reciprocal; throws ValidationError on zero.
    Rational inverse() const;

    // "num/den", always with the slash (the decision log format).
    std::string to_string() const;

    // Fixed-point decimal rounded half-up to `digits` fractional digits.
    std::string to_decimal(int digits = 6) const;

    double to_double() const noexcept { return double(num_) / double(den_); }

    friend bool operator==(const Rational&, const Rational&) noexcept = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept;

private:
    std::uint64_t num_ = 0;
    std::uint64_t den_ = 1;
};

} // namespace repfilter
