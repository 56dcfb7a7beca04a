#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace repfilter {

// Opaque profile identifier. Non-empty, no whitespace or control bytes.
// Ordered lexicographically by byte value, which is the tie-break order
// used everywhere determinism matters.
class ProfileId {
public:
    explicit ProfileId(std::string value);
    explicit ProfileId(std::string_view value) : ProfileId(std::string(value)) {}
    explicit ProfileId(const char* value) : ProfileId(std::string(value)) {}

    const std::string& str() const noexcept { return value_; }

    friend bool operator==(const ProfileId&, const ProfileId&) = default;
    friend std::strong_ordering operator<=>(const ProfileId& a, const ProfileId& b) noexcept {
        // char_traits<char> compares as unsigned char, i.e. by byte value.
        const int c = a.value_.compare(b.value_);
        return c < 0 ? std::strong_ordering::less
                     : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }

private:
    std::string value_;
};

// Label carried by every edge. Inert for trust computation.
class RelationshipKind {
public:
    RelationshipKind() : value_("connection") {}
    explicit RelationshipKind(std::string value);

    const std::string& str() const noexcept { return value_; }

    friend bool operator==(const RelationshipKind&, const RelationshipKind&) = default;

private:
    std::string value_;
};

// True if `text` is usable as a ProfileId or RelationshipKind.
bool is_valid_label(std::string_view text) noexcept;

} // namespace repfilter
