#include "repfilter/profile_id.hpp"

#include "repfilter/error.hpp"

namespace repfilter {

bool is_valid_label(std::string_view text) noexcept {
    if (text.empty()) {
        return false;
    }
    for (unsigned char c : text) {
        if (c <= 0x20 || c == 0x7f) {
            return false;
        }
    }
    return true;
}

ProfileId::ProfileId(std::string value) : value_(std::move(value)) {
    if (!is_valid_label(value_)) {
        throw ValidationError("malformed profile id '" + value_ + "'");
    }
}

RelationshipKind::RelationshipKind(std::string value) : value_(std::move(value)) {
    if (!is_valid_label(value_)) {
        throw ValidationError("malformed relationship kind '" + value_ + "'");
    }
}

} // namespace repfilter
