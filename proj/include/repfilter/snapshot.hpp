#pragma once

#include "repfilter/graph.hpp"

#include <string>
#include <string_view>

namespace repfilter {

inline constexpr int kSnapshotFormatVersion = 1;

// Canonical JSON document: keys sorted, profiles/edges/rows ordered by
// ProfileId, newline-terminated. Equal graphs produce identical bytes.
std::string snapshot(const SocialGraph& graph);

// Inverse of snapshot(). Throws ParseError naming the offending location
// (line/column for syntax errors, a JSON pointer for schema errors).
SocialGraph load_snapshot(std::string_view bytes);

SocialGraph load_snapshot_file(const std::string& path);
void write_snapshot_file(const SocialGraph& graph, const std::string& path);

} // namespace repfilter
