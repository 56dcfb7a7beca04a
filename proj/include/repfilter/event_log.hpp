#pragma once

#include "repfilter/engine.hpp"

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace repfilter {

// JSON Lines codecs for event and decision logs. One object per line,
// fixed field order on output, unknown fields rejected on input.
//
//   {"seq":0,"ts":0,"kind":"message","src":"A","dst":"B"}
//   {"seq":0,"verdict":"accept","basis":"fallback","via":null,"trust":null}

std::string encode_event(const InteractionEvent& event);
InteractionEvent decode_event(std::string_view line);

std::string encode_decision(const Decision& decision);
Decision decode_decision(std::string_view line);

// Blank lines are skipped. Errors are ParseError with "line N: " prefix.
std::vector<InteractionEvent> read_event_log(std::istream& in);
std::vector<Decision> read_decision_log(std::istream& in);
std::vector<InteractionEvent> read_event_log_file(const std::string& path);
std::vector<Decision> read_decision_log_file(const std::string& path);

void write_event_log(std::ostream& out, std::span<const InteractionEvent> events);
void write_decision_log(std::ostream& out, std::span<const Decision> decisions);

} // namespace repfilter
