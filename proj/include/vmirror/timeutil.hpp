#pragma once

#include <string>
#include <string_view>

#include "vmirror/types.hpp"

namespace vmirror {

/// Parses "YYYY-MM-DD", "YYYY-MM-DDTHH:MM[:SS]" with optional "Z" or "+HH:MM"
/// offset (space also accepted as separator). Throws InputError.
Instant parse_instant(std::string_view text);

/// True when the text carries only a calendar date.
bool is_date_only(std::string_view text);

std::string format_instant(Instant t);  // YYYY-MM-DDTHH:MM:SSZ
std::string format_date(Instant t);     // YYYY-MM-DD

/// Window bounds from CSV cells: date-only cells cover whole days (end date
/// inclusive); timestamps are taken verbatim as a half-open interval.
TimeWindow parse_window_cells(std::string_view start, std::string_view end);

/// Inverse of parse_window_cells.
std::pair<std::string, std::string> format_window_cells(const TimeWindow& w);

}  // namespace vmirror
