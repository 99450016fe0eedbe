#pragma once

#include <chrono>
#include <string>
#include <string_view>

namespace reef {

using Timestamp = std::chrono::sys_time<std::chrono::milliseconds>;
using Seconds = std::chrono::duration<double>;

// Accepts xsd:date ("2008-07-15", read as midnight UTC) and xsd:dateTime with
// optional fractional seconds and a "Z" or ±hh:mm offset. Throws
// std::invalid_argument on anything else.
Timestamp parseTimestamp(std::string_view text);

// Canonical UTC xsd:dateTime; milliseconds are printed only when non-zero.
std::string formatTimestamp(Timestamp t);

Timestamp now();

int yearOf(Timestamp t);

}  // namespace reef
