#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

namespace mv {

// UTC instant with millisecond precision. All catalog timestamps use this;
// wall-clock time never enters the library (callers inject load instants).
struct Instant {
    std::int64_t ms = 0; // milliseconds since the Unix epoch, UTC

    auto operator<=>(const Instant&) const = default;

    Instant plus_ms(std::int64_t delta) const { return Instant{ms + delta}; }

    // Calendar year in UTC (proleptic Gregorian).
    int year() const;

    // "YYYY-MM-DDTHH:MM:SS.mmmZ"
    std::string to_iso() const;

    // Accepts "YYYY-MM-DD", "YYYY-MM-DDTHH:MM:SS[.mmm]Z".
    static std::optional<Instant> parse_iso(const std::string& text);

    // Midnight UTC of the given civil date.
    static Instant from_date(int year, unsigned month, unsigned day);
};

} // namespace mv
