#ifndef ARPSHIELD_VTIME_HPP
#define ARPSHIELD_VTIME_HPP

#include <cstdint>
#include <optional>
#include <string>

namespace arpshield {

// Virtual simulation time. Integer nanoseconds keep every time
// comparison exact and platform-independent; no floating point enters
// the engine.
struct VirtualTime {
    std::uint64_t ns = 0;

    friend auto operator<=>(const VirtualTime&, const VirtualTime&) = default;
};

inline constexpr std::uint64_t kNanosPerSecond = 1'000'000'000ULL;

constexpr VirtualTime vtime_seconds(std::uint64_t seconds)
{
    return VirtualTime{seconds * kNanosPerSecond};
}

constexpr VirtualTime vtime_millis(std::uint64_t millis)
{
    return VirtualTime{millis * 1'000'000ULL};
}

constexpr VirtualTime operator+(VirtualTime t, VirtualTime delta)
{
    return VirtualTime{t.ns + delta.ns};
}

// Parses a non-negative decimal number of seconds ("600", "0.5",
// "0.001") into nanoseconds without going through floating point.
// At most nine fractional digits are accepted.
std::optional<VirtualTime> parse_seconds(const std::string& text);

// Renders nanoseconds back as a decimal-seconds string with no
// trailing zeros ("600", "0.5").
std::string format_seconds(VirtualTime t);

}  // namespace arpshield

#endif  // ARPSHIELD_VTIME_HPP
