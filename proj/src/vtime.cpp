#include "arpshield/vtime.hpp"

#include <cctype>

namespace arpshield {

std::optional<VirtualTime> parse_seconds(const std::string& text)
{
    if (text.empty()) {
        return std::nullopt;
    }
    std::uint64_t whole = 0;
    std::uint64_t frac = 0;
    std::size_t frac_digits = 0;
    bool in_fraction = false;
    bool any_digit = false;

    for (char c : text) {
        if (c == '.') {
            if (in_fraction) {
                return std::nullopt;
            }
            in_fraction = true;
            continue;
        }
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            return std::nullopt;
        }
        any_digit = true;
        const std::uint64_t digit = static_cast<std::uint64_t>(c - '0');
        if (in_fraction) {
            if (frac_digits == 9) {
                return std::nullopt;  // finer than a nanosecond
            }
            frac = frac * 10 + digit;
            ++frac_digits;
        } else {
            whole = whole * 10 + digit;
        }
    }
    if (!any_digit) {
        return std::nullopt;
    }
    for (std::size_t i = frac_digits; i < 9; ++i) {
        frac *= 10;
    }
    return VirtualTime{whole * kNanosPerSecond + frac};
}

std::string format_seconds(VirtualTime t)
{
    const std::uint64_t whole = t.ns / kNanosPerSecond;
    std::uint64_t frac = t.ns % kNanosPerSecond;
    std::string result = std::to_string(whole);
    if (frac == 0) {
        return result;
    }
    std::string digits = std::to_string(frac);
    digits.insert(digits.begin(), 9 - digits.size(), '0');
    while (!digits.empty() && digits.back() == '0') {
        digits.pop_back();
    }
    return result + "." + digits;
}

}  // namespace arpshield
