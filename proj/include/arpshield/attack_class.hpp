#ifndef ARPSHIELD_ATTACK_CLASS_HPP
#define ARPSHIELD_ATTACK_CLASS_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>

namespace arpshield {

// Ground-truth label of an injected frame. Normal is benign traffic;
// PKT1..PKT11 are the eleven malicious packet classes.
enum class AttackClass : std::uint8_t {
    Normal = 0,
    PKT1,
    PKT2,
    PKT3,
    PKT4,
    PKT5,
    PKT6,
    PKT7,
    PKT8,
    PKT9,
    PKT10,
    PKT11,
};

inline constexpr std::size_t kAttackClassCount = 12;

constexpr bool is_abnormal(AttackClass cls)
{
    return cls != AttackClass::Normal;
}

const char* to_string(AttackClass cls);
std::optional<AttackClass> attack_class_from_string(const std::string& text);
std::array<AttackClass, kAttackClassCount> all_attack_classes();

}  // namespace arpshield

#endif  // ARPSHIELD_ATTACK_CLASS_HPP
