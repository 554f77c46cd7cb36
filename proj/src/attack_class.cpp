#include "arpshield/attack_class.hpp"

namespace arpshield {

const char* to_string(AttackClass cls)
{
    switch (cls) {
        case AttackClass::Normal: return "Normal";
        case AttackClass::PKT1: return "PKT1";
        case AttackClass::PKT2: return "PKT2";
        case AttackClass::PKT3: return "PKT3";
        case AttackClass::PKT4: return "PKT4";
        case AttackClass::PKT5: return "PKT5";
        case AttackClass::PKT6: return "PKT6";
        case AttackClass::PKT7: return "PKT7";
        case AttackClass::PKT8: return "PKT8";
        case AttackClass::PKT9: return "PKT9";
        case AttackClass::PKT10: return "PKT10";
        case AttackClass::PKT11: return "PKT11";
    }
    return "?";
}

std::optional<AttackClass> attack_class_from_string(const std::string& text)
{
    for (AttackClass cls : all_attack_classes()) {
        if (text == to_string(cls)) {
            return cls;
        }
    }
    return std::nullopt;
}

std::array<AttackClass, kAttackClassCount> all_attack_classes()
{
    std::array<AttackClass, kAttackClassCount> classes{};
    for (std::size_t i = 0; i < kAttackClassCount; ++i) {
        classes[i] = static_cast<AttackClass>(i);
    }
    return classes;
}

}  // namespace arpshield
