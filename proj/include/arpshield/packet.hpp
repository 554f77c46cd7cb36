#ifndef ARPSHIELD_PACKET_HPP
#define ARPSHIELD_PACKET_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace arpshield {

// 48-bit link-layer address. Canonical text form is lowercase
// colon-separated two-hex-digit groups.
struct MacAddress {
    std::array<std::uint8_t, 6> octets{};

    static constexpr MacAddress null() { return MacAddress{}; }
    static constexpr MacAddress broadcast()
    {
        return MacAddress{{0xff, 0xff, 0xff, 0xff, 0xff, 0xff}};
    }

    bool is_null() const;
    bool is_broadcast() const;

    std::string to_string() const;
    static std::optional<MacAddress> parse(const std::string& text);

    auto operator<=>(const MacAddress&) const = default;
};

// IPv4 address in dotted-decimal text form.
struct Ipv4Address {
    std::array<std::uint8_t, 4> octets{};

    std::uint32_t as_u32() const;
    static Ipv4Address from_u32(std::uint32_t value);

    std::string to_string() const;
    static std::optional<Ipv4Address> parse(const std::string& text);

    auto operator<=>(const Ipv4Address&) const = default;
};

// ARP message opcodes. 25 and 26 extend the standard set with the two
// alert message types; the 28-byte body layout is unchanged.
enum class ArpOpcode : std::uint16_t {
    Request = 1,
    Reply = 2,
    BroadcastAlert = 25,
    UnicastAlert = 26,
};

bool is_known_opcode(std::uint16_t raw);

struct EthernetHeader {
    MacAddress dst;
    MacAddress src;
    std::uint16_t ethertype = 0x0806;

    auto operator<=>(const EthernetHeader&) const = default;
};

// Fixed-size ARP body. htype/ptype/hlen/plen are constant for every
// message this testbed handles (Ethernet/IPv4).
struct ArpMessage {
    ArpOpcode opcode = ArpOpcode::Request;
    MacAddress sender_mac;
    Ipv4Address sender_ip;
    MacAddress target_mac;
    Ipv4Address target_ip;

    auto operator<=>(const ArpMessage&) const = default;
};

inline constexpr std::uint16_t kArpEthertype = 0x0806;
inline constexpr std::uint16_t kArpHtypeEthernet = 1;
inline constexpr std::uint16_t kArpPtypeIpv4 = 0x0800;
inline constexpr std::uint8_t kArpHlen = 6;
inline constexpr std::uint8_t kArpPlen = 4;
inline constexpr std::size_t kFrameWireSize = 42;  // 14 eth + 28 arp

// One unit of simulation traffic. frame_id is simulation metadata and is
// never serialized.
struct Frame {
    EthernetHeader eth;
    ArpMessage arp;
    std::uint64_t frame_id = 0;

    auto operator<=>(const Frame&) const = default;
};

enum class DecodeError {
    None,
    WrongLength,
    WrongEthertype,
    UnknownOpcode,
    BadFixedField,
};

const char* to_string(DecodeError err);

// Serializes to exactly 42 bytes, network byte order, Ethernet II + ARP.
std::vector<std::uint8_t> encode_frame(const Frame& frame);

// Inverse of encode_frame on its image. frame_id is caller-assigned.
DecodeError decode_frame(std::span<const std::uint8_t> bytes, Frame& out,
                         std::uint64_t frame_id = 0);

// The core CLCC predicate: ARP-layer sender MAC equals Ethernet-layer
// source MAC. Only the sender side is checked; the target-side pair is
// never compared (see README, detector notes).
bool is_cross_layer_consistent(const Frame& frame);

}  // namespace arpshield

#endif  // ARPSHIELD_PACKET_HPP
