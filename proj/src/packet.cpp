#include "arpshield/packet.hpp"

#include <cstdio>

namespace arpshield {

namespace {

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t value)
{
    out.push_back(static_cast<std::uint8_t>(value >> 8));
    out.push_back(static_cast<std::uint8_t>(value & 0xff));
}

std::uint16_t get_u16(std::span<const std::uint8_t> bytes, std::size_t offset)
{
    return static_cast<std::uint16_t>((bytes[offset] << 8) | bytes[offset + 1]);
}

}  // namespace

bool MacAddress::is_null() const
{
    return *this == MacAddress::null();
}

bool MacAddress::is_broadcast() const
{
    return *this == MacAddress::broadcast();
}

std::string MacAddress::to_string() const
{
    char buf[18];
    std::snprintf(buf, sizeof(buf), "%02x:%02x:%02x:%02x:%02x:%02x",
                  octets[0], octets[1], octets[2], octets[3], octets[4],
                  octets[5]);
    return buf;
}

std::optional<MacAddress> MacAddress::parse(const std::string& text)
{
    MacAddress mac;
    unsigned values[6];
    char tail = 0;
    int count = std::sscanf(text.c_str(), "%x:%x:%x:%x:%x:%x%c", &values[0],
                            &values[1], &values[2], &values[3], &values[4],
                            &values[5], &tail);
    if (count != 6) {
        return std::nullopt;
    }
    for (int i = 0; i < 6; ++i) {
        if (values[i] > 0xff) {
            return std::nullopt;
        }
        mac.octets[static_cast<std::size_t>(i)] =
            static_cast<std::uint8_t>(values[i]);
    }
    return mac;
}

std::uint32_t Ipv4Address::as_u32() const
{
    return (static_cast<std::uint32_t>(octets[0]) << 24) |
           (static_cast<std::uint32_t>(octets[1]) << 16) |
           (static_cast<std::uint32_t>(octets[2]) << 8) |
           static_cast<std::uint32_t>(octets[3]);
}

Ipv4Address Ipv4Address::from_u32(std::uint32_t value)
{
    Ipv4Address ip;
    ip.octets[0] = static_cast<std::uint8_t>(value >> 24);
    ip.octets[1] = static_cast<std::uint8_t>(value >> 16);
    ip.octets[2] = static_cast<std::uint8_t>(value >> 8);
    ip.octets[3] = static_cast<std::uint8_t>(value);
    return ip;
}

std::string Ipv4Address::to_string() const
{
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%u.%u.%u.%u", octets[0], octets[1],
                  octets[2], octets[3]);
    return buf;
}

std::optional<Ipv4Address> Ipv4Address::parse(const std::string& text)
{
    Ipv4Address ip;
    unsigned values[4];
    char tail = 0;
    int count = std::sscanf(text.c_str(), "%u.%u.%u.%u%c", &values[0],
                            &values[1], &values[2], &values[3], &tail);
    if (count != 4) {
        return std::nullopt;
    }
    for (int i = 0; i < 4; ++i) {
        if (values[i] > 255) {
            return std::nullopt;
        }
        ip.octets[static_cast<std::size_t>(i)] =
            static_cast<std::uint8_t>(values[i]);
    }
    return ip;
}

bool is_known_opcode(std::uint16_t raw)
{
    return raw == 1 || raw == 2 || raw == 25 || raw == 26;
}

const char* to_string(DecodeError err)
{
    switch (err) {
        case DecodeError::None: return "none";
        case DecodeError::WrongLength: return "wrong-length";
        case DecodeError::WrongEthertype: return "wrong-ethertype";
        case DecodeError::UnknownOpcode: return "unknown-opcode";
        case DecodeError::BadFixedField: return "bad-fixed-field";
    }
    return "unknown";
}

std::vector<std::uint8_t> encode_frame(const Frame& frame)
{
    std::vector<std::uint8_t> out;
    out.reserve(kFrameWireSize);

    out.insert(out.end(), frame.eth.dst.octets.begin(),
               frame.eth.dst.octets.end());
    out.insert(out.end(), frame.eth.src.octets.begin(),
               frame.eth.src.octets.end());
    put_u16(out, frame.eth.ethertype);

    put_u16(out, kArpHtypeEthernet);
    put_u16(out, kArpPtypeIpv4);
    out.push_back(kArpHlen);
    out.push_back(kArpPlen);
    put_u16(out, static_cast<std::uint16_t>(frame.arp.opcode));
    out.insert(out.end(), frame.arp.sender_mac.octets.begin(),
               frame.arp.sender_mac.octets.end());
    out.insert(out.end(), frame.arp.sender_ip.octets.begin(),
               frame.arp.sender_ip.octets.end());
    out.insert(out.end(), frame.arp.target_mac.octets.begin(),
               frame.arp.target_mac.octets.end());
    out.insert(out.end(), frame.arp.target_ip.octets.begin(),
               frame.arp.target_ip.octets.end());

    return out;
}

DecodeError decode_frame(std::span<const std::uint8_t> bytes, Frame& out,
                         std::uint64_t frame_id)
{
    if (bytes.size() != kFrameWireSize) {
        return DecodeError::WrongLength;
    }
    if (get_u16(bytes, 12) != kArpEthertype) {
        return DecodeError::WrongEthertype;
    }
    if (get_u16(bytes, 14) != kArpHtypeEthernet ||
        get_u16(bytes, 16) != kArpPtypeIpv4 || bytes[18] != kArpHlen ||
        bytes[19] != kArpPlen) {
        return DecodeError::BadFixedField;
    }
    const std::uint16_t raw_opcode = get_u16(bytes, 20);
    if (!is_known_opcode(raw_opcode)) {
        return DecodeError::UnknownOpcode;
    }

    Frame frame;
    auto copy6 = [&bytes](std::size_t offset) {
        MacAddress mac;
        for (std::size_t i = 0; i < 6; ++i) {
            mac.octets[i] = bytes[offset + i];
        }
        return mac;
    };
    auto copy4 = [&bytes](std::size_t offset) {
        Ipv4Address ip;
        for (std::size_t i = 0; i < 4; ++i) {
            ip.octets[i] = bytes[offset + i];
        }
        return ip;
    };

    frame.eth.dst = copy6(0);
    frame.eth.src = copy6(6);
    frame.eth.ethertype = get_u16(bytes, 12);
    frame.arp.opcode = static_cast<ArpOpcode>(raw_opcode);
    frame.arp.sender_mac = copy6(22);
    frame.arp.sender_ip = copy4(28);
    frame.arp.target_mac = copy6(32);
    frame.arp.target_ip = copy4(38);
    frame.frame_id = frame_id;

    out = frame;
    return DecodeError::None;
}

bool is_cross_layer_consistent(const Frame& frame)
{
    return frame.arp.sender_mac == frame.eth.src;
}

}  // namespace arpshield
