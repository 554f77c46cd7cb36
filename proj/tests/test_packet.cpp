#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "arpshield/packet.hpp"
#include "arpshield/rng.hpp"

using namespace arpshield;

namespace {

Frame random_valid_frame(SplitMix64& rng)
{
    static const ArpOpcode opcodes[] = {ArpOpcode::Request, ArpOpcode::Reply,
                                        ArpOpcode::BroadcastAlert,
                                        ArpOpcode::UnicastAlert};
    Frame frame;
    auto fill_mac = [&rng](MacAddress& mac) {
        for (auto& b : mac.octets) {
            b = static_cast<std::uint8_t>(rng.next());
        }
    };
    auto fill_ip = [&rng](Ipv4Address& ip) {
        for (auto& b : ip.octets) {
            b = static_cast<std::uint8_t>(rng.next());
        }
    };
    fill_mac(frame.eth.dst);
    fill_mac(frame.eth.src);
    frame.arp.opcode = opcodes[rng.below(4)];
    fill_mac(frame.arp.sender_mac);
    fill_ip(frame.arp.sender_ip);
    fill_mac(frame.arp.target_mac);
    fill_ip(frame.arp.target_ip);
    frame.frame_id = rng.next();
    return frame;
}

}  // namespace

TEST_CASE("mac address text forms")
{
    const MacAddress mac{{0x00, 0x05, 0x79, 0x66, 0x68, 0x01}};
    CHECK(mac.to_string() == "00:05:79:66:68:01");
    CHECK(MacAddress::parse("00:05:79:66:68:01") == mac);
    CHECK(MacAddress::parse("0:5:79:66:68:1") == mac);  // short groups ok
    CHECK(!MacAddress::parse("not-a-mac"));
    CHECK(!MacAddress::parse("00:05:79:66:68"));
    CHECK(!MacAddress::parse("00:05:79:66:68:100"));
    CHECK(MacAddress::null().is_null());
    CHECK(MacAddress::broadcast().is_broadcast());
    CHECK(MacAddress::null().to_string() == "00:00:00:00:00:00");
    CHECK(MacAddress::broadcast().to_string() == "ff:ff:ff:ff:ff:ff");
}

TEST_CASE("ipv4 address text forms")
{
    const Ipv4Address ip{{192, 169, 1, 10}};
    CHECK(ip.to_string() == "192.169.1.10");
    CHECK(Ipv4Address::parse("192.169.1.10") == ip);
    CHECK(!Ipv4Address::parse("192.169.1"));
    CHECK(!Ipv4Address::parse("192.169.1.300"));
    CHECK(!Ipv4Address::parse("192.169.1.10x"));
    CHECK(Ipv4Address::from_u32(ip.as_u32()) == ip);
}

TEST_CASE("fixed field layout")
{
    Frame frame;  // all-zero addresses, opcode 1
    const auto bytes = encode_frame(frame);
    REQUIRE(bytes.size() == kFrameWireSize);
    CHECK(bytes[12] == 0x08);
    CHECK(bytes[13] == 0x06);
    CHECK(bytes[20] == 0x00);
    CHECK(bytes[21] == 0x01);
    // htype/ptype/hlen/plen
    CHECK(bytes[14] == 0x00);
    CHECK(bytes[15] == 0x01);
    CHECK(bytes[16] == 0x08);
    CHECK(bytes[17] == 0x00);
    CHECK(bytes[18] == 6);
    CHECK(bytes[19] == 4);
}

TEST_CASE("sender fields land at the right offsets")
{
    Frame frame;
    frame.arp.sender_mac = *MacAddress::parse("00:05:79:66:68:01");
    frame.arp.sender_ip = *Ipv4Address::parse("192.169.1.10");
    const auto bytes = encode_frame(frame);
    // ARP body starts at byte 14; sender mac is body bytes 8..13.
    const std::uint8_t expected_mac[] = {0x00, 0x05, 0x79, 0x66, 0x68, 0x01};
    for (int i = 0; i < 6; ++i) {
        CHECK(bytes[14 + 8 + i] == expected_mac[i]);
    }
    const std::uint8_t expected_ip[] = {0xc0, 0xa9, 0x01, 0x0a};
    for (int i = 0; i < 4; ++i) {
        CHECK(bytes[14 + 14 + i] == expected_ip[i]);
    }
}

TEST_CASE("round trip of pseudo-random valid frames")
{
    SplitMix64 rng(0x9a7c);
    for (int i = 0; i < 1000; ++i) {
        const Frame frame = random_valid_frame(rng);
        const auto bytes = encode_frame(frame);
        REQUIRE(bytes.size() == kFrameWireSize);
        Frame decoded;
        REQUIRE(decode_frame(bytes, decoded, frame.frame_id) ==
                DecodeError::None);
        CHECK(decoded == frame);
    }
}

TEST_CASE("encoding is deterministic")
{
    SplitMix64 rng(7);
    const Frame frame = random_valid_frame(rng);
    CHECK(encode_frame(frame) == encode_frame(frame));
}

TEST_CASE("decode error classes")
{
    SplitMix64 rng(11);
    const Frame frame = random_valid_frame(rng);
    auto bytes = encode_frame(frame);
    Frame out;

    SUBCASE("wrong length")
    {
        bytes.pop_back();
        CHECK(decode_frame(bytes, out) == DecodeError::WrongLength);
        bytes.push_back(0);
        bytes.push_back(0);
        CHECK(decode_frame(bytes, out) == DecodeError::WrongLength);
    }
    SUBCASE("wrong ethertype")
    {
        bytes[12] = 0x08;
        bytes[13] = 0x00;  // IPv4, not ARP
        CHECK(decode_frame(bytes, out) == DecodeError::WrongEthertype);
    }
    SUBCASE("unknown opcode")
    {
        bytes[20] = 0x00;
        bytes[21] = 0x03;
        CHECK(decode_frame(bytes, out) == DecodeError::UnknownOpcode);
    }
    SUBCASE("bad fixed fields")
    {
        bytes[15] = 0x02;  // htype 2
        CHECK(decode_frame(bytes, out) == DecodeError::BadFixedField);
    }
}

TEST_CASE("codec totality over arbitrary 42-byte buffers")
{
    SplitMix64 rng(0xdead);
    for (int i = 0; i < 2000; ++i) {
        std::vector<std::uint8_t> bytes(kFrameWireSize);
        for (auto& b : bytes) {
            b = static_cast<std::uint8_t>(rng.next());
        }
        Frame out;
        const DecodeError err = decode_frame(bytes, out);
        if (err == DecodeError::None) {
            CHECK(encode_frame(out) == bytes);
        } else {
            CHECK((err == DecodeError::WrongEthertype ||
                   err == DecodeError::UnknownOpcode ||
                   err == DecodeError::BadFixedField));
        }
    }
}

TEST_CASE("cross-layer consistency reads only the two mac fields")
{
    Frame frame;
    frame.arp.sender_mac = *MacAddress::parse("00:05:79:66:68:12");
    frame.eth.src = *MacAddress::parse("00:05:79:66:63:01");
    CHECK(!is_cross_layer_consistent(frame));

    frame.eth.src = frame.arp.sender_mac = *MacAddress::parse(
        "00:05:79:66:68:01");
    CHECK(is_cross_layer_consistent(frame));

    frame.arp.sender_mac = MacAddress::null();
    frame.eth.src = *MacAddress::parse("00:05:79:66:63:01");
    CHECK(!is_cross_layer_consistent(frame));

    // Unrelated fields have no effect.
    Frame variant = frame;
    variant.arp.target_ip = *Ipv4Address::parse("10.0.0.1");
    variant.arp.opcode = ArpOpcode::Reply;
    CHECK(is_cross_layer_consistent(variant) ==
          is_cross_layer_consistent(frame));
}
