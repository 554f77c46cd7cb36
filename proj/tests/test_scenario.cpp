#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "arpshield/scenario.hpp"

using namespace arpshield;

namespace {

Ipv4Address ip(const char* text) { return *Ipv4Address::parse(text); }

bool bound_in_topology(const Topology& topology, const Ipv4Address& address)
{
    return topology.find_by_ip(address) != nullptr ||
           address == topology.router_ip;
}

bool mac_bound_in_topology(const Topology& topology, const MacAddress& address)
{
    return topology.find_by_mac(address) != nullptr ||
           address == topology.router_mac;
}

}  // namespace

TEST_CASE("three-node topology values")
{
    const Topology topology = three_node_topology();
    REQUIRE(topology.hosts.size() == 3);
    CHECK(topology.hosts[0].ip == ip("192.169.1.10"));
    CHECK(topology.hosts[1].ip == ip("192.169.1.11"));
    CHECK(topology.hosts[2].ip == ip("192.169.1.12"));
    CHECK(topology.hosts[0].mac == *MacAddress::parse("00:05:79:66:68:01"));
    CHECK(topology.router_ip == ip("10.10.1.0"));
    CHECK(topology.attacker_id == "C");
    CHECK_NOTHROW(topology.validate());

    std::set<std::string> macs;
    for (const auto& host : topology.hosts) {
        macs.insert(host.mac.to_string());
    }
    macs.insert(topology.router_mac.to_string());
    CHECK(macs.size() == 4);
}

TEST_CASE("every class generates against the default topology")
{
    const Topology topology = three_node_topology();
    SplitMix64 rng(5);
    for (AttackClass cls : all_attack_classes()) {
        CHECK_NOTHROW(generate_class(cls, topology, rng));
    }
}

TEST_CASE("ground truth soundness of generated frames")
{
    const Topology topology = three_node_topology();
    SplitMix64 rng(17);

    SUBCASE("cross-layer classes are inconsistent, everything else is not")
    {
        const std::set<AttackClass> mismatch_classes = {
            AttackClass::PKT2, AttackClass::PKT4, AttackClass::PKT5,
            AttackClass::PKT9};
        for (AttackClass cls : all_attack_classes()) {
            if (cls == AttackClass::PKT7 || cls == AttackClass::PKT8) {
                continue;  // alert payloads, checked separately below
            }
            for (int i = 0; i < 20; ++i) {
                const Frame frame = generate_class(cls, topology, rng);
                CHECK(is_cross_layer_consistent(frame) ==
                      !mismatch_classes.count(cls));
            }
        }
    }
    SUBCASE("class field patterns")
    {
        const Frame pkt1 = generate_class(AttackClass::PKT1, topology, rng);
        CHECK(pkt1.arp.opcode == ArpOpcode::Request);
        CHECK(!bound_in_topology(topology, pkt1.arp.sender_ip));
        CHECK(mac_bound_in_topology(topology, pkt1.arp.sender_mac));
        CHECK(pkt1.arp.sender_ip == ip("192.169.1.17"));

        const Frame pkt2 = generate_class(AttackClass::PKT2, topology, rng);
        CHECK(pkt2.arp.sender_mac ==
              *MacAddress::parse("00:05:79:66:68:12"));
        CHECK(pkt2.eth.src == *MacAddress::parse("00:05:79:66:63:01"));
        CHECK(pkt2.arp.sender_ip == topology.hosts[0].ip);

        const Frame pkt9 = generate_class(AttackClass::PKT9, topology, rng);
        CHECK(pkt9.arp.sender_mac ==
              *MacAddress::parse("00:06:80:99:80:00"));
        CHECK(pkt9.arp.sender_mac != pkt9.eth.src);

        const Frame pkt3 = generate_class(AttackClass::PKT3, topology, rng);
        CHECK(pkt3.arp.sender_ip == topology.hosts[1].ip);
        CHECK(pkt3.arp.sender_mac != topology.hosts[1].mac);

        const Frame pkt5 = generate_class(AttackClass::PKT5, topology, rng);
        CHECK(pkt5.arp.opcode == ArpOpcode::Reply);
        CHECK(mac_bound_in_topology(topology, pkt5.arp.sender_mac));
        CHECK(!bound_in_topology(topology, pkt5.arp.sender_ip));

        const Frame pkt6 = generate_class(AttackClass::PKT6, topology, rng);
        CHECK(pkt6.arp.opcode == ArpOpcode::Reply);
        CHECK(pkt6.arp.target_ip != topology.hosts[0].ip);
        CHECK(pkt6.eth.dst == topology.hosts[0].mac);

        const Frame pkt7 = generate_class(AttackClass::PKT7, topology, rng);
        CHECK(pkt7.arp.opcode == ArpOpcode::BroadcastAlert);
        CHECK(!mac_bound_in_topology(topology, pkt7.arp.sender_mac));
        CHECK(bound_in_topology(topology, pkt7.arp.sender_ip));
        CHECK(pkt7.arp.sender_mac ==
              *MacAddress::parse("00:05:79:66:68:af"));

        const Frame pkt8 = generate_class(AttackClass::PKT8, topology, rng);
        CHECK(pkt8.arp.opcode == ArpOpcode::BroadcastAlert);
        CHECK(pkt8.arp.sender_mac.is_null());

        const Frame pkt10 = generate_class(AttackClass::PKT10, topology, rng);
        CHECK(pkt10.arp.opcode == ArpOpcode::UnicastAlert);
        CHECK(pkt10.arp.target_ip == ip("10.10.1.1"));
        CHECK(pkt10.arp.target_ip != topology.router_ip);

        const Frame pkt11 = generate_class(AttackClass::PKT11, topology, rng);
        CHECK(pkt11.arp.opcode == ArpOpcode::UnicastAlert);
        CHECK(pkt11.arp.target_ip == topology.router_ip);
        CHECK(mac_bound_in_topology(topology, pkt11.arp.sender_mac));
        CHECK(!bound_in_topology(topology, pkt11.arp.sender_ip));
    }
    SUBCASE("normal frames satisfy no attack predicate")
    {
        for (int i = 0; i < 50; ++i) {
            const Frame frame =
                generate_class(AttackClass::Normal, topology, rng);
            CHECK(is_cross_layer_consistent(frame));
            const TopologyHost* sender =
                topology.find_by_mac(frame.arp.sender_mac);
            REQUIRE(sender != nullptr);
            CHECK(sender->ip == frame.arp.sender_ip);
            CHECK(sender->id != topology.attacker_id);
            CHECK(!frame.arp.sender_mac.is_null());
            CHECK((frame.arp.opcode == ArpOpcode::Request ||
                   frame.arp.opcode == ArpOpcode::Reply));
        }
    }
}

TEST_CASE("mix generation")
{
    SUBCASE("canonical mix: 1255 events, 1155 abnormal")
    {
        const Scenario scenario = canonical_mix_scenario();
        const auto events = generate_mix(scenario);
        REQUIRE(events.size() == 1255);
        std::size_t abnormal = 0;
        for (const auto& event : events) {
            REQUIRE(event.injected_class.has_value());
            if (is_abnormal(*event.injected_class)) {
                ++abnormal;
            }
        }
        CHECK(abnormal == 1155);

        // Schedule spacing and the clear-boundary crossing.
        CHECK(events.front().at == VirtualTime{});
        CHECK(events.back().at == VirtualTime{627 * kNanosPerSecond});
        for (std::size_t i = 1; i < events.size(); ++i) {
            CHECK(events[i].at.ns - events[i - 1].at.ns ==
                  vtime_millis(500).ns);
        }

        // Unique frame ids.
        std::set<std::uint64_t> ids;
        for (const auto& event : events) {
            ids.insert(event.frame.frame_id);
        }
        CHECK(ids.size() == events.size());
    }
    SUBCASE("singleton mix")
    {
        Scenario scenario = canonical_mix_scenario();
        scenario.mix.clear();
        scenario.mix[AttackClass::Normal] = 1;
        CHECK(generate_mix(scenario).size() == 1);
    }
    SUBCASE("empty mix is refused")
    {
        Scenario scenario = canonical_mix_scenario();
        scenario.mix.clear();
        CHECK_THROWS_AS(generate_mix(scenario), EmptyMixError);
    }
    SUBCASE("same seed, same events; different seed, different order")
    {
        const Scenario scenario = canonical_mix_scenario();
        const auto first = generate_mix(scenario);
        const auto second = generate_mix(scenario);
        REQUIRE(first.size() == second.size());
        for (std::size_t i = 0; i < first.size(); ++i) {
            CHECK(first[i].frame == second[i].frame);
            CHECK(first[i].injected_class == second[i].injected_class);
            CHECK(first[i].victim == second[i].victim);
        }

        Scenario other = scenario;
        other.seed = scenario.seed + 1;
        const auto third = generate_mix(other);
        bool differs = false;
        for (std::size_t i = 0; i < first.size(); ++i) {
            if (!(first[i].frame == third[i].frame)) {
                differs = true;
                break;
            }
        }
        CHECK(differs);
    }
}

TEST_CASE("scenario files round-trip")
{
    Scenario scenario = canonical_mix_scenario();
    scenario.seed = 99;
    scenario.detector.kind = DetectorKind::Baseline;
    scenario.detector.fake_list_ttl = vtime_seconds(120);
    scenario.detector.seed_static_topology = true;
    scenario.label = "round-trip";

    const std::string text = write_scenario_text(scenario);
    const Scenario parsed = parse_scenario_text(text);

    CHECK(parsed.seed == scenario.seed);
    CHECK(parsed.label == scenario.label);
    CHECK(parsed.frame_gap == scenario.frame_gap);
    CHECK(parsed.link_delay == scenario.link_delay);
    CHECK(parsed.detector.kind == scenario.detector.kind);
    CHECK(parsed.detector.clear_interval == scenario.detector.clear_interval);
    CHECK(parsed.detector.fake_list_ttl == scenario.detector.fake_list_ttl);
    CHECK(parsed.detector.seed_static_topology ==
          scenario.detector.seed_static_topology);
    CHECK(parsed.mix == scenario.mix);
    REQUIRE(parsed.topology.hosts.size() == scenario.topology.hosts.size());
    for (std::size_t i = 0; i < parsed.topology.hosts.size(); ++i) {
        CHECK(parsed.topology.hosts[i].id == scenario.topology.hosts[i].id);
        CHECK(parsed.topology.hosts[i].ip == scenario.topology.hosts[i].ip);
        CHECK(parsed.topology.hosts[i].mac == scenario.topology.hosts[i].mac);
    }
    CHECK(parsed.topology.router_ip == scenario.topology.router_ip);
    CHECK(parsed.topology.attacker_id == scenario.topology.attacker_id);
}

TEST_CASE("scenario parse errors carry line information")
{
    CHECK_THROWS_AS(parse_scenario_text("[topology]\nhost = A\n"),
                    ScenarioError);
    CHECK_THROWS_AS(parse_scenario_text("[mix]\nPKT99 = 4\n"), ScenarioError);
    CHECK_THROWS_AS(parse_scenario_text("[mix]\nPKT1 = -4\n"), ScenarioError);
    CHECK_THROWS_AS(parse_scenario_text("[mix]\nPKT1 = 99999999999\n"),
                    ScenarioError);
    CHECK_THROWS_AS(parse_scenario_text("key = value\n"), ScenarioError);
    CHECK_THROWS_AS(
        parse_scenario_text("[detector]\nclear_interval_s = 0\n"),
        ScenarioError);

    try {
        parse_scenario_text("[topology]\n\nbad line without equals\n");
        CHECK(false);
    } catch (const ScenarioError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}

TEST_CASE("duration parsing is exact")
{
    CHECK(parse_seconds("600")->ns == 600 * kNanosPerSecond);
    CHECK(parse_seconds("0.5")->ns == 500'000'000ULL);
    CHECK(parse_seconds("0.001")->ns == 1'000'000ULL);
    CHECK(parse_seconds("1.000000001")->ns == kNanosPerSecond + 1);
    CHECK(!parse_seconds("1.0000000001"));  // finer than a nanosecond
    CHECK(!parse_seconds("abc"));
    CHECK(!parse_seconds(""));
    CHECK(!parse_seconds("1.2.3"));
    CHECK(format_seconds(vtime_millis(500)) == "0.5");
    CHECK(format_seconds(vtime_seconds(600)) == "600");
    CHECK(format_seconds(VirtualTime{1}) == "0.000000001");
}
