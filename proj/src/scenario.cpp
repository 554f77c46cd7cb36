#include "arpshield/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace arpshield {

namespace {

Ipv4Address must_ip(const char* text)
{
    return *Ipv4Address::parse(text);
}

MacAddress must_mac(const char* text)
{
    return *MacAddress::parse(text);
}

// Forged field values. These are fixed so that generated frames are
// reproducible; each is guarded against colliding with the topology.
const MacAddress kForgedEthMac = must_mac("00:05:79:66:63:01");
const MacAddress kForgedArpMac = must_mac("00:05:79:66:68:12");
const MacAddress kForgedAlertMac = must_mac("00:05:79:66:68:af");
const MacAddress kForgedRouterAlertMac = must_mac("00:06:80:99:80:00");

MacAddress unbound_mac(const Topology& topology, MacAddress candidate)
{
    while (topology.find_by_mac(candidate) ||
           candidate == topology.router_mac || candidate.is_null() ||
           candidate.is_broadcast()) {
        candidate.octets[5] = static_cast<std::uint8_t>(
            candidate.octets[5] ^ 0xa5);
        candidate.octets[4] = static_cast<std::uint8_t>(
            candidate.octets[4] + 1);
    }
    return candidate;
}

// The index-th address inside the first host's /24 that is bound to no
// topology node. Scanning starts a few addresses past the highest
// assigned host octet, so the first spoofed address in the three-node
// topology is 192.169.1.17.
Ipv4Address unbound_ip(const Topology& topology, unsigned index)
{
    const std::uint32_t base = topology.hosts.front().ip.as_u32() & 0xffffff00u;
    std::uint32_t highest = 0;
    for (const TopologyHost& host : topology.hosts) {
        if ((host.ip.as_u32() & 0xffffff00u) == base) {
            highest = std::max(highest, host.ip.as_u32() & 0xffu);
        }
    }
    std::uint32_t octet = highest + 5;
    unsigned found = 0;
    for (int probes = 0; probes < 512; ++probes) {
        octet = octet > 254 ? 1 : octet;
        const Ipv4Address candidate = Ipv4Address::from_u32(base | octet);
        const bool bound = topology.find_by_ip(candidate) ||
                           candidate == topology.router_ip;
        if (!bound) {
            if (found == index) {
                return candidate;
            }
            ++found;
        }
        ++octet;
    }
    throw ScenarioError("no unassigned address left in the subnet");
}

Frame benign_frame(const TopologyHost& src, const TopologyHost& dst,
                   bool request)
{
    Frame frame;
    frame.eth.src = src.mac;
    frame.arp.sender_mac = src.mac;
    frame.arp.sender_ip = src.ip;
    if (request) {
        frame.eth.dst = MacAddress::broadcast();
        frame.arp.opcode = ArpOpcode::Request;
        frame.arp.target_mac = MacAddress::null();
        frame.arp.target_ip = dst.ip;
    } else {
        frame.eth.dst = dst.mac;
        frame.arp.opcode = ArpOpcode::Reply;
        frame.arp.target_mac = dst.mac;
        frame.arp.target_ip = dst.ip;
    }
    return frame;
}

}  // namespace

std::uint64_t Scenario::total_frames() const
{
    std::uint64_t total = 0;
    for (const auto& [cls, count] : mix) {
        total += count;
    }
    return total;
}

Topology three_node_topology()
{
    Topology topology;
    topology.hosts = {
        {"A", must_ip("192.169.1.10"), must_mac("00:05:79:66:68:01"), {}},
        {"B", must_ip("192.169.1.11"), must_mac("00:05:79:66:68:02"), {}},
        {"C", must_ip("192.169.1.12"), must_mac("00:05:79:66:68:03"), {}},
    };
    topology.router_ip = must_ip("10.10.1.0");
    topology.router_mac = must_mac("00:05:79:66:68:fe");
    topology.attacker_id = "C";
    return topology;
}

Scenario canonical_mix_scenario()
{
    Scenario scenario;
    scenario.label = "paper-mix";
    scenario.topology = three_node_topology();
    scenario.mix[AttackClass::Normal] = 100;
    for (AttackClass cls : all_attack_classes()) {
        if (is_abnormal(cls)) {
            scenario.mix[cls] = 105;
        }
    }
    return scenario;
}

LabeledFrame generate_labeled(AttackClass cls, const Topology& topology,
                              SplitMix64& rng)
{
    topology.validate();
    const auto honest = topology.honest_hosts();
    if (honest.size() < 2) {
        throw ScenarioError("generation needs at least two honest hosts");
    }
    const TopologyHost* attacker = topology.find_host(topology.attacker_id);

    // Roles follow the request/reply story: `requester` asks, `responder`
    // answers. Request-direction classes are observed at the responder,
    // reply-direction classes at the requester, alert classes at the
    // router (unicast) or the responder (broadcast).
    const TopologyHost& requester = *honest[0];
    const TopologyHost& responder = *honest[1];

    const Ipv4Address spoofed_ip = unbound_ip(topology, 0);
    const Ipv4Address wrong_target_ip = unbound_ip(topology, 1);
    const Ipv4Address stray_ip = unbound_ip(topology, 2);
    const Ipv4Address wrong_router_ip =
        Ipv4Address::from_u32(topology.router_ip.as_u32() + 1);

    const MacAddress forged_eth = unbound_mac(topology, kForgedEthMac);
    const MacAddress forged_arp = unbound_mac(topology, kForgedArpMac);
    const MacAddress forged_alert = unbound_mac(topology, kForgedAlertMac);
    const MacAddress forged_router_alert =
        unbound_mac(topology, kForgedRouterAlertMac);

    LabeledFrame out;
    out.cls = cls;
    out.origin = attacker->id;
    Frame& frame = out.frame;

    switch (cls) {
        case AttackClass::Normal: {
            const std::uint64_t pick = rng.below(honest.size());
            const TopologyHost& src = *honest[pick];
            const TopologyHost& dst =
                *honest[(pick + 1 + rng.below(honest.size() - 1)) %
                        honest.size()];
            const bool request = rng.below(2) == 0;
            frame = benign_frame(src, dst, request);
            out.origin = src.id;
            out.victim = dst.id;
            return out;
        }
        case AttackClass::PKT1:
            // Consistent request claiming an unassigned IP for the
            // attacker's own MAC; only surviving cache or fake-list
            // knowledge can contradict it.
            frame.eth.dst = MacAddress::broadcast();
            frame.eth.src = attacker->mac;
            frame.arp.opcode = ArpOpcode::Request;
            frame.arp.sender_mac = attacker->mac;
            frame.arp.sender_ip = spoofed_ip;
            frame.arp.target_mac = MacAddress::null();
            frame.arp.target_ip = responder.ip;
            out.victim = responder.id;
            return out;
        case AttackClass::PKT2:
            // ARP-layer sender MAC disagrees with the Ethernet source.
            frame.eth.dst = MacAddress::broadcast();
            frame.eth.src = forged_eth;
            frame.arp.opcode = ArpOpcode::Request;
            frame.arp.sender_mac = forged_arp;
            frame.arp.sender_ip = requester.ip;
            frame.arp.target_mac = MacAddress::null();
            frame.arp.target_ip = responder.ip;
            out.victim = responder.id;
            return out;
        case AttackClass::PKT3:
            // The sender fields claim the victim's own IP.
            frame.eth.dst = MacAddress::broadcast();
            frame.eth.src = attacker->mac;
            frame.arp.opcode = ArpOpcode::Request;
            frame.arp.sender_mac = attacker->mac;
            frame.arp.sender_ip = responder.ip;
            frame.arp.target_mac = MacAddress::null();
            frame.arp.target_ip = responder.ip;
            out.victim = responder.id;
            return out;
        case AttackClass::PKT4:
            frame.eth.dst = requester.mac;
            frame.eth.src = forged_eth;
            frame.arp.opcode = ArpOpcode::Reply;
            frame.arp.sender_mac = forged_arp;
            frame.arp.sender_ip = responder.ip;
            frame.arp.target_mac = requester.mac;
            frame.arp.target_ip = requester.ip;
            out.victim = requester.id;
            return out;
        case AttackClass::PKT5:
            // A real host's MAC paired with a stray IP, sent from the
            // attacker's stack: the layers disagree.
            frame.eth.dst = requester.mac;
            frame.eth.src = attacker->mac;
            frame.arp.opcode = ArpOpcode::Reply;
            frame.arp.sender_mac = responder.mac;
            frame.arp.sender_ip = stray_ip;
            frame.arp.target_mac = requester.mac;
            frame.arp.target_ip = requester.ip;
            out.victim = requester.id;
            return out;
        case AttackClass::PKT6:
            // Consistent reply that names the wrong IP for its target.
            frame.eth.dst = requester.mac;
            frame.eth.src = attacker->mac;
            frame.arp.opcode = ArpOpcode::Reply;
            frame.arp.sender_mac = attacker->mac;
            frame.arp.sender_ip = attacker->ip;
            frame.arp.target_mac = requester.mac;
            frame.arp.target_ip = wrong_target_ip;
            out.victim = requester.id;
            return out;
        case AttackClass::PKT7:
            // Alert reporting a pair whose MAC is bound to no node.
            frame.eth.dst = MacAddress::broadcast();
            frame.eth.src = forged_eth;
            frame.arp.opcode = ArpOpcode::BroadcastAlert;
            frame.arp.sender_mac = forged_alert;
            frame.arp.sender_ip = requester.ip;
            frame.arp.target_mac = MacAddress::null();
            frame.arp.target_ip = Ipv4Address{};
            out.victim = responder.id;
            return out;
        case AttackClass::PKT8:
            frame.eth.dst = MacAddress::broadcast();
            frame.eth.src = forged_eth;
            frame.arp.opcode = ArpOpcode::BroadcastAlert;
            frame.arp.sender_mac = MacAddress::null();
            frame.arp.sender_ip = requester.ip;
            frame.arp.target_mac = MacAddress::null();
            frame.arp.target_ip = Ipv4Address{};
            out.victim = responder.id;
            return out;
        case AttackClass::PKT9:
            frame.eth.dst = topology.router_mac;
            frame.eth.src = attacker->mac;
            frame.arp.opcode = ArpOpcode::UnicastAlert;
            frame.arp.sender_mac = forged_router_alert;
            frame.arp.sender_ip = requester.ip;
            frame.arp.target_mac = topology.router_mac;
            frame.arp.target_ip = topology.router_ip;
            out.victim = kRouterId;
            return out;
        case AttackClass::PKT10:
            frame.eth.dst = topology.router_mac;
            frame.eth.src = attacker->mac;
            frame.arp.opcode = ArpOpcode::UnicastAlert;
            frame.arp.sender_mac = attacker->mac;
            frame.arp.sender_ip = attacker->ip;
            frame.arp.target_mac = topology.router_mac;
            frame.arp.target_ip = wrong_router_ip;
            out.victim = kRouterId;
            return out;
        case AttackClass::PKT11:
            // Consistent alert whose reported pair contradicts the
            // router's authoritative cache.
            frame.eth.dst = topology.router_mac;
            frame.eth.src = requester.mac;
            frame.arp.opcode = ArpOpcode::UnicastAlert;
            frame.arp.sender_mac = requester.mac;
            frame.arp.sender_ip = spoofed_ip;
            frame.arp.target_mac = topology.router_mac;
            frame.arp.target_ip = topology.router_ip;
            out.victim = kRouterId;
            return out;
    }
    throw ScenarioError("unsupported attack class");
}

Frame generate_class(AttackClass cls, const Topology& topology,
                     SplitMix64& rng)
{
    return generate_labeled(cls, topology, rng).frame;
}

std::vector<Event> generate_mix(const Scenario& scenario)
{
    if (scenario.total_frames() == 0) {
        throw EmptyMixError("scenario mix holds no frames");
    }
    scenario.topology.validate();

    SplitMix64 rng(scenario.seed);
    std::vector<LabeledFrame> frames;
    frames.reserve(scenario.total_frames());
    for (AttackClass cls : all_attack_classes()) {
        auto it = scenario.mix.find(cls);
        if (it == scenario.mix.end()) {
            continue;
        }
        for (std::uint64_t i = 0; i < it->second; ++i) {
            frames.push_back(generate_labeled(cls, scenario.topology, rng));
        }
    }
    deterministic_shuffle(frames, rng);

    std::vector<Event> events;
    events.reserve(frames.size());
    for (std::size_t i = 0; i < frames.size(); ++i) {
        Event event;
        event.at = VirtualTime{scenario.frame_gap.ns * i};
        event.frame = frames[i].frame;
        event.frame.frame_id = i + 1;
        event.origin = frames[i].origin;
        event.sequence = i;
        event.injected_class = frames[i].cls;
        event.victim = frames[i].victim;
        events.push_back(std::move(event));
    }
    return events;
}

std::vector<DetectionRecord> run(const Scenario& scenario,
                                 std::vector<TimedFrame>* trace)
{
    SimConfig config;
    config.detector = scenario.detector;
    config.link_delay = scenario.link_delay;

    Topology topology = scenario.topology;
    if (config.detector.seed_static_topology) {
        // Seed every host with the full true topology.
        std::vector<StaticEntry> entries;
        for (const TopologyHost& host : topology.hosts) {
            entries.push_back(StaticEntry{host.ip, host.mac});
        }
        entries.push_back(StaticEntry{topology.router_ip, topology.router_mac});
        for (TopologyHost& host : topology.hosts) {
            host.static_entries = entries;
        }
    }
    return run_events(topology, config, generate_mix(scenario), trace);
}

namespace {

std::string trim(const std::string& text)
{
    const auto begin = text.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) {
        return "";
    }
    const auto end = text.find_last_not_of(" \t\r\n");
    return text.substr(begin, end - begin + 1);
}

std::vector<std::string> split_fields(const std::string& text)
{
    std::vector<std::string> fields;
    std::istringstream stream(text);
    std::string field;
    while (stream >> field) {
        fields.push_back(field);
    }
    return fields;
}

// Digits only; stoull would silently wrap a leading minus sign.
std::optional<std::uint64_t> parse_u64(const std::string& text)
{
    if (text.empty() || text.size() > 19) {
        return std::nullopt;
    }
    std::uint64_t value = 0;
    for (char c : text) {
        if (c < '0' || c > '9') {
            return std::nullopt;
        }
        value = value * 10 + static_cast<std::uint64_t>(c - '0');
    }
    return value;
}

constexpr std::uint64_t kMaxClassCount = 10'000'000;

[[noreturn]] void fail(std::size_t line_no, const std::string& message)
{
    throw ScenarioError("scenario line " + std::to_string(line_no) + ": " +
                        message);
}

}  // namespace

std::string write_scenario_text(const Scenario& scenario)
{
    std::ostringstream out;
    out << "[topology]\n";
    for (const TopologyHost& host : scenario.topology.hosts) {
        out << "host = " << host.id << " " << host.ip.to_string() << " "
            << host.mac.to_string() << "\n";
    }
    out << "router = " << scenario.topology.router_ip.to_string() << " "
        << scenario.topology.router_mac.to_string() << "\n";
    out << "attacker = " << scenario.topology.attacker_id << "\n";
    out << "\n[mix]\n";
    for (AttackClass cls : all_attack_classes()) {
        auto it = scenario.mix.find(cls);
        if (it != scenario.mix.end() && it->second > 0) {
            out << to_string(cls) << " = " << it->second << "\n";
        }
    }
    out << "\n[detector]\n";
    out << "detector = " << to_string(scenario.detector.kind) << "\n";
    out << "clear_interval_s = "
        << format_seconds(scenario.detector.clear_interval) << "\n";
    out << "fake_list_ttl_s = "
        << (scenario.detector.fake_list_ttl
                ? format_seconds(*scenario.detector.fake_list_ttl)
                : std::string("infinite"))
        << "\n";
    out << "static_entries = "
        << (scenario.detector.seed_static_topology ? "full" : "none") << "\n";
    out << "\n[schedule]\n";
    out << "frame_gap_s = " << format_seconds(scenario.frame_gap) << "\n";
    out << "link_delay_s = " << format_seconds(scenario.link_delay) << "\n";
    out << "\n[seed]\n";
    out << "seed = " << scenario.seed << "\n";
    out << "label = " << scenario.label << "\n";
    return out.str();
}

Scenario parse_scenario_text(const std::string& text)
{
    Scenario scenario;
    scenario.mix.clear();
    scenario.topology = Topology{};
    scenario.label.clear();

    std::istringstream stream(text);
    std::string line;
    std::string section;
    std::size_t line_no = 0;

    while (std::getline(stream, line)) {
        ++line_no;
        const std::string content = trim(line);
        if (content.empty() || content[0] == '#') {
            continue;
        }
        if (content.front() == '[' && content.back() == ']') {
            section = content.substr(1, content.size() - 2);
            continue;
        }
        const auto eq = content.find('=');
        if (eq == std::string::npos) {
            fail(line_no, "expected key = value");
        }
        const std::string key = trim(content.substr(0, eq));
        const std::string value = trim(content.substr(eq + 1));

        if (section == "topology") {
            if (key == "host") {
                const auto fields = split_fields(value);
                if (fields.size() != 3) {
                    fail(line_no, "host needs: id ip mac");
                }
                const auto ip = Ipv4Address::parse(fields[1]);
                const auto mac = MacAddress::parse(fields[2]);
                if (!ip || !mac) {
                    fail(line_no, "bad host address: " + value);
                }
                scenario.topology.hosts.push_back(
                    TopologyHost{fields[0], *ip, *mac, {}});
            } else if (key == "router") {
                const auto fields = split_fields(value);
                if (fields.size() != 2) {
                    fail(line_no, "router needs: ip mac");
                }
                const auto ip = Ipv4Address::parse(fields[0]);
                const auto mac = MacAddress::parse(fields[1]);
                if (!ip || !mac) {
                    fail(line_no, "bad router address: " + value);
                }
                scenario.topology.router_ip = *ip;
                scenario.topology.router_mac = *mac;
            } else if (key == "attacker") {
                scenario.topology.attacker_id = value;
            } else {
                fail(line_no, "unknown topology key: " + key);
            }
        } else if (section == "mix") {
            const auto cls = attack_class_from_string(key);
            if (!cls) {
                fail(line_no, "unknown class: " + key);
            }
            const auto count = parse_u64(value);
            if (!count || *count > kMaxClassCount) {
                fail(line_no, "bad count: " + value);
            }
            scenario.mix[*cls] = *count;
        } else if (section == "detector") {
            if (key == "detector") {
                const auto kind = detector_kind_from_string(value);
                if (!kind) {
                    fail(line_no, "unknown detector: " + value);
                }
                scenario.detector.kind = *kind;
            } else if (key == "clear_interval_s") {
                const auto t = parse_seconds(value);
                if (!t || t->ns == 0) {
                    fail(line_no, "bad clear interval: " + value);
                }
                scenario.detector.clear_interval = *t;
            } else if (key == "fake_list_ttl_s") {
                if (value == "infinite") {
                    scenario.detector.fake_list_ttl.reset();
                } else {
                    const auto t = parse_seconds(value);
                    if (!t) {
                        fail(line_no, "bad ttl: " + value);
                    }
                    scenario.detector.fake_list_ttl = *t;
                }
            } else if (key == "static_entries") {
                if (value == "full") {
                    scenario.detector.seed_static_topology = true;
                } else if (value == "none") {
                    scenario.detector.seed_static_topology = false;
                } else {
                    fail(line_no, "static_entries must be full or none");
                }
            } else {
                fail(line_no, "unknown detector key: " + key);
            }
        } else if (section == "schedule") {
            const auto t = parse_seconds(value);
            if (!t) {
                fail(line_no, "bad duration: " + value);
            }
            if (key == "frame_gap_s") {
                scenario.frame_gap = *t;
            } else if (key == "link_delay_s") {
                scenario.link_delay = *t;
            } else {
                fail(line_no, "unknown schedule key: " + key);
            }
        } else if (section == "seed") {
            if (key == "seed") {
                const auto seed = parse_u64(value);
                if (!seed) {
                    fail(line_no, "bad seed: " + value);
                }
                scenario.seed = *seed;
            } else if (key == "label") {
                scenario.label = value;
            } else {
                fail(line_no, "unknown seed key: " + key);
            }
        } else {
            fail(line_no, "key outside any known section: " + key);
        }
    }

    scenario.topology.validate();
    return scenario;
}

Scenario load_scenario_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ScenarioError("cannot open scenario file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario_text(buffer.str());
}

void save_scenario_file(const std::string& path, const Scenario& scenario)
{
    std::ofstream out(path);
    if (!out) {
        throw ScenarioError("cannot open scenario file for writing: " + path);
    }
    out << write_scenario_text(scenario);
}

}  // namespace arpshield
