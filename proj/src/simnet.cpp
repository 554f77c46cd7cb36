#include "arpshield/simnet.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <queue>
#include <set>

namespace arpshield {

const TopologyHost* Topology::find_host(const std::string& id) const
{
    for (const TopologyHost& host : hosts) {
        if (host.id == id) {
            return &host;
        }
    }
    return nullptr;
}

const TopologyHost* Topology::find_by_mac(const MacAddress& mac) const
{
    for (const TopologyHost& host : hosts) {
        if (host.mac == mac) {
            return &host;
        }
    }
    return nullptr;
}

const TopologyHost* Topology::find_by_ip(const Ipv4Address& ip) const
{
    for (const TopologyHost& host : hosts) {
        if (host.ip == ip) {
            return &host;
        }
    }
    return nullptr;
}

std::vector<const TopologyHost*> Topology::honest_hosts() const
{
    std::vector<const TopologyHost*> result;
    for (const TopologyHost& host : hosts) {
        if (host.id != attacker_id) {
            result.push_back(&host);
        }
    }
    return result;
}

void Topology::validate() const
{
    if (hosts.size() < 2) {
        throw TopologyError("topology needs at least two hosts");
    }
    std::set<std::string> ids;
    std::set<std::uint32_t> ips{router_ip.as_u32()};
    std::set<std::string> macs{router_mac.to_string()};
    for (const TopologyHost& host : hosts) {
        if (host.id == kRouterId) {
            throw TopologyError("host id 'router' is reserved");
        }
        if (!ids.insert(host.id).second) {
            throw TopologyError("duplicate host id: " + host.id);
        }
        if (!ips.insert(host.ip.as_u32()).second) {
            throw TopologyError("duplicate ip: " + host.ip.to_string());
        }
        if (!macs.insert(host.mac.to_string()).second) {
            throw TopologyError("duplicate mac: " + host.mac.to_string());
        }
        if (host.mac.is_null() || host.mac.is_broadcast()) {
            throw TopologyError("host mac must be a unicast address");
        }
    }
    if (!find_host(attacker_id)) {
        throw TopologyError("attacker must be a member host: " + attacker_id);
    }
}

namespace {

struct EventOrder {
    bool operator()(const Event& a, const Event& b) const
    {
        // priority_queue keeps the largest on top; invert for a min-heap.
        if (a.at != b.at) {
            return b.at < a.at;
        }
        return b.sequence < a.sequence;
    }
};

struct SimNode {
    bool is_router = false;
    HostState host;
    RouterState router;

    const std::string& id() const
    {
        static const std::string router_id = kRouterId;
        return is_router ? router_id : host.id;
    }
    MacAddress mac() const
    {
        return is_router ? router.own_mac : host.own_mac;
    }
};

Verdict dispatch(SimNode& node, const Frame& frame, VirtualTime now,
                 const SimConfig& config)
{
    if (config.detector.kind == DetectorKind::Baseline) {
        return node.is_router ? baseline_router_on_frame(node.router, frame, now)
                              : baseline_on_frame(node.host, frame, now);
    }
    return node.is_router
               ? clcc_router_on_frame(node.router, frame, now, config.detector)
               : clcc_host_on_frame(node.host, frame, now, config.detector);
}

void advance_node(SimNode& node, VirtualTime from, VirtualTime to,
                  const DetectorConfig& config)
{
    if (node.is_router) {
        advance_clock(node.router, from, to, config);
    } else {
        advance_clock(node.host, from, to, config);
    }
}

}  // namespace

std::vector<DetectionRecord> run_events(const Topology& topology,
                                        const SimConfig& config,
                                        std::vector<Event> injected,
                                        std::vector<TimedFrame>* trace)
{
    topology.validate();
    if (config.detector.clear_interval.ns == 0) {
        throw std::invalid_argument("clear interval must be positive");
    }

    // Node order is fixed: hosts as listed, router last. Broadcast
    // delivery walks this order, which pins record order.
    std::vector<SimNode> nodes;
    for (const TopologyHost& host : topology.hosts) {
        SimNode node;
        node.host.id = host.id;
        node.host.own_ip = host.ip;
        node.host.own_mac = host.mac;
        node.host.router_ip = topology.router_ip;
        node.host.router_mac = topology.router_mac;
        for (const StaticEntry& entry : host.static_entries) {
            node.host.cache[entry.ip.as_u32()] =
                ArpCacheEntry{entry.ip, entry.mac, VirtualTime{}, true};
        }
        nodes.push_back(std::move(node));
    }
    {
        SimNode router_node;
        router_node.is_router = true;
        router_node.router.own_ip = topology.router_ip;
        router_node.router.own_mac = topology.router_mac;
        // Authoritative cache: the true topology as static entries.
        for (const TopologyHost& host : topology.hosts) {
            router_node.router.cache[host.ip.as_u32()] =
                ArpCacheEntry{host.ip, host.mac, VirtualTime{}, true};
        }
        nodes.push_back(std::move(router_node));
    }

    std::uint64_t next_sequence = 0;
    std::uint64_t next_frame_id = 0;
    for (const Event& event : injected) {
        next_sequence = std::max(next_sequence, event.sequence + 1);
        next_frame_id = std::max(next_frame_id, event.frame.frame_id + 1);
    }

    std::priority_queue<Event, std::vector<Event>, EventOrder> queue(
        EventOrder{}, std::move(injected));

    std::vector<DetectionRecord> records;
    VirtualTime now{};

    while (!queue.empty()) {
        Event event = queue.top();
        queue.pop();

        for (SimNode& node : nodes) {
            advance_node(node, now, event.at, config.detector);
        }
        now = event.at;

        if (trace) {
            trace->push_back(TimedFrame{event.at, event.frame});
        }

        // Resolve receivers by destination MAC.
        std::vector<SimNode*> receivers;
        if (event.frame.eth.dst.is_broadcast()) {
            for (SimNode& node : nodes) {
                if (node.id() != event.origin) {
                    receivers.push_back(&node);
                }
            }
        } else {
            for (SimNode& node : nodes) {
                if (node.mac() == event.frame.eth.dst) {
                    receivers.push_back(&node);
                    break;
                }
            }
        }

        if (receivers.empty()) {
            DetectionRecord record;
            record.frame_id = event.frame.frame_id;
            record.injected_class = event.injected_class;
            record.observer = kNoObserver;
            record.victim = event.victim;
            record.verdict_kind = VerdictKind::Ignored;
            record.at = event.at;
            records.push_back(std::move(record));
            continue;
        }

        for (SimNode* node : receivers) {
            Verdict verdict = dispatch(*node, event.frame, now, config);

            DetectionRecord record;
            record.frame_id = event.frame.frame_id;
            record.injected_class = event.injected_class;
            record.observer = node->id();
            record.victim = event.victim;
            record.verdict_kind = verdict.kind;
            record.reason = verdict.reason;
            record.at = event.at;
            records.push_back(std::move(record));

            for (Frame& emitted : verdict.emitted) {
                Event follow_up;
                emitted.frame_id = next_frame_id++;
                follow_up.at = now + config.link_delay;
                follow_up.frame = emitted;
                follow_up.origin = node->id();
                follow_up.sequence = next_sequence++;
                queue.push(std::move(follow_up));
            }
        }
    }

    return records;
}

void write_trace(const std::string& path, const std::vector<TimedFrame>& trace)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open trace file for writing: " + path);
    }
    for (const TimedFrame& timed : trace) {
        std::uint8_t stamp[8];
        for (int i = 0; i < 8; ++i) {
            stamp[i] = static_cast<std::uint8_t>(timed.at.ns >> (8 * i));
        }
        out.write(reinterpret_cast<const char*>(stamp), sizeof(stamp));
        const std::vector<std::uint8_t> body = encode_frame(timed.frame);
        out.write(reinterpret_cast<const char*>(body.data()),
                  static_cast<std::streamsize>(body.size()));
    }
}

std::vector<TimedFrame> read_trace(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open trace file: " + path);
    }
    std::vector<TimedFrame> trace;
    std::uint64_t frame_id = 1;
    for (;;) {
        std::uint8_t stamp[8];
        in.read(reinterpret_cast<char*>(stamp), sizeof(stamp));
        if (in.gcount() == 0) {
            break;
        }
        if (in.gcount() != sizeof(stamp)) {
            throw std::runtime_error("truncated trace record in " + path);
        }
        std::uint64_t ns = 0;
        for (int i = 0; i < 8; ++i) {
            ns |= static_cast<std::uint64_t>(stamp[i]) << (8 * i);
        }
        std::uint8_t body[kFrameWireSize];
        in.read(reinterpret_cast<char*>(body), sizeof(body));
        if (in.gcount() != static_cast<std::streamsize>(sizeof(body))) {
            throw std::runtime_error("truncated trace record in " + path);
        }
        Frame frame;
        const DecodeError err = decode_frame(body, frame, frame_id++);
        if (err != DecodeError::None) {
            throw std::runtime_error(std::string("bad frame in trace: ") +
                                     to_string(err));
        }
        trace.push_back(TimedFrame{VirtualTime{ns}, frame});
    }
    return trace;
}

}  // namespace arpshield
