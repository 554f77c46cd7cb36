#ifndef ARPSHIELD_SIMNET_HPP
#define ARPSHIELD_SIMNET_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "arpshield/attack_class.hpp"
#include "arpshield/detector.hpp"
#include "arpshield/packet.hpp"
#include "arpshield/vtime.hpp"

namespace arpshield {

class TopologyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ClockRegressionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct StaticEntry {
    Ipv4Address ip;
    MacAddress mac;
};

struct TopologyHost {
    std::string id;
    Ipv4Address ip;
    MacAddress mac;
    std::vector<StaticEntry> static_entries;
};

// The simulated LAN: hosts plus one router on a single segment. The
// attacker is a member host whose injected frames bypass its own stack.
struct Topology {
    std::vector<TopologyHost> hosts;
    Ipv4Address router_ip;
    MacAddress router_mac;
    std::string attacker_id;

    const TopologyHost* find_host(const std::string& id) const;
    const TopologyHost* find_by_mac(const MacAddress& mac) const;
    const TopologyHost* find_by_ip(const Ipv4Address& ip) const;
    std::vector<const TopologyHost*> honest_hosts() const;

    // Throws TopologyError unless IPs and MACs are unique and the
    // attacker is a member host.
    void validate() const;
};

// One scheduled frame. Events are totally ordered by (at, sequence).
struct Event {
    VirtualTime at;
    Frame frame;
    std::string origin;  // host id (or "router"); excluded from broadcast
    std::uint64_t sequence = 0;
    std::optional<AttackClass> injected_class;  // nullopt for emitted
    std::string victim;  // designated observer for metrics, may be empty
};

// One verdict per (frame, observer) delivery.
struct DetectionRecord {
    std::uint64_t frame_id = 0;
    std::optional<AttackClass> injected_class;
    std::string observer;
    std::string victim;
    VerdictKind verdict_kind = VerdictKind::Accepted;
    std::optional<DetectionReason> reason;
    VirtualTime at;
};

inline constexpr const char* kRouterId = "router";
inline constexpr const char* kNoObserver = "none";

struct SimConfig {
    DetectorConfig detector;
    VirtualTime link_delay = vtime_millis(1);
};

struct TimedFrame {
    VirtualTime at;
    Frame frame;
};

// Advances a node's clock from `from` to `to`, firing the cache clear at
// every crossed interval boundary. Returns the number of clears fired.
// Throws ClockRegressionError when to < from.
template <typename State>
int advance_clock(State& state, VirtualTime from, VirtualTime to,
                  const DetectorConfig& config)
{
    if (to < from) {
        throw ClockRegressionError("virtual clock may not move backwards");
    }
    if (config.clear_interval.ns == 0) {
        throw std::invalid_argument("clear interval must be positive");
    }
    int fired = 0;
    while (VirtualTime{state.last_clear.ns + config.clear_interval.ns} <= to) {
        const VirtualTime boundary{state.last_clear.ns +
                                   config.clear_interval.ns};
        if (maybe_clear_cache(state, boundary, config)) {
            ++fired;
        }
    }
    return fired;
}

// Runs the event queue to exhaustion: delivers frames by destination
// MAC (broadcast fans out to every node except the origin), drives the
// configured detector on each delivery, and enqueues emitted frames at
// now + link_delay. Returns all records in (at, sequence) order.
// Unroutable unicast frames yield one Ignored record with observer
// "none". When `trace` is given, every frame is appended at its event
// time in injection/emission order.
std::vector<DetectionRecord> run_events(const Topology& topology,
                                        const SimConfig& config,
                                        std::vector<Event> injected,
                                        std::vector<TimedFrame>* trace = nullptr);

// Binary frame trace: per frame a little-endian u64 timestamp in
// nanoseconds followed by the 42-byte wire body.
void write_trace(const std::string& path, const std::vector<TimedFrame>& trace);
std::vector<TimedFrame> read_trace(const std::string& path);

}  // namespace arpshield

#endif  // ARPSHIELD_SIMNET_HPP
