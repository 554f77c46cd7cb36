#ifndef ARPSHIELD_DETECTOR_HPP
#define ARPSHIELD_DETECTOR_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arpshield/attack_class.hpp"
#include "arpshield/packet.hpp"
#include "arpshield/vtime.hpp"

namespace arpshield {

struct ArpCacheEntry {
    Ipv4Address ip;
    MacAddress mac;
    VirtualTime inserted_at;
    bool static_entry = false;

    friend bool operator==(const ArpCacheEntry&,
                           const ArpCacheEntry&) = default;
};

struct FakeListEntry {
    Ipv4Address ip;
    MacAddress mac;
    VirtualTime first_seen;
    std::uint64_t hit_count = 1;

    friend bool operator==(const FakeListEntry&,
                           const FakeListEntry&) = default;
};

enum class DetectorKind {
    Clcc,
    Baseline,
};

const char* to_string(DetectorKind kind);
std::optional<DetectorKind> detector_kind_from_string(const std::string&);

// Knobs shared by every node in a run. The cache-clear interval comes
// from the detector's step 5 (10 minutes); the fake list keeps entries
// forever unless a TTL is set.
struct DetectorConfig {
    DetectorKind kind = DetectorKind::Clcc;
    VirtualTime clear_interval = vtime_seconds(600);
    std::optional<VirtualTime> fake_list_ttl;  // nullopt: never expires
    bool seed_static_topology = false;
};

// Scan-effort counters for the complexity assertions. Every cache or
// fake-list entry visited during rule evaluation is counted.
struct DetectorStats {
    std::uint64_t frames_processed = 0;
    std::uint64_t cache_entries_scanned = 0;
    std::uint64_t fake_entries_scanned = 0;
};

// Per-host detector state. The cache is keyed by IP (at most one entry
// per IP); the fake list is an append-ordered list scanned linearly.
struct HostState {
    std::string id;
    Ipv4Address own_ip;
    MacAddress own_mac;
    Ipv4Address router_ip;
    MacAddress router_mac;
    std::map<std::uint32_t, ArpCacheEntry> cache;
    std::vector<FakeListEntry> fake_list;
    VirtualTime last_clear;
    DetectorStats stats;
};

// The router runs the same host rules for requests/replies plus the
// unicast-alert procedure. Its cache is authoritative: the true
// topology is seeded as static entries at startup.
struct RouterState {
    Ipv4Address own_ip;
    MacAddress own_mac;
    std::map<std::uint32_t, ArpCacheEntry> cache;
    std::vector<FakeListEntry> fake_list;
    VirtualTime last_clear;
    DetectorStats stats;
};

enum class VerdictKind {
    Accepted,
    Detected,
    Ignored,
};

// Detection rules in precedence order; when several rules would fire on
// one frame, the highest-precedence reason is reported.
enum class DetectionReason {
    NullMac,
    CrossLayerMismatch,
    RouterIpMismatch,
    RouterCacheMismatch,
    FakeListHit,
    CacheConflict,
    SelfIpConflict,
};

const char* to_string(VerdictKind kind);
const char* to_string(DetectionReason reason);

struct Verdict {
    VerdictKind kind = VerdictKind::Accepted;
    std::optional<DetectionReason> reason;
    std::vector<Frame> emitted;  // alerts and replies, frame_id unassigned
};

// CLCC host procedure. Deterministic: identical (state, frame, now)
// always yields the identical verdict and successor state.
Verdict clcc_host_on_frame(HostState& state, const Frame& frame,
                           VirtualTime now, const DetectorConfig& config);

// CLCC router procedure (opcode-26 validation; other opcodes follow the
// host rules against the authoritative cache).
Verdict clcc_router_on_frame(RouterState& state, const Frame& frame,
                             VirtualTime now, const DetectorConfig& config);

// RFC 826 stateless baseline: trusts and caches every sender binding,
// answers requests for its own IP, and flags only a sender that claims
// this host's own IP under a different MAC. Alert opcodes are opaque to
// it and are ignored.
Verdict baseline_on_frame(HostState& state, const Frame& frame,
                          VirtualTime now);
Verdict baseline_router_on_frame(RouterState& state, const Frame& frame,
                                 VirtualTime now);

// Drops dynamic cache entries once clear_interval has elapsed since the
// last clear. Static entries survive.
bool maybe_clear_cache(HostState& state, VirtualTime now,
                       const DetectorConfig& config);
bool maybe_clear_cache(RouterState& state, VirtualTime now,
                       const DetectorConfig& config);

enum class DetectionOutcome {
    TruePositive,
    FalseNegative,
    FalsePositive,
    TrueNegative,
};

const char* to_string(DetectionOutcome outcome);

DetectionOutcome classify_detection(AttackClass ground_truth,
                                    const Verdict& verdict);

}  // namespace arpshield

#endif  // ARPSHIELD_DETECTOR_HPP
