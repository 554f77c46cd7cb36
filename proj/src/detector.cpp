#include "arpshield/detector.hpp"

#include <algorithm>

namespace arpshield {

namespace {

struct Pair {
    Ipv4Address ip;
    MacAddress mac;
};

// Generic node view so the host and router states share one rule
// engine. emits_alerts is off for the router: it validates and
// fake-lists directly, it does not originate alert messages.
struct NodeView {
    Ipv4Address own_ip;
    MacAddress own_mac;
    Ipv4Address router_ip;
    MacAddress router_mac;
    std::map<std::uint32_t, ArpCacheEntry>* cache;
    std::vector<FakeListEntry>* fake_list;
    DetectorStats* stats;
    bool emits_alerts = true;
    bool is_router = false;
};

NodeView view_of(HostState& state)
{
    return NodeView{state.own_ip,     state.own_mac, state.router_ip,
                    state.router_mac, &state.cache,  &state.fake_list,
                    &state.stats,     true,          false};
}

NodeView view_of(RouterState& state)
{
    return NodeView{state.own_ip, state.own_mac,     state.own_ip,
                    state.own_mac, &state.cache,     &state.fake_list,
                    &state.stats,  false,            true};
}

void prune_fake_list(NodeView& node, VirtualTime now,
                     const DetectorConfig& config)
{
    if (!config.fake_list_ttl) {
        return;
    }
    const std::uint64_t ttl = config.fake_list_ttl->ns;
    std::erase_if(*node.fake_list, [&](const FakeListEntry& entry) {
        return entry.first_seen.ns + ttl <= now.ns;
    });
}

bool fake_list_contains(NodeView& node, const Pair& pair)
{
    for (const FakeListEntry& entry : *node.fake_list) {
        ++node.stats->fake_entries_scanned;
        if (entry.ip == pair.ip && entry.mac == pair.mac) {
            return true;
        }
    }
    return false;
}

// Conflicting binding: same IP under another MAC, or same MAC under
// another IP. One linear scan over the cache.
bool cache_conflicts(NodeView& node, const Pair& pair, bool static_only)
{
    for (const auto& [key, entry] : *node.cache) {
        ++node.stats->cache_entries_scanned;
        if (static_only && !entry.static_entry) {
            continue;
        }
        if (entry.ip == pair.ip && entry.mac != pair.mac) {
            return true;
        }
        if (entry.mac == pair.mac && entry.ip != pair.ip) {
            return true;
        }
    }
    return false;
}

// Upsert into the fake list; returns true when the pair was already
// present (re-observation).
bool fake_list_upsert(NodeView& node, const Pair& pair, VirtualTime now)
{
    for (FakeListEntry& entry : *node.fake_list) {
        ++node.stats->fake_entries_scanned;
        if (entry.ip == pair.ip && entry.mac == pair.mac) {
            ++entry.hit_count;
            return true;
        }
    }
    node.fake_list->push_back(FakeListEntry{pair.ip, pair.mac, now, 1});
    return false;
}

Frame make_unicast_alert(const NodeView& node, const Pair& forged)
{
    Frame alert;
    alert.eth.dst = node.router_mac;
    alert.eth.src = node.own_mac;
    alert.arp.opcode = ArpOpcode::UnicastAlert;
    alert.arp.sender_mac = forged.mac;
    alert.arp.sender_ip = forged.ip;
    alert.arp.target_mac = node.router_mac;
    alert.arp.target_ip = node.router_ip;
    return alert;
}

Frame make_broadcast_alert(const NodeView& node, const Pair& forged)
{
    Frame alert;
    alert.eth.dst = MacAddress::broadcast();
    alert.eth.src = node.own_mac;
    alert.arp.opcode = ArpOpcode::BroadcastAlert;
    alert.arp.sender_mac = forged.mac;
    alert.arp.sender_ip = forged.ip;
    alert.arp.target_mac = MacAddress::null();
    alert.arp.target_ip = Ipv4Address{};
    return alert;
}

// Fake-list the forged pair and raise alerts: a unicast alert to the
// router on every hit, plus a broadcast alert when the pair was already
// known (re-observation).
void flag_forged_pair(NodeView& node, const Pair& pair, VirtualTime now,
                      Verdict& verdict)
{
    const bool already_known = fake_list_upsert(node, pair, now);
    if (!node.emits_alerts) {
        return;
    }
    verdict.emitted.push_back(make_unicast_alert(node, pair));
    if (already_known) {
        verdict.emitted.push_back(make_broadcast_alert(node, pair));
    }
}

void cache_learn(NodeView& node, const Pair& pair, VirtualTime now)
{
    const std::uint32_t key = pair.ip.as_u32();
    auto it = node.cache->find(key);
    if (it != node.cache->end()) {
        if (it->second.static_entry) {
            return;  // authoritative rows are never overwritten
        }
        it->second.mac = pair.mac;
        it->second.inserted_at = now;
        return;
    }
    (*node.cache)[key] = ArpCacheEntry{pair.ip, pair.mac, now, false};
}

Frame make_reply(const NodeView& node, const Frame& request)
{
    Frame reply;
    reply.eth.dst = request.arp.sender_mac;
    reply.eth.src = node.own_mac;
    reply.arp.opcode = ArpOpcode::Reply;
    reply.arp.sender_mac = node.own_mac;
    reply.arp.sender_ip = node.own_ip;
    reply.arp.target_mac = request.arp.sender_mac;
    reply.arp.target_ip = request.arp.sender_ip;
    return reply;
}

Verdict detected(DetectionReason reason)
{
    Verdict verdict;
    verdict.kind = VerdictKind::Detected;
    verdict.reason = reason;
    return verdict;
}

bool addressed_to_node(const NodeView& node, const Frame& frame)
{
    if (frame.eth.dst == node.own_mac) {
        return true;
    }
    return frame.eth.dst.is_broadcast() &&
           frame.arp.target_ip == node.own_ip;
}

// Request/reply processing shared by hosts and the router.
Verdict clcc_on_request_or_reply(NodeView node, const Frame& frame,
                                 VirtualTime now)
{
    const Pair sender{frame.arp.sender_ip, frame.arp.sender_mac};

    if (sender.mac.is_null()) {
        return detected(DetectionReason::NullMac);
    }
    if (!is_cross_layer_consistent(frame)) {
        Verdict verdict = detected(DetectionReason::CrossLayerMismatch);
        flag_forged_pair(node, sender, now, verdict);
        return verdict;
    }
    if (fake_list_contains(node, sender)) {
        Verdict verdict = detected(DetectionReason::FakeListHit);
        flag_forged_pair(node, sender, now, verdict);
        return verdict;
    }
    if (cache_conflicts(node, sender, /*static_only=*/false)) {
        Verdict verdict = detected(DetectionReason::CacheConflict);
        flag_forged_pair(node, sender, now, verdict);
        return verdict;
    }
    // Self-identity checks: another party claiming this node's IP, or a
    // frame addressed to this node naming a wrong target IP.
    if (sender.ip == node.own_ip && sender.mac != node.own_mac) {
        return detected(DetectionReason::SelfIpConflict);
    }
    const bool unicast_to_me =
        !frame.eth.dst.is_broadcast() && frame.eth.dst == node.own_mac;
    if (unicast_to_me && frame.arp.target_ip != node.own_ip) {
        return detected(DetectionReason::SelfIpConflict);
    }

    Verdict verdict;
    // Strict learning: overheard broadcasts for other targets are
    // accepted but never cached.
    if (addressed_to_node(node, frame)) {
        cache_learn(node, sender, now);
        if (frame.arp.opcode == ArpOpcode::Request &&
            frame.arp.target_ip == node.own_ip) {
            verdict.emitted.push_back(make_reply(node, frame));
        }
    }
    return verdict;
}

// Broadcast-alert processing. The alert's ARP sender fields carry the
// reported pair, so the usual sender-vs-ethernet comparison does not
// apply here; validation is against static knowledge only, which keeps
// alert detection exactly as conditional as the static-entry seeding.
Verdict clcc_on_broadcast_alert(NodeView node, const Frame& frame,
                                VirtualTime now)
{
    const Pair reported{frame.arp.sender_ip, frame.arp.sender_mac};

    if (reported.mac.is_null()) {
        return detected(DetectionReason::NullMac);
    }
    if (cache_conflicts(node, reported, /*static_only=*/true)) {
        Verdict verdict = detected(DetectionReason::CacheConflict);
        fake_list_upsert(node, reported, now);
        return verdict;
    }
    // Adopt the warning: evict the poisoned entry if present and
    // remember the pair as fake. No further emission.
    const std::uint32_t key = reported.ip.as_u32();
    auto it = node.cache->find(key);
    if (it != node.cache->end() && !it->second.static_entry &&
        it->second.mac == reported.mac) {
        node.cache->erase(it);
    }
    fake_list_upsert(node, reported, now);
    return Verdict{};
}

Verdict clcc_on_unicast_alert(NodeView node, const Frame& frame,
                              VirtualTime now)
{
    if (!node.is_router) {
        Verdict verdict;
        verdict.kind = VerdictKind::Ignored;
        return verdict;
    }

    const Pair reported{frame.arp.sender_ip, frame.arp.sender_mac};

    if (reported.mac.is_null()) {
        return detected(DetectionReason::NullMac);
    }
    if (!is_cross_layer_consistent(frame)) {
        Verdict verdict = detected(DetectionReason::CrossLayerMismatch);
        fake_list_upsert(node, reported, now);
        return verdict;
    }
    if (frame.arp.target_ip != node.own_ip) {
        return detected(DetectionReason::RouterIpMismatch);
    }
    bool pair_known = false;
    for (const auto& [key, entry] : *node.cache) {
        ++node.stats->cache_entries_scanned;
        if (entry.ip == reported.ip && entry.mac == reported.mac) {
            pair_known = true;
        }
    }
    if (pair_known) {
        return Verdict{};  // accept the alert
    }
    Verdict verdict = detected(DetectionReason::RouterCacheMismatch);
    fake_list_upsert(node, reported, now);
    return verdict;
}

Verdict clcc_dispatch(NodeView node, const Frame& frame, VirtualTime now,
                      const DetectorConfig& config)
{
    ++node.stats->frames_processed;
    prune_fake_list(node, now, config);
    switch (frame.arp.opcode) {
        case ArpOpcode::Request:
        case ArpOpcode::Reply:
            return clcc_on_request_or_reply(node, frame, now);
        case ArpOpcode::BroadcastAlert:
            return clcc_on_broadcast_alert(node, frame, now);
        case ArpOpcode::UnicastAlert:
            return clcc_on_unicast_alert(node, frame, now);
    }
    Verdict verdict;
    verdict.kind = VerdictKind::Ignored;
    return verdict;
}

Verdict baseline_dispatch(NodeView node, const Frame& frame, VirtualTime now)
{
    ++node.stats->frames_processed;

    // The baseline predates the alert opcodes and cannot parse them.
    if (frame.arp.opcode == ArpOpcode::BroadcastAlert ||
        frame.arp.opcode == ArpOpcode::UnicastAlert) {
        Verdict verdict;
        verdict.kind = VerdictKind::Ignored;
        return verdict;
    }

    const Pair sender{frame.arp.sender_ip, frame.arp.sender_mac};
    if (sender.ip == node.own_ip && sender.mac != node.own_mac) {
        return detected(DetectionReason::SelfIpConflict);
    }

    Verdict verdict;
    cache_learn(node, sender, now);
    if (frame.arp.opcode == ArpOpcode::Request &&
        frame.arp.target_ip == node.own_ip) {
        verdict.emitted.push_back(make_reply(node, frame));
    }
    return verdict;
}

template <typename State>
bool clear_dynamic_entries(State& state, VirtualTime now,
                           const DetectorConfig& config)
{
    if (now.ns - state.last_clear.ns < config.clear_interval.ns) {
        return false;
    }
    std::erase_if(state.cache, [](const auto& item) {
        return !item.second.static_entry;
    });
    state.last_clear = now;
    return true;
}

}  // namespace

const char* to_string(DetectorKind kind)
{
    switch (kind) {
        case DetectorKind::Clcc: return "clcc";
        case DetectorKind::Baseline: return "baseline";
    }
    return "?";
}

std::optional<DetectorKind> detector_kind_from_string(const std::string& text)
{
    if (text == "clcc") {
        return DetectorKind::Clcc;
    }
    if (text == "baseline") {
        return DetectorKind::Baseline;
    }
    return std::nullopt;
}

const char* to_string(VerdictKind kind)
{
    switch (kind) {
        case VerdictKind::Accepted: return "accepted";
        case VerdictKind::Detected: return "detected";
        case VerdictKind::Ignored: return "ignored";
    }
    return "?";
}

const char* to_string(DetectionReason reason)
{
    switch (reason) {
        case DetectionReason::NullMac: return "null-mac";
        case DetectionReason::CrossLayerMismatch: return "cross-layer-mismatch";
        case DetectionReason::RouterIpMismatch: return "router-ip-mismatch";
        case DetectionReason::RouterCacheMismatch:
            return "router-cache-mismatch";
        case DetectionReason::FakeListHit: return "fake-list-hit";
        case DetectionReason::CacheConflict: return "cache-conflict";
        case DetectionReason::SelfIpConflict: return "self-ip-conflict";
    }
    return "?";
}

const char* to_string(DetectionOutcome outcome)
{
    switch (outcome) {
        case DetectionOutcome::TruePositive: return "true-positive";
        case DetectionOutcome::FalseNegative: return "false-negative";
        case DetectionOutcome::FalsePositive: return "false-positive";
        case DetectionOutcome::TrueNegative: return "true-negative";
    }
    return "?";
}

Verdict clcc_host_on_frame(HostState& state, const Frame& frame,
                           VirtualTime now, const DetectorConfig& config)
{
    return clcc_dispatch(view_of(state), frame, now, config);
}

Verdict clcc_router_on_frame(RouterState& state, const Frame& frame,
                             VirtualTime now, const DetectorConfig& config)
{
    return clcc_dispatch(view_of(state), frame, now, config);
}

Verdict baseline_on_frame(HostState& state, const Frame& frame,
                          VirtualTime now)
{
    return baseline_dispatch(view_of(state), frame, now);
}

Verdict baseline_router_on_frame(RouterState& state, const Frame& frame,
                                 VirtualTime now)
{
    return baseline_dispatch(view_of(state), frame, now);
}

bool maybe_clear_cache(HostState& state, VirtualTime now,
                       const DetectorConfig& config)
{
    return clear_dynamic_entries(state, now, config);
}

bool maybe_clear_cache(RouterState& state, VirtualTime now,
                       const DetectorConfig& config)
{
    return clear_dynamic_entries(state, now, config);
}

DetectionOutcome classify_detection(AttackClass ground_truth,
                                    const Verdict& verdict)
{
    const bool detected_frame = verdict.kind == VerdictKind::Detected;
    if (is_abnormal(ground_truth)) {
        return detected_frame ? DetectionOutcome::TruePositive
                              : DetectionOutcome::FalseNegative;
    }
    return detected_frame ? DetectionOutcome::FalsePositive
                          : DetectionOutcome::TrueNegative;
}

}  // namespace arpshield
