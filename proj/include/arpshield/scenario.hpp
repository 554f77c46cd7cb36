#ifndef ARPSHIELD_SCENARIO_HPP
#define ARPSHIELD_SCENARIO_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "arpshield/attack_class.hpp"
#include "arpshield/rng.hpp"
#include "arpshield/simnet.hpp"

namespace arpshield {

class ScenarioError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class EmptyMixError : public ScenarioError {
public:
    using ScenarioError::ScenarioError;
};

// A reproducible experiment: topology, traffic mix, schedule, detector
// configuration and the seed that pins the interleaving.
struct Scenario {
    std::uint64_t seed = 42;
    Topology topology;
    std::map<AttackClass, std::uint64_t> mix;
    VirtualTime frame_gap = vtime_millis(500);
    VirtualTime link_delay = vtime_millis(1);
    DetectorConfig detector;
    std::string label;

    std::uint64_t total_frames() const;
};

// The three-node simulation topology: A 192.169.1.10, B 192.169.1.11,
// C 192.169.1.12 (each 00:05:79:66:68:0x), router 10.10.1.0. C is the
// attacker.
Topology three_node_topology();

// The canonical evaluation mix: 100 normal frames plus a uniform
// 105-per-class split of the 1155 abnormal frames, 0.5 s apart, so the
// run crosses one 600 s cache-clear boundary.
Scenario canonical_mix_scenario();

// One frame of the requested class against the given topology.
// Attack frames originate at the attacker; benign frames are exchanged
// between the honest hosts.
Frame generate_class(AttackClass cls, const Topology& topology,
                     SplitMix64& rng);

// Frame plus its ground-truth label and designated victim (the observer
// whose verdict the report counts for this frame).
struct LabeledFrame {
    Frame frame;
    AttackClass cls = AttackClass::Normal;
    std::string victim;
    std::string origin;
};

LabeledFrame generate_labeled(AttackClass cls, const Topology& topology,
                              SplitMix64& rng);

// Seeded-shuffle interleaving of the whole mix at frame_gap spacing.
// Throws EmptyMixError when the mix is empty.
std::vector<Event> generate_mix(const Scenario& scenario);

// Full pipeline: generate the mix and run it through the simulated LAN.
std::vector<DetectionRecord> run(const Scenario& scenario,
                                 std::vector<TimedFrame>* trace = nullptr);

// Human-editable scenario file with [topology], [mix], [detector],
// [schedule] and [seed] sections.
std::string write_scenario_text(const Scenario& scenario);
Scenario parse_scenario_text(const std::string& text);
Scenario load_scenario_file(const std::string& path);
void save_scenario_file(const std::string& path, const Scenario& scenario);

}  // namespace arpshield

#endif  // ARPSHIELD_SCENARIO_HPP
