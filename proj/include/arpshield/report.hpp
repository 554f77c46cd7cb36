#ifndef ARPSHIELD_REPORT_HPP
#define ARPSHIELD_REPORT_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "arpshield/attack_class.hpp"
#include "arpshield/scenario.hpp"
#include "arpshield/simnet.hpp"

namespace arpshield {

inline constexpr const char* kArtifactVersion = "0.1.0";

class ReportError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class CountExceedsTotalError : public ReportError {
public:
    using ReportError::ReportError;
};

// Packet detection rate as an exact value in tenths of a percent.
// 892/1155 renders as "77.2". tmp = 0 is reported as 0 with a flag.
struct PdrValue {
    std::uint64_t tenths = 0;
    bool undefined = false;

    std::string to_string() const;
    friend auto operator<=>(const PdrValue&, const PdrValue&) = default;
};

PdrValue pdr(std::uint64_t abnormal_detected, std::uint64_t abnormal_total);

struct ClassCounts {
    std::uint64_t sent = 0;
    std::uint64_t detected = 0;
    std::uint64_t accepted = 0;
    std::uint64_t ignored = 0;
};

// Aggregated run results plus everything needed to reproduce them.
struct Report {
    std::string scenario_label;
    std::string detector_name;
    std::map<AttackClass, ClassCounts> per_class;
    std::uint64_t abnormal_detected = 0;  // detected abnormal frames
    std::uint64_t abnormal_total = 0;     // abnormal frames sent
    PdrValue pdr_percent;
    std::uint64_t false_positives = 0;
    std::uint64_t seed = 0;
    std::string generator_name;
    std::string version;
    std::map<std::string, std::string> config_echo;
};

// Aggregates verdicts at each frame's designated victim. Detected
// verdicts on abnormal classes feed the PDR numerator; Detected
// verdicts on Normal frames count as false positives.
Report build_report(const std::vector<DetectionRecord>& records,
                    const Scenario& scenario,
                    const std::string& detector_name);

enum class ReportFormat {
    JsonLines,
    Csv,
    Text,
};

class UnknownFormatError : public ReportError {
public:
    using ReportError::ReportError;
};

ReportFormat report_format_from_string(const std::string& text);

// Deterministic serialization: equal reports yield identical bytes.
std::string emit(const Report& report, ReportFormat format);

Report parse_report_json_lines(const std::string& text);
Report load_report_file(const std::string& path);
void save_report_file(const std::string& path, const Report& report);

// The static comparison matrix of ARP defense techniques.
struct FeatureMatrix {
    std::vector<std::string> techniques;
    std::vector<std::string> features;
    std::vector<std::vector<std::string>> cells;  // [feature][technique]
    std::string footnote;

    const std::string& cell(const std::string& technique,
                            const std::string& feature) const;
};

const FeatureMatrix& feature_matrix();
std::string render_feature_matrix();

}  // namespace arpshield

#endif  // ARPSHIELD_REPORT_HPP
