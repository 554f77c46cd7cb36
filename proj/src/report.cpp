#include "arpshield/report.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace arpshield {

using ordered_json = nlohmann::ordered_json;

std::string PdrValue::to_string() const
{
    std::string result = std::to_string(tenths / 10) + "." +
                         std::to_string(tenths % 10);
    return result;
}

PdrValue pdr(std::uint64_t abnormal_detected, std::uint64_t abnormal_total)
{
    if (abnormal_detected > abnormal_total) {
        throw CountExceedsTotalError("detected count exceeds total");
    }
    PdrValue value;
    if (abnormal_total == 0) {
        value.undefined = true;
        return value;
    }
    // Exact integer arithmetic, half-up at one decimal of a percent.
    value.tenths =
        (2000 * abnormal_detected + abnormal_total) / (2 * abnormal_total);
    return value;
}

Report build_report(const std::vector<DetectionRecord>& records,
                    const Scenario& scenario,
                    const std::string& detector_name)
{
    Report report;
    report.scenario_label = scenario.label;
    report.detector_name = detector_name;
    report.seed = scenario.seed;
    report.generator_name = kGeneratorName;
    report.version = kArtifactVersion;

    for (const auto& [cls, count] : scenario.mix) {
        if (count > 0) {
            report.per_class[cls] = ClassCounts{};
        }
    }

    std::uint64_t victim_records = 0;
    for (const DetectionRecord& record : records) {
        if (!record.injected_class || record.observer != record.victim) {
            continue;
        }
        ++victim_records;
        ClassCounts& counts = report.per_class[*record.injected_class];
        ++counts.sent;
        switch (record.verdict_kind) {
            case VerdictKind::Detected: ++counts.detected; break;
            case VerdictKind::Accepted: ++counts.accepted; break;
            case VerdictKind::Ignored: ++counts.ignored; break;
        }
        if (is_abnormal(*record.injected_class)) {
            if (record.verdict_kind == VerdictKind::Detected) {
                ++report.abnormal_detected;
            }
        } else if (record.verdict_kind == VerdictKind::Detected) {
            ++report.false_positives;
        }
    }

    if (victim_records != scenario.total_frames()) {
        throw ReportError("aggregation leakage: " +
                          std::to_string(victim_records) +
                          " victim records for " +
                          std::to_string(scenario.total_frames()) + " frames");
    }
    for (const auto& [cls, counts] : report.per_class) {
        if (counts.sent != counts.detected + counts.accepted + counts.ignored) {
            throw ReportError("per-class counts do not add up");
        }
        if (is_abnormal(cls)) {
            report.abnormal_total += counts.sent;
        }
    }

    report.pdr_percent = pdr(report.abnormal_detected, report.abnormal_total);

    report.config_echo["detector"] = to_string(scenario.detector.kind);
    report.config_echo["clear_interval_s"] =
        format_seconds(scenario.detector.clear_interval);
    report.config_echo["fake_list_ttl_s"] =
        scenario.detector.fake_list_ttl
            ? format_seconds(*scenario.detector.fake_list_ttl)
            : "infinite";
    report.config_echo["static_entries"] =
        scenario.detector.seed_static_topology ? "full" : "none";
    report.config_echo["frame_gap_s"] = format_seconds(scenario.frame_gap);
    report.config_echo["link_delay_s"] = format_seconds(scenario.link_delay);
    report.config_echo["hosts"] = std::to_string(scenario.topology.hosts.size());
    report.config_echo["attacker"] = scenario.topology.attacker_id;
    return report;
}

ReportFormat report_format_from_string(const std::string& text)
{
    if (text == "json-lines") {
        return ReportFormat::JsonLines;
    }
    if (text == "csv") {
        return ReportFormat::Csv;
    }
    if (text == "text") {
        return ReportFormat::Text;
    }
    throw UnknownFormatError("unknown report format: " + text);
}

namespace {

std::string emit_json_lines(const Report& report)
{
    std::ostringstream out;
    ordered_json header;
    header["record"] = "report";
    header["label"] = report.scenario_label;
    header["detector"] = report.detector_name;
    header["seed"] = report.seed;
    header["generator"] = report.generator_name;
    header["version"] = report.version;
    header["abnormal_detected"] = report.abnormal_detected;
    header["abnormal_total"] = report.abnormal_total;
    header["pdr_percent"] = report.pdr_percent.to_string();
    header["pdr_undefined"] = report.pdr_percent.undefined;
    header["false_positives"] = report.false_positives;
    ordered_json config;
    for (const auto& [key, value] : report.config_echo) {
        config[key] = value;
    }
    header["config"] = config;
    out << header.dump() << "\n";

    for (const auto& [cls, counts] : report.per_class) {
        ordered_json row;
        row["record"] = "class";
        row["class"] = to_string(cls);
        row["sent"] = counts.sent;
        row["detected"] = counts.detected;
        row["accepted"] = counts.accepted;
        row["ignored"] = counts.ignored;
        out << row.dump() << "\n";
    }
    return out.str();
}

std::string emit_csv(const Report& report)
{
    std::ostringstream out;
    out << "class,sent,detected,accepted,ignored\n";
    for (const auto& [cls, counts] : report.per_class) {
        out << to_string(cls) << "," << counts.sent << "," << counts.detected
            << "," << counts.accepted << "," << counts.ignored << "\n";
    }
    out << "PDR," << report.pdr_percent.to_string() << ",,,\n";
    return out.str();
}

std::string emit_text(const Report& report)
{
    std::ostringstream out;
    out << "scenario:  " << report.scenario_label << "\n";
    out << "detector:  " << report.detector_name << "\n";
    out << "seed:      " << report.seed << " (" << report.generator_name
        << ")\n";
    out << "version:   " << report.version << "\n";
    for (const auto& [key, value] : report.config_echo) {
        out << "config." << key << " = " << value << "\n";
    }
    out << "\n";
    out << "class     sent  detected  accepted  ignored\n";
    char line[96];
    for (const auto& [cls, counts] : report.per_class) {
        std::snprintf(line, sizeof(line), "%-8s %5llu %9llu %9llu %8llu\n",
                      to_string(cls),
                      static_cast<unsigned long long>(counts.sent),
                      static_cast<unsigned long long>(counts.detected),
                      static_cast<unsigned long long>(counts.accepted),
                      static_cast<unsigned long long>(counts.ignored));
        out << line;
    }
    out << "\n";
    out << "abnormal detected / total: " << report.abnormal_detected << " / "
        << report.abnormal_total << "\n";
    out << "PDR: " << report.pdr_percent.to_string() << "%";
    if (report.pdr_percent.undefined) {
        out << " (undefined: no abnormal frames)";
    }
    out << "\n";
    out << "false positives: " << report.false_positives << "\n";
    return out.str();
}

}  // namespace

std::string emit(const Report& report, ReportFormat format)
{
    switch (format) {
        case ReportFormat::JsonLines: return emit_json_lines(report);
        case ReportFormat::Csv: return emit_csv(report);
        case ReportFormat::Text: return emit_text(report);
    }
    throw UnknownFormatError("unknown report format");
}

Report parse_report_json_lines(const std::string& text)
{
    Report report;
    std::istringstream stream(text);
    std::string line;
    bool saw_header = false;
    while (std::getline(stream, line)) {
        if (line.empty()) {
            continue;
        }
        const ordered_json row = ordered_json::parse(line);
        const std::string kind = row.at("record").get<std::string>();
        if (kind == "report") {
            saw_header = true;
            report.scenario_label = row.at("label").get<std::string>();
            report.detector_name = row.at("detector").get<std::string>();
            report.seed = row.at("seed").get<std::uint64_t>();
            report.generator_name = row.at("generator").get<std::string>();
            report.version = row.at("version").get<std::string>();
            report.abnormal_detected =
                row.at("abnormal_detected").get<std::uint64_t>();
            report.abnormal_total =
                row.at("abnormal_total").get<std::uint64_t>();
            report.false_positives =
                row.at("false_positives").get<std::uint64_t>();
            report.pdr_percent =
                pdr(report.abnormal_detected, report.abnormal_total);
            for (const auto& [key, value] : row.at("config").items()) {
                report.config_echo[key] = value.get<std::string>();
            }
        } else if (kind == "class") {
            const auto cls =
                attack_class_from_string(row.at("class").get<std::string>());
            if (!cls) {
                throw ReportError("unknown class in report: " +
                                  row.at("class").get<std::string>());
            }
            ClassCounts counts;
            counts.sent = row.at("sent").get<std::uint64_t>();
            counts.detected = row.at("detected").get<std::uint64_t>();
            counts.accepted = row.at("accepted").get<std::uint64_t>();
            counts.ignored = row.at("ignored").get<std::uint64_t>();
            report.per_class[*cls] = counts;
        } else {
            throw ReportError("unknown record kind in report: " + kind);
        }
    }
    if (!saw_header) {
        throw ReportError("report is missing its header line");
    }
    return report;
}

Report load_report_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ReportError("cannot open report file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_report_json_lines(buffer.str());
}

void save_report_file(const std::string& path, const Report& report)
{
    std::ofstream out(path);
    if (!out) {
        throw ReportError("cannot open report file for writing: " + path);
    }
    out << emit(report, ReportFormat::JsonLines);
}

const std::string& FeatureMatrix::cell(const std::string& technique,
                                       const std::string& feature) const
{
    const auto tech_it =
        std::find(techniques.begin(), techniques.end(), technique);
    const auto feat_it = std::find(features.begin(), features.end(), feature);
    if (tech_it == techniques.end() || feat_it == features.end()) {
        throw ReportError("unknown matrix cell: " + technique + " / " +
                          feature);
    }
    const std::size_t tech = static_cast<std::size_t>(
        std::distance(techniques.begin(), tech_it));
    const std::size_t feat = static_cast<std::size_t>(
        std::distance(features.begin(), feat_it));
    return cells[feat][tech];
}

const FeatureMatrix& feature_matrix()
{
    static const FeatureMatrix matrix = [] {
        FeatureMatrix m;
        m.techniques = {"RFC826", "SARP",           "TARP",    "EARP",
                        "GARP",   "Central Server", "Proposed"};
        m.features = {"Cross Layer Inspection", "ARP Stateful",
                      "ARP storm Prevention",
                      "Static-S and Dynamic-D entries", "Cryptographic"};
        m.cells = {
            {"No", "No", "No", "No", "No", "No", "Yes"},
            {"No", "Yes", "Yes", "Yes", "Yes", "Yes", "Yes"},
            {"No", "No", "Partial *", "Yes", "Yes", "Yes", "Partial"},
            {"S&D", "D", "D", "S&D", "S&D", "S&D", "S&D"},
            {"No", "Yes", "Yes", "No", "Yes", "Yes", "No"},
        };
        m.footnote = "* leads to ticket flooding attack";
        return m;
    }();
    return matrix;
}

std::string render_feature_matrix()
{
    const FeatureMatrix& m = feature_matrix();
    std::ostringstream out;

    std::size_t name_width = 0;
    for (const std::string& feature : m.features) {
        name_width = std::max(name_width, feature.size());
    }
    std::vector<std::size_t> widths;
    for (const std::string& technique : m.techniques) {
        widths.push_back(technique.size());
    }
    for (std::size_t f = 0; f < m.features.size(); ++f) {
        for (std::size_t t = 0; t < m.techniques.size(); ++t) {
            widths[t] = std::max(widths[t], m.cells[f][t].size());
        }
    }

    auto pad = [](const std::string& text, std::size_t width) {
        std::string padded = text;
        padded.resize(width, ' ');
        return padded;
    };

    out << pad("Features", name_width);
    for (std::size_t t = 0; t < m.techniques.size(); ++t) {
        out << "  " << pad(m.techniques[t], widths[t]);
    }
    out << "\n";
    for (std::size_t f = 0; f < m.features.size(); ++f) {
        out << pad(m.features[f], name_width);
        for (std::size_t t = 0; t < m.techniques.size(); ++t) {
            out << "  " << pad(m.cells[f][t], widths[t]);
        }
        out << "\n";
    }
    out << m.footnote << "\n";
    return out.str();
}

}  // namespace arpshield
