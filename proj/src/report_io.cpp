#include "rootflow/report_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rootflow {

void atomic_write_text(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
        out << content;
        if (!out.good()) throw std::runtime_error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string roots_csv(const std::vector<double>& roots) {
    std::string out = "root\n";
    for (double r : roots) {
        out += format_g17(r);
        out += '\n';
    }
    return out;
}

std::vector<double> read_roots_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open roots file: " + path.string());
    std::string line;
    std::vector<double> values;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (first) {
            first = false;
            if (line == "root") continue;
        }
        std::size_t pos = 0;
        const double v = std::stod(line, &pos);
        if (pos != line.size())
            throw std::invalid_argument("bad value in roots file: " + line);
        values.push_back(v);
    }
    if (values.empty()) throw std::invalid_argument("roots file is empty: " + path.string());
    return values;
}

std::string histogram_csv(const Histogram& h) {
    std::string out = "bin_left,bin_right,count\n";
    for (std::size_t b = 0; b < h.counts.size(); ++b) {
        out += format_g17(h.bin_edges[b]);
        out += ',';
        out += format_g17(h.bin_edges[b + 1]);
        out += ',';
        out += std::to_string(h.counts[b]);
        out += '\n';
    }
    return out;
}

nlohmann::json to_json(const HermiteFitReport& r) {
    return {{"gamma", r.gamma}, {"rms_error", r.rms_error}, {"ell", r.ell}, {"n", r.n}};
}

nlohmann::json to_json(const LemmaReport& r) {
    return {{"m", r.m},
            {"n", r.n},
            {"trials", r.trials},
            {"mean_abs_residual", r.mean_abs_residual},
            {"normalized_ratio", r.normalized_ratio}};
}

nlohmann::json to_json(const ConservationReport& r) {
    return {{"mean_drift", r.mean_drift},
            {"pairwise_identity_rel_err", r.pairwise_identity_rel_err},
            {"steps_checked", r.steps_checked},
            {"skipped", r.skipped}};
}

nlohmann::json to_json(const PropositionReport& r) {
    return {{"n", r.n}, {"ell", r.ell}, {"max_deviation", r.max_deviation}};
}

} // namespace rootflow
