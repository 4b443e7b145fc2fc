#pragma once

#include "rootflow/histogram.hpp"
#include "rootflow/verify.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace rootflow {

// All output files are written to a temporary sibling and renamed into
// place, so interrupted runs never leave torn files.
void atomic_write_text(const std::filesystem::path& path, const std::string& content);

// One decimal value per line under a `root` header, 17 significant digits.
std::string roots_csv(const std::vector<double>& roots);
std::vector<double> read_roots_csv(const std::filesystem::path& path);

// `bin_left,bin_right,count` rows.
std::string histogram_csv(const Histogram& h);

std::string format_g17(double v);

nlohmann::json to_json(const HermiteFitReport& r);
nlohmann::json to_json(const LemmaReport& r);
nlohmann::json to_json(const ConservationReport& r);
nlohmann::json to_json(const PropositionReport& r);

} // namespace rootflow
