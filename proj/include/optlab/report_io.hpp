#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"

#include "optlab/complexity.hpp"
#include "optlab/experiments.hpp"
#include "optlab/ranking.hpp"

namespace optlab::report_io {

/// Shortest round-trip decimal form of a double (std::to_chars).
std::string format_double(double value);

uint64_t fnv1a64(std::string_view text);

/// Filename-safe form of a descriptor string (':' becomes '-').
std::string filename_token(std::string_view text);

/// `{stem}_{space}_{8-hex-digit config hash}{ext}`.
std::string output_name(std::string_view stem, const spaces::SpaceDescriptor& desc,
                        const nlohmann::json& config_echo, std::string_view ext);

void write_text_file(const std::filesystem::path& path, std::string_view content);

/// Columns rank,index,score,encoding_hex,lz76,normalized after a `# config:`
/// echo line. Complexity columns are filled when requested, else left empty.
std::string rank_table_csv(const ranking::RankTable& table, bool with_complexity,
                           const nlohmann::json& config_echo);

/// mean/stddev/sample_size header lines, then percentile,value rows.
std::string profile_csv(const complexity::ComplexityProfile& profile,
                        const nlohmann::json& config_echo);

/// Report JSON: the fixed report keys plus a `config` echo, 2-space indent.
std::string report_json(const experiments::ExperimentReport& report,
                        const nlohmann::json& config_echo);

/// Two-column plot-ready CSV, shaped by the report's observed.kind.
std::string plot_csv(const experiments::ExperimentReport& report,
                     const nlohmann::json& config_echo);

} // namespace optlab::report_io
