#include "optlab/report_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>

namespace optlab::report_io {

namespace {

using nlohmann::json;

std::string echo_line(const json& config_echo) {
    return "# config: " + config_echo.dump() + "\n";
}

} // namespace

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc{}) throw ValidationError("double formatting failed");
    return {buf, ptr};
}

uint64_t fnv1a64(std::string_view text) {
    uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001B3ULL;
    }
    return h;
}

std::string filename_token(std::string_view text) {
    std::string out(text);
    for (char& ch : out)
        if (ch == ':') ch = '-';
    return out;
}

std::string output_name(std::string_view stem, const spaces::SpaceDescriptor& desc,
                        const nlohmann::json& config_echo, std::string_view ext) {
    char hash[17];
    std::snprintf(hash, sizeof hash, "%08llx",
                  static_cast<unsigned long long>(fnv1a64(config_echo.dump()) & 0xFFFFFFFFULL));
    return std::string(stem) + "_" + filename_token(desc.text()) + "_" + hash + std::string(ext);
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out.write(content.data(), std::streamsize(content.size()));
    out.flush();
    if (!out) throw IoError("write failed: " + path.string());
}

std::string rank_table_csv(const ranking::RankTable& table, bool with_complexity,
                           const nlohmann::json& config_echo) {
    const spaces::SpaceAccessor acc(table.space());
    std::string out = echo_line(config_echo);
    out += "rank,index,score,encoding_hex,lz76,normalized\n";
    const auto rows = table.rows();
    for (size_t row = 0; row < rows.size(); ++row) {
        const auto& entry = rows[row];
        out += std::to_string(table.rank_at_row(row));
        out += ',';
        out += std::to_string(entry.index);
        out += ',';
        out += std::to_string(entry.score);
        out += ',';
        out += acc.encoding(entry.index).hex();
        out += ',';
        if (with_complexity) {
            const auto canon = acc.canonical_encoding(entry.index);
            const uint32_t c = complexity::lz76_phrase_count(canon);
            out += std::to_string(c);
            out += ',';
            out += format_double(complexity::normalize(c, canon.size()));
        } else {
            out += ',';
        }
        out += '\n';
    }
    return out;
}

std::string profile_csv(const complexity::ComplexityProfile& profile,
                        const nlohmann::json& config_echo) {
    std::string out = echo_line(config_echo);
    out += "mean," + format_double(profile.mean()) + "\n";
    out += "stddev," + format_double(profile.stddev()) + "\n";
    out += "sample_size," + std::to_string(profile.sample_size()) + "\n";
    out += "percentile,value\n";
    for (int p : complexity::ComplexityProfile::kPercentiles)
        out += std::to_string(p) + "," + format_double(profile.percentile_value(p)) + "\n";
    return out;
}

std::string report_json(const experiments::ExperimentReport& report,
                        const nlohmann::json& config_echo) {
    json j = report.to_json();
    j["config"] = config_echo;
    return j.dump(2) + "\n";
}

std::string plot_csv(const experiments::ExperimentReport& report,
                     const nlohmann::json& config_echo) {
    const json& obs = report.observed;
    const std::string kind = obs.value("kind", "");
    std::string out = echo_line(config_echo);

    if (kind == "rank_complexity_profile") {
        out += "bin_quantile,mean_normalized\n";
        const auto& xs = obs.at("bin_quantile");
        const auto& ys = obs.at("bin_mean_normalized");
        for (size_t i = 0; i < xs.size(); ++i)
            out += format_double(xs[i].get<double>()) + "," +
                   format_double(ys[i].get<double>()) + "\n";
        return out;
    }
    if (kind == "coincidence") {
        out += "pair,coincide\n";
        for (const auto& pair : obs.value("pairs", json::array()))
            out += pair.at("a").get<std::string>() + "~" + pair.at("b").get<std::string>() + "," +
                   std::to_string(int(pair.at("coincide").get<bool>())) + "\n";
        return out;
    }
    if (kind == "complex_control") {
        out += "seed,z\n";
        for (const auto& row : obs.value("per_seed", json::array()))
            out += std::to_string(row.at("seed").get<uint64_t>()) + "," +
                   format_double(row.at("z").get<double>()) + "\n";
        return out;
    }

    // Scalar summaries (overlap, Monte Carlo calibrations, extrema).
    out += "quantity,value\n";
    for (const auto& [key, value] : obs.items()) {
        if (key == "kind" || !value.is_number()) continue;
        out += key + "," +
               (value.is_number_float() ? format_double(value.get<double>())
                                        : std::to_string(value.get<int64_t>())) +
               "\n";
    }
    if (report.null_prediction)
        out += "null_prediction," + format_double(*report.null_prediction) + "\n";
    if (report.ratio) out += "ratio," + format_double(*report.ratio) + "\n";
    if (report.ci) {
        out += "ci_lo," + format_double(report.ci->lo) + "\n";
        out += "ci_hi," + format_double(report.ci->hi) + "\n";
    }
    return out;
}

} // namespace optlab::report_io
