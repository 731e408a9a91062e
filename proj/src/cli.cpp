#include "optlab/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "optlab/experiments.hpp"
#include "optlab/report_io.hpp"
#include "optlab/rng.hpp"
#include "optlab/version.hpp"

namespace optlab::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct RunConfig {
    std::string space;
    std::vector<std::string> objectives;
    uint64_t seed = 1;
    uint64_t trials = 1000;
    uint64_t r = 16;
    uint64_t k = 256;
    uint32_t bins = 16;
    uint64_t sample_cap = 1'000'000;
    uint32_t seed_count = 20;
    std::string out = ".";
    unsigned threads = 1;
    std::string report_path; // plotdata input
    bool mc = false;         // overlap: Monte Carlo calibration mode
};

// The echo embedded in every output names everything that shapes the result.
// Output directory and thread count deliberately stay out: they must not
// change a single byte of what gets written.
json base_echo(const std::string& command, const RunConfig& cfg,
               const spaces::SpaceDescriptor& desc,
               const std::vector<objectives::ObjectiveDescriptor>& objs) {
    json echo;
    echo["command"] = command;
    echo["space"] = desc.text();
    json list = json::array();
    for (const auto& obj : objs) list.push_back(obj.text());
    echo["objectives"] = list;
    echo["software_version"] = kSoftwareVersion;
    (void)cfg;
    return echo;
}

spaces::SpaceDescriptor need_space(const RunConfig& cfg) {
    if (cfg.space.empty()) throw ValidationError("--space is required");
    return spaces::SpaceDescriptor::parse(cfg.space);
}

std::vector<objectives::ObjectiveDescriptor> parse_objectives(const RunConfig& cfg) {
    std::vector<objectives::ObjectiveDescriptor> objs;
    for (const auto& token : cfg.objectives) objs.push_back(objectives::ObjectiveDescriptor::parse(token));
    return objs;
}

objectives::ObjectiveDescriptor need_one_objective(const RunConfig& cfg) {
    const auto objs = parse_objectives(cfg);
    if (objs.size() != 1) throw ValidationError("exactly one --obj is required here");
    return objs.front();
}

fs::path out_dir(const RunConfig& cfg) {
    fs::path dir(cfg.out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw IoError("output directory unusable: " + cfg.out);
    return dir;
}

fs::path write_report(const RunConfig& cfg, const std::string& command,
                      const experiments::ExperimentReport& report, const json& echo) {
    const auto path = out_dir(cfg) / report_io::output_name(command, report.space, echo, ".json");
    report_io::write_text_file(path, report_io::report_json(report, echo));
    return path;
}

std::string ratio_text(const experiments::ExperimentReport& report) {
    std::string line;
    if (report.null_prediction)
        line += " null " + report_io::format_double(*report.null_prediction);
    if (report.ratio) line += " ratio " + report_io::format_double(*report.ratio);
    return line;
}

int cmd_spaces(const RunConfig& cfg) {
    const auto desc = need_space(cfg);
    std::cout << "space " << desc.text() << " size " << spaces::space_size(desc);
    if (desc.kind == spaces::SpaceKind::saw2d)
        std::cout << " shapes " << spaces::saw2d_shape_count(desc.n);
    std::cout << "\n";
    return 0;
}

int cmd_rank(const RunConfig& cfg, bool extremes) {
    const auto desc = need_space(cfg);
    const auto obj = need_one_objective(cfg);
    const auto table = extremes
                           ? ranking::select_extremes(desc, obj, cfg.k, cfg.threads)
                           : ranking::build_rank_table(desc, obj, cfg.threads);

    json echo = base_echo("rank", cfg, desc, {table.objective()});
    if (extremes) echo["k"] = cfg.k;
    const auto path = out_dir(cfg) / report_io::output_name("rank", desc, echo, ".csv");
    report_io::write_text_file(path, report_io::rank_table_csv(table, true, echo));

    const auto& best = table.rows().front();
    std::cout << "rank " << desc.text() << " " << obj.text() << " optimum index " << best.index
              << " score " << best.score << " -> " << path.string() << "\n";
    return 0;
}

int cmd_profile(const RunConfig& cfg) {
    const auto desc = need_space(cfg);
    const auto objs = parse_objectives(cfg);
    if (objs.empty()) {
        json echo = base_echo("profile", cfg, desc, {});
        echo["sample_cap"] = cfg.sample_cap;
        echo["seed"] = cfg.seed;
        const auto profile =
            complexity::space_complexity_profile(desc, cfg.sample_cap, cfg.seed, cfg.threads);
        const auto path = out_dir(cfg) / report_io::output_name("profile", desc, echo, ".csv");
        report_io::write_text_file(path, report_io::profile_csv(profile, echo));
        std::cout << "profile " << desc.text() << " sample_size " << profile.sample_size()
                  << " mean " << report_io::format_double(profile.mean()) << " -> "
                  << path.string() << "\n";
        return 0;
    }

    if (objs.size() != 1) throw ValidationError("profile takes at most one objective");
    experiments::ProfileOptions opts{cfg.sample_cap, cfg.seed, cfg.threads};
    const auto report = experiments::rank_complexity_profile(desc, objs.front(), cfg.bins, opts);
    json echo = base_echo("profile", cfg, desc, report.objectives);
    echo["bins"] = cfg.bins;
    echo["sample_cap"] = cfg.sample_cap;
    echo["seed"] = cfg.seed;
    const auto path = write_report(cfg, "profile", report, echo);
    std::cout << "E1 profile " << desc.text() << " " << objs.front().text()
              << " rank1_percentile "
              << report_io::format_double(
                     report.observed.at("rank1").at("percentile_position").get<double>())
              << " -> " << path.string() << "\n";
    return 0;
}

int cmd_coincide(const RunConfig& cfg) {
    const auto desc = need_space(cfg);
    auto objs = parse_objectives(cfg);
    if (objs.empty())
        for (const auto& obj : objectives::simple_suite(desc.kind)) objs.push_back(obj);
    const auto report = experiments::coincidence_experiment(desc, objs, cfg.threads);
    json echo = base_echo("coincide", cfg, desc, objs);
    const auto path = write_report(cfg, "coincide", report, echo);
    std::cout << "E2 coincide " << desc.text() << " observed "
              << report_io::format_double(report.observed.at("fraction").get<double>())
              << ratio_text(report) << " -> " << path.string() << "\n";
    return 0;
}

int cmd_null_mc(const RunConfig& cfg) {
    const auto desc = need_space(cfg);
    const auto report =
        experiments::random_null_monte_carlo(desc, cfg.trials, cfg.seed, cfg.threads);
    json echo = base_echo("null-mc", cfg, desc, {});
    echo["trials"] = cfg.trials;
    echo["seed"] = cfg.seed;
    const auto path = write_report(cfg, "null-mc", report, echo);
    std::cout << "E2 null-mc " << desc.text() << " observed "
              << report_io::format_double(report.observed.at("rate").get<double>())
              << ratio_text(report) << " -> " << path.string() << "\n";
    return 0;
}

int cmd_overlap(const RunConfig& cfg) {
    const auto desc = need_space(cfg);
    if (cfg.mc) {
        const auto report = experiments::top_r_overlap_monte_carlo(desc, cfg.trials, cfg.r,
                                                                   cfg.seed, cfg.threads);
        json echo = base_echo("overlap", cfg, desc, {});
        echo["mc"] = true;
        echo["trials"] = cfg.trials;
        echo["r"] = cfg.r;
        echo["seed"] = cfg.seed;
        const auto path = write_report(cfg, "overlap", report, echo);
        std::cout << "E3 overlap-mc " << desc.text() << " observed "
                  << report_io::format_double(
                         report.observed.at("mean_indicator").get<double>())
                  << ratio_text(report) << " -> " << path.string() << "\n";
        return 0;
    }
    const auto objs = parse_objectives(cfg);
    if (objs.size() != 2) throw ValidationError("overlap needs exactly two objectives");
    const auto report = experiments::top_r_overlap(desc, objs[0], objs[1], cfg.r, cfg.threads);
    json echo = base_echo("overlap", cfg, desc, objs);
    echo["r"] = cfg.r;
    const auto path = write_report(cfg, "overlap", report, echo);
    std::cout << "E3 overlap " << desc.text() << " indicator "
              << report.observed.at("indicator").get<int>() << ratio_text(report) << " -> "
              << path.string() << "\n";
    return 0;
}

int cmd_extrema(const RunConfig& cfg) {
    const auto desc = need_space(cfg);
    const auto obj = need_one_objective(cfg);
    experiments::ProfileOptions opts{cfg.sample_cap, cfg.seed, cfg.threads};
    const auto report = experiments::extrema_experiment(desc, obj, opts);
    json echo = base_echo("extrema", cfg, desc, report.objectives);
    echo["sample_cap"] = cfg.sample_cap;
    echo["seed"] = cfg.seed;
    const auto path = write_report(cfg, "extrema", report, echo);
    std::cout << "E4 extrema " << desc.text() << " " << obj.text() << " worst_percentile "
              << report_io::format_double(
                     report.observed.at("worst").at("percentile_position").get<double>())
              << " -> " << path.string() << "\n";
    return 0;
}

int cmd_control(const RunConfig& cfg) {
    const auto desc = need_space(cfg);
    if (cfg.objectives.size() != 1)
        throw ValidationError("control needs one complex objective family: C1, C2 or A2");
    const std::string& token = cfg.objectives.front();
    objectives::ObjectiveDescriptor obj;
    if (token == "C1") obj = objectives::hamming_to_target(0);
    else if (token == "C2") obj = objectives::random_function(0);
    else if (token == "A2") obj = objectives::random_affinity(0, 0);
    else
        throw ValidationError("control derives its own seeds; pass a bare family token "
                              "(C1, C2 or A2), got '" + token + "'");
    if (cfg.seed_count < 1) throw ValidationError("--seed-count must be at least 1");

    std::vector<uint64_t> seeds;
    for (uint32_t i = 0; i < cfg.seed_count; ++i) seeds.push_back(rng::derive_seed(cfg.seed, i));

    experiments::ProfileOptions opts{cfg.sample_cap, cfg.seed, cfg.threads};
    const auto report = experiments::complex_control_experiment(desc, obj, seeds, opts);
    json echo = base_echo("control", cfg, desc, report.objectives);
    echo["family"] = token;
    echo["seed"] = cfg.seed;
    echo["seed_count"] = cfg.seed_count;
    echo["sample_cap"] = cfg.sample_cap;
    const auto path = write_report(cfg, "control", report, echo);
    std::cout << "E5 control " << desc.text() << " " << token << " fraction_within "
              << report_io::format_double(report.observed.at("fraction_within").get<double>())
              << " -> " << path.string() << "\n";
    return 0;
}

int cmd_plotdata(const RunConfig& cfg) {
    if (cfg.report_path.empty()) throw ValidationError("--report <report.json> is required");
    std::ifstream in(cfg.report_path, std::ios::binary);
    if (!in) throw IoError("cannot read report: " + cfg.report_path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    json j;
    try {
        j = json::parse(buffer.str());
    } catch (const json::parse_error& e) {
        throw ValidationError("report is not valid JSON: " + std::string(e.what()));
    }

    experiments::ExperimentReport report;
    report.experiment_id = j.value("experiment_id", "");
    report.space = spaces::SpaceDescriptor::parse(j.at("space").get<std::string>());
    report.observed = j.value("observed", json::object());
    if (j.contains("null_prediction") && j["null_prediction"].is_number())
        report.null_prediction = j["null_prediction"].get<double>();
    if (j.contains("ratio") && j["ratio"].is_number()) report.ratio = j["ratio"].get<double>();
    if (j.contains("ci_lo") && j["ci_lo"].is_number() && j["ci_hi"].is_number())
        report.ci = stats::Interval{j["ci_lo"].get<double>(), j["ci_hi"].get<double>()};

    const json echo = j.value("config", json::object());
    fs::path name(cfg.report_path);
    const auto path = out_dir(cfg) / (name.stem().string() + ".csv");
    report_io::write_text_file(path, report_io::plot_csv(report, echo));
    std::cout << "plotdata " << cfg.report_path << " -> " << path.string() << "\n";
    return 0;
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read config file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    json j;
    try {
        j = json::parse(buffer.str());
    } catch (const json::parse_error& e) {
        throw ValidationError("config file is not valid JSON: " + std::string(e.what()));
    }
    if (!j.is_object()) throw ValidationError("config file must hold a JSON object");

    if (j.contains("space")) cfg.space = j["space"].get<std::string>();
    if (j.contains("objectives")) {
        cfg.objectives.clear();
        if (j["objectives"].is_string()) {
            std::stringstream ss(j["objectives"].get<std::string>());
            std::string item;
            while (std::getline(ss, item, ','))
                if (!item.empty()) cfg.objectives.push_back(item);
        } else {
            for (const auto& entry : j["objectives"])
                cfg.objectives.push_back(entry.get<std::string>());
        }
    }
    if (j.contains("seed")) cfg.seed = j["seed"].get<uint64_t>();
    if (j.contains("trials")) cfg.trials = j["trials"].get<uint64_t>();
    if (j.contains("r")) cfg.r = j["r"].get<uint64_t>();
    if (j.contains("k")) cfg.k = j["k"].get<uint64_t>();
    if (j.contains("bins")) cfg.bins = j["bins"].get<uint32_t>();
    if (j.contains("sample_cap")) cfg.sample_cap = j["sample_cap"].get<uint64_t>();
    if (j.contains("seed_count")) cfg.seed_count = j["seed_count"].get<uint32_t>();
    if (j.contains("out")) cfg.out = j["out"].get<std::string>();
    if (j.contains("threads")) cfg.threads = j["threads"].get<unsigned>();
}

int run_impl(int argc, const char* const* argv) {
    RunConfig cfg;

    // The config file provides defaults; explicit flags win. Located before
    // CLI11 runs so its values are in place as defaults.
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string_view(argv[i]) == "--config") apply_config_file(cfg, argv[i + 1]);

    CLI::App app{"Enumeration experiments over small discrete spaces"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "JSON config file with flag defaults");

    auto add_common = [&](CLI::App* sub, bool wants_objs) {
        sub->add_option("--space", cfg.space, "space descriptor, e.g. binary:12 or subset:16:1024:7");
        if (wants_objs)
            sub->add_option("--objs,--obj", cfg.objectives,
                            "objective tokens, repeatable or comma-separated")
                ->delimiter(',');
        sub->add_option("--seed", cfg.seed, "master seed");
        sub->add_option("--out", cfg.out, "output directory");
        sub->add_option("--threads", cfg.threads, "worker thread cap (results are identical for any value)");
        sub->add_option("--config", config_path, "JSON config file with flag defaults");
        return sub;
    };

    auto* sc_spaces = add_common(app.add_subcommand("spaces", "print space sizes"), false);
    auto* sc_rank = add_common(app.add_subcommand("rank", "write a rank-table CSV"), true);
    auto* rank_k = sc_rank->add_option("--k", cfg.k, "extremes mode: keep only top/bottom k");
    auto* sc_profile = add_common(
        app.add_subcommand("profile", "space complexity profile; with --obj: rank-complexity experiment (E1)"),
        true);
    sc_profile->add_option("--bins", cfg.bins, "rank-quantile bins");
    sc_profile->add_option("--sample-cap", cfg.sample_cap, "profile sample cap");
    auto* sc_coincide =
        add_common(app.add_subcommand("coincide", "optimum coincidence across objectives (E2)"), true);
    auto* sc_null = add_common(app.add_subcommand("null-mc", "random-function coincidence null (E2)"), false);
    sc_null->add_option("--trials", cfg.trials, "Monte Carlo trials");
    auto* sc_overlap = add_common(app.add_subcommand("overlap", "top-r membership (E3)"), true);
    sc_overlap->add_option("--r", cfg.r, "top set size");
    sc_overlap->add_flag("--mc", cfg.mc, "random-function calibration instead of two objectives");
    sc_overlap->add_option("--trials", cfg.trials, "Monte Carlo trials (with --mc)");
    auto* sc_extrema = add_common(app.add_subcommand("extrema", "extremes under f and -f (E4)"), true);
    sc_extrema->add_option("--sample-cap", cfg.sample_cap, "profile sample cap");
    auto* sc_control = add_common(app.add_subcommand("control", "complex-objective control (E5)"), true);
    sc_control->add_option("--seed-count", cfg.seed_count, "derived seeds per control run");
    sc_control->add_option("--sample-cap", cfg.sample_cap, "profile sample cap");
    auto* sc_plot = app.add_subcommand("plotdata", "turn a report JSON into a plot-ready CSV");
    sc_plot->add_option("--report", cfg.report_path, "report JSON path");
    sc_plot->add_option("--out", cfg.out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (app.got_subcommand(sc_spaces)) return cmd_spaces(cfg);
    if (app.got_subcommand(sc_rank)) return cmd_rank(cfg, rank_k->count() > 0);
    if (app.got_subcommand(sc_profile)) return cmd_profile(cfg);
    if (app.got_subcommand(sc_coincide)) return cmd_coincide(cfg);
    if (app.got_subcommand(sc_null)) return cmd_null_mc(cfg);
    if (app.got_subcommand(sc_overlap)) return cmd_overlap(cfg);
    if (app.got_subcommand(sc_extrema)) return cmd_extrema(cfg);
    if (app.got_subcommand(sc_control)) return cmd_control(cfg);
    if (app.got_subcommand(sc_plot)) return cmd_plotdata(cfg);
    throw ValidationError("no subcommand selected");
}

} // namespace

int run(int argc, const char* const* argv) {
    try {
        return run_impl(argc, argv);
    } catch (const CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return 3;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 4;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace optlab::cli
