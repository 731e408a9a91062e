#include "doctest.h"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "optlab/cli.hpp"

namespace fs = std::filesystem;

namespace {

int run_cli(std::initializer_list<const char*> args) {
    std::vector<const char*> argv = {"optlab"};
    argv.insert(argv.end(), args.begin(), args.end());
    return optlab::cli::run(int(argv.size()), argv.data());
}

struct TempDir {
    fs::path path;

    TempDir() {
        static int counter = 0;
        path = fs::temp_directory_path() / ("optlab_cli_test_" + std::to_string(++counter));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }

    std::string str() const { return path.string(); }

    std::vector<fs::path> files() const {
        std::vector<fs::path> out;
        for (const auto& entry : fs::directory_iterator(path)) out.push_back(entry.path());
        std::sort(out.begin(), out.end());
        return out;
    }

    std::string only_file_text() const {
        const auto fl = files();
        REQUIRE(fl.size() == 1);
        std::ifstream in(fl.front(), std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    }
};

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

} // namespace

TEST_CASE("usage and validation failures exit with 2") {
    TempDir dir;
    CHECK(run_cli({}) == 2);
    CHECK(run_cli({"frobnicate"}) == 2);
    CHECK(run_cli({"rank", "--out", dir.str().c_str()}) == 2); // --space missing
    CHECK(run_cli({"rank", "--space", "binary:0", "--objs", "S1", "--out", dir.str().c_str()}) == 2);
    CHECK(run_cli({"rank", "--space", "binary:4", "--objs", "S9", "--out", dir.str().c_str()}) == 2);
    CHECK(run_cli({"rank", "--space", "binary:4", "--objs", "G1", "--out", dir.str().c_str()}) == 2);
    CHECK(run_cli({"null-mc", "--space", "binary:4", "--trials", "10", "--out",
                   dir.str().c_str()}) == 2);
    CHECK(run_cli({"overlap", "--space", "binary:4", "--objs", "S1", "--out",
                   dir.str().c_str()}) == 2); // needs exactly two objectives
    CHECK(dir.files().empty());
}

TEST_CASE("capacity refusals exit with 3 and I/O failures with 4") {
    TempDir dir;
    CHECK(run_cli({"rank", "--space", "binary:24", "--objs", "S1", "--out", dir.str().c_str()}) ==
          3);
    // Missing directories are created; a path occupied by a file is not usable.
    const std::string blocked = (dir.path / "occupied").string();
    std::ofstream(blocked) << "x";
    CHECK(run_cli({"rank", "--space", "binary:4", "--objs", "S1", "--out", blocked.c_str()}) == 4);
}

TEST_CASE("rank table output on binary:4") {
    TempDir dir;
    REQUIRE(run_cli({"rank", "--space", "binary:4", "--objs", "S1", "--out", dir.str().c_str()}) ==
            0);
    const auto lines = lines_of(dir.only_file_text());
    REQUIRE(lines.size() == 18); // config echo + header + 16 rows
    CHECK(lines[0].substr(0, 10) == "# config: ");
    CHECK(lines[1] == "rank,index,score,encoding_hex,lz76,normalized");
    CHECK(lines[2] == "1,15,4,f0,2,1");
    CHECK(lines[3] == "2,7,3,70,3,1.5");
    CHECK(lines[17] == "16,0,0,00,2,1");
}

TEST_CASE("rank extremes mode holds 2k rows") {
    TempDir dir;
    REQUIRE(run_cli({"rank", "--space", "binary:20", "--objs", "S1", "--k", "8", "--out",
                     dir.str().c_str()}) == 0);
    const auto lines = lines_of(dir.only_file_text());
    REQUIRE(lines.size() == 2 + 16);
    CHECK(lines[2].substr(0, 12) == "1,1048575,20");
    // Bottom block rank picks up at |X| - k + 1.
    CHECK(lines[10].substr(0, 8) == "1048569,");
}

TEST_CASE("repeated runs and thread counts give identical bytes") {
    TempDir a, b, c;
    const auto run_into = [](const TempDir& dir, const char* threads) {
        return run_cli({"profile", "--space", "binary:14", "--objs", "S3", "--bins", "16",
                        "--threads", threads, "--out", dir.str().c_str()});
    };
    REQUIRE(run_into(a, "1") == 0);
    REQUIRE(run_into(b, "1") == 0);
    REQUIRE(run_into(c, "4") == 0);
    CHECK(a.only_file_text() == b.only_file_text());
    CHECK(a.only_file_text() == c.only_file_text());
    CHECK(a.files().front().filename() == c.files().front().filename());

    TempDir m1, m4;
    const auto run_mc = [](const TempDir& dir, const char* threads) {
        return run_cli({"null-mc", "--space", "binary:10", "--trials", "400", "--seed", "5",
                        "--threads", threads, "--out", dir.str().c_str()});
    };
    REQUIRE(run_mc(m1, "1") == 0);
    REQUIRE(run_mc(m4, "4") == 0);
    CHECK(m1.only_file_text() == m4.only_file_text());
}

TEST_CASE("config file supplies defaults that flags override") {
    TempDir dir;
    const fs::path cfg = dir.path / "run.json";
    {
        std::ofstream out(cfg);
        out << R"({"space": "binary:6", "objectives": ["S2"], "out": ")" << dir.str() << R"("})";
    }
    REQUIRE(run_cli({"rank", "--config", cfg.string().c_str()}) == 0);
    auto files = dir.files();
    REQUIRE(files.size() == 2); // the config file and the table
    const std::string first_table = files[0].filename() == "run.json" ? files[1].string()
                                                                      : files[0].string();
    CHECK(first_table.find("binary-6") != std::string::npos);

    // A flag beats the file: same config, space overridden.
    REQUIRE(run_cli({"rank", "--config", cfg.string().c_str(), "--space", "binary:4"}) == 0);
    bool saw_binary4 = false;
    for (const auto& f : dir.files())
        saw_binary4 = saw_binary4 || f.string().find("binary-4") != std::string::npos;
    CHECK(saw_binary4);
}

TEST_CASE("json reports and plotdata round trip") {
    TempDir dir;
    REQUIRE(run_cli({"profile", "--space", "binary:12", "--objs", "S1", "--bins", "16", "--out",
                     dir.str().c_str()}) == 0);
    auto files = dir.files();
    REQUIRE(files.size() == 1);
    const std::string report = files.front().string();
    CHECK(report.ends_with(".json"));

    {
        std::ifstream in(report);
        nlohmann::json j;
        in >> j;
        CHECK(j.at("experiment_id") == "E1");
        CHECK(j.at("config").at("space") == "binary:12");
        CHECK(j.at("config").at("command") == "profile");
        CHECK_FALSE(j.at("config").contains("out"));
        CHECK_FALSE(j.at("config").contains("threads"));
    }

    REQUIRE(run_cli({"plotdata", "--report", report.c_str(), "--out", dir.str().c_str()}) == 0);
    files = dir.files();
    REQUIRE(files.size() == 2);
    const std::string csv = files.front().string().ends_with(".csv") ? files.front().string()
                                                                     : files.back().string();
    std::ifstream in(csv, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    const auto lines = lines_of(buf.str());
    REQUIRE(lines.size() == 2 + 16); // echo + header + one row per bin
    CHECK(lines[1] == "bin_quantile,mean_normalized");

    CHECK(run_cli({"plotdata", "--report", (dir.str() + "/absent.json").c_str(), "--out",
                   dir.str().c_str()}) == 4);
}

TEST_CASE("coincide plotdata emits one row per pair") {
    TempDir dir;
    REQUIRE(run_cli({"coincide", "--space", "binary:8", "--out", dir.str().c_str()}) == 0);
    const auto report = dir.files().front().string();
    REQUIRE(run_cli({"plotdata", "--report", report.c_str(), "--out", dir.str().c_str()}) == 0);
    for (const auto& f : dir.files()) {
        if (!f.string().ends_with(".csv")) continue;
        std::ifstream in(f, std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        const auto lines = lines_of(buf.str());
        REQUIRE(lines.size() == 2 + 15); // 6 objectives -> 15 pairs
        CHECK(lines[1] == "pair,coincide");
        CHECK(lines[2].substr(0, 6) == "S1~S2,");
    }

    // A report with no pairs still plots: header only, success.
    nlohmann::json j;
    {
        std::ifstream in(report);
        in >> j;
    }
    j["observed"]["pairs"] = nlohmann::json::array();
    j["observed"]["pair_count"] = 0;
    j["observed"]["coincident_pairs"] = 0;
    const fs::path empty = dir.path / "empty_pairs.json";
    std::ofstream(empty) << j.dump(2);
    REQUIRE(run_cli({"plotdata", "--report", empty.string().c_str(), "--out",
                     dir.str().c_str()}) == 0);
    std::ifstream in(dir.path / "empty_pairs.csv", std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    const auto lines = lines_of(buf.str());
    REQUIRE(lines.size() == 2);
    CHECK(lines[1] == "pair,coincide");

    // A coincidence run needs a pair to compare.
    CHECK(run_cli({"coincide", "--space", "binary:8", "--objs", "S1", "--out",
                   dir.str().c_str()}) == 2);
}

TEST_CASE("spaces subcommand needs no output directory") {
    CHECK(run_cli({"spaces", "--space", "binary:12"}) == 0);
    CHECK(run_cli({"spaces", "--space", "saw2d:5"}) == 0);
    CHECK(run_cli({"spaces", "--space", "bogus:1"}) == 2);
}
