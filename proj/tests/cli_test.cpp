#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace jetdiff::cli {
namespace {

Outcome invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "jetdiff");
    return main_entry(args);
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::filesystem::path golden_dir() {
    const char* dir = std::getenv("JETDIFF_GOLDEN_DIR");
    return dir ? std::filesystem::path(dir) : std::filesystem::path("tests/golden");
}

const std::vector<std::string> kWitness = {"transition", "--map", "w1=z1; w2=z2+z1^2", "--rank", "2", "--order", "2",
                                           "--weight", "3", "--point", "0,0"};

TEST(Cli, BasisJson) {
    const auto o = invoke({"basis", "--rank", "2", "--order", "2", "--weight", "3", "--json"});
    ASSERT_EQ(o.code, ExitCode::Ok) << o.err;
    const auto j = Json::parse(o.out);
    EXPECT_EQ(j["dimension"], 5);
    EXPECT_EQ(j["basis"].size(), 5u);
    EXPECT_EQ(j["basis"][4], "f1'*f2'' - f2'*f1''");
    EXPECT_EQ(j["decomposition"][0]["highest_weight"], Json::array({3, 0}));
    EXPECT_EQ(j["decomposition"][1]["highest_weight"], Json::array({1, 1}));
}

TEST(Cli, TransitionWitness) {
    const auto o = invoke(kWitness);
    ASSERT_EQ(o.code, ExitCode::Ok) << o.err;
    EXPECT_NE(o.out.find("non-split"), std::string::npos);
    EXPECT_NE(o.out.find("value 2"), std::string::npos);

    auto args = kWitness;
    args.push_back("--json");
    const auto j = Json::parse(invoke(args).out);
    EXPECT_EQ(j["verdict"], "non-split");
    EXPECT_EQ(j["matrix"][0][4], "2");
    EXPECT_EQ(j["splitting"]["witnesses"][0]["value"], "2");
}

TEST(Cli, ThetaTable) {
    const auto o = invoke({"theta", "--d", "6:20", "--m", "3", "--json"});
    ASSERT_EQ(o.code, ExitCode::Ok) << o.err;
    const auto j = Json::parse(o.out);
    ASSERT_EQ(j.size(), 15u);
    for (const auto& row : j) EXPECT_TRUE(row["contradiction"].get<bool>());
    EXPECT_EQ(j[0]["d"], 6);
    EXPECT_EQ(j[0]["lower_bound"], "1/4");
}

struct ExitCase {
    std::vector<std::string> args;
    ExitCode code;
};

TEST(Cli, ExitCodeContract) {
    const std::vector<ExitCase> corpus = {
        {{"basis", "--rank", "2", "--order", "3", "--weight", "4"}, ExitCode::Ok},
        {{"dim", "--weight", "6"}, ExitCode::Ok},
        {{"decompose", "--weight", "6"}, ExitCode::Ok},
        {{"verify", "--rank", "2", "--order", "2", "--poly", "f1'*f1''"}, ExitCode::Ok},
        {{"associated", "--matrix", "2,0;0,3"}, ExitCode::Ok},
        {{"v1", "--map", "w1=z1; w2=z2+z1^2", "--point", "0,0"}, ExitCode::Ok},
        {{"--help"}, ExitCode::Ok},
        {{"transition", "--map", "w1=z1^2; w2=z2", "--point", "0,0"}, ExitCode::MathError},
        {{"v1", "--map", "w1=z2; w2=z1", "--point", "0,0"}, ExitCode::MathError},
        {{"associated", "--matrix", "1,0;0,0"}, ExitCode::MathError},
        {{}, ExitCode::UsageError},
        {{"bogus"}, ExitCode::UsageError},
        {{"basis", "--rank", "0"}, ExitCode::UsageError},
        {{"basis", "--rank", "2", "--order", "9"}, ExitCode::UsageError},
        {{"basis", "--weight", "x"}, ExitCode::UsageError},
        {{"transition", "--map", "w1=z1", "--point", "0,0"}, ExitCode::UsageError},
        {{"transition", "--map", "w1=z1; w2=z2", "--point", "0.5,0"}, ExitCode::UsageError},
        {{"verify", "--poly", "f1' +"}, ExitCode::UsageError},
        {{"verify", "--order", "2", "--poly", "f1'''"}, ExitCode::UsageError},
        {{"theta", "--d", "4:8"}, ExitCode::UsageError},
        {{"theta", "--d", "6:8", "--m", "7"}, ExitCode::UsageError},
        {{"decompose", "--rank", "3", "--order", "1", "--weight", "2"}, ExitCode::UsageError},
    };
    for (const auto& c : corpus) {
        const auto o = invoke(c.args);
        std::string joined;
        for (const auto& a : c.args) joined += a + " ";
        EXPECT_EQ(o.code, c.code) << joined << "\n" << o.err;
        if (o.code != ExitCode::Ok) {
            EXPECT_FALSE(o.err.empty()) << joined;
        }
    }
}

TEST(Cli, MatchesGoldenFiles) {
    const std::vector<std::pair<std::vector<std::string>, std::string>> cases = {
        {{"basis", "--rank", "2", "--order", "2", "--weight", "3", "--json"}, "basis_r2_k2_m3.json"},
        {{"basis", "--rank", "2", "--order", "2", "--weight", "6", "--json"}, "basis_r2_k2_m6.json"},
        {{"basis", "--rank", "2", "--order", "3", "--weight", "5", "--json"}, "basis_r2_k3_m5.json"},
        {{"theta", "--d", "6:20", "--m", "3", "--json"}, "theta_m3_d6-20.json"},
    };
    for (const auto& [args, file] : cases) {
        const auto path = golden_dir() / file;
        ASSERT_TRUE(std::filesystem::exists(path)) << path;
        EXPECT_EQ(invoke(args).out, read_file(path)) << file;
    }
    // Map-dependent outputs are named by a hash of the map text.
    auto transition = kWitness;
    transition.push_back("--json");
    const std::vector<std::pair<std::vector<std::string>, std::string>> hashed = {
        {transition, "transition_r2_k2_m3_"},
        {{"v1", "--map", "w1=z1; w2=z2+z1^2", "--point", "0,0", "--slope", "0", "--json"}, "v1_"},
    };
    for (const auto& [args, prefix] : hashed) {
        int found = 0;
        for (const auto& entry : std::filesystem::directory_iterator(golden_dir())) {
            if (entry.path().filename().string().starts_with(prefix)) {
                EXPECT_EQ(invoke(args).out, read_file(entry.path())) << entry.path();
                ++found;
            }
        }
        EXPECT_EQ(found, 1) << prefix;
    }
}

TEST(Cli, GoldenFlagWritesStdoutBytes) {
    const auto dir = std::filesystem::temp_directory_path() / "jetdiff_cli_golden";
    std::filesystem::remove_all(dir);
    const auto o = invoke({"basis", "--rank", "2", "--order", "2", "--weight", "4", "--json", "--golden", dir.string()});
    ASSERT_EQ(o.code, ExitCode::Ok) << o.err;
    EXPECT_EQ(read_file(dir / "basis_r2_k2_m4.json"), o.out);
    std::filesystem::remove_all(dir);
}

TEST(Cli, OutputIsByteStableAcrossRunsAndThreads) {
    std::vector<std::vector<std::string>> commands = {
        {"basis", "--rank", "2", "--order", "3", "--weight", "6", "--json"},
        {"transition", "--map", "w1=z1+z2^2; w2=z2+z1^2", "--rank", "2", "--order", "3", "--weight", "4", "--point", "1,-1", "--json"},
        {"theta", "--d", "6:40", "--m", "4", "--json"},
    };
    commands.push_back(kWitness);
    for (const auto& args : commands) {
        setenv("JETDIFF_THREADS", "1", 1);
        const auto serial = invoke(args);
        const auto again = invoke(args);
        setenv("JETDIFF_THREADS", "4", 1);
        const auto parallel = invoke(args);
        unsetenv("JETDIFF_THREADS");
        ASSERT_EQ(serial.code, ExitCode::Ok) << serial.err;
        EXPECT_EQ(serial.out, again.out);
        EXPECT_EQ(serial.out, parallel.out);
    }
}

}  // namespace
}  // namespace jetdiff::cli
