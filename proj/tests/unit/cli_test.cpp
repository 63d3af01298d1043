#include "cli.hpp"

#include "qdskit/qds/wps_systems.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace qdskit;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out, err;
};

Outcome run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// Compares against tests/golden/<name>; QDSKIT_UPDATE_GOLDEN=1 rewrites the file.
void expect_golden(const std::string& name, const std::vector<std::string>& args) {
    const Outcome o = run(args);
    ASSERT_EQ(o.code, cli::kExitOk) << o.err;
    const fs::path path = fs::path(QDSKIT_GOLDEN_DIR) / name;
    if (const char* u = std::getenv("QDSKIT_UPDATE_GOLDEN"); u && std::string(u) == "1") {
        std::ofstream(path, std::ios::binary) << o.out;
        return;
    }
    ASSERT_TRUE(fs::exists(path)) << path;
    EXPECT_EQ(o.out, read_file(path)) << name;
}

fs::path temp_path(const std::string& name) { return fs::temp_directory_path() / ("qdskit_cli_test_" + name); }

}  // namespace

TEST(CliGolden, Spectrum) {
    expect_golden("spectrum_1_2.json", {"spectrum", "--weights", "1,2"});
    expect_golden("spectrum_1_2_5.json", {"spectrum", "--weights", "1,2,5"});
}

TEST(CliGolden, Correlators) { expect_golden("correlators_1_2.json", {"wps", "correlators", "--weights", "1,2", "--max-degree", "4"}); }

TEST(CliGolden, System) { expect_golden("system_1_2_flat.json", {"wps", "system", "--weights", "1,2", "--basis", "rescaled-flat"}); }

TEST(CliGolden, F2Matrices) { expect_golden("f2_can.json", {"f2", "matrices", "--basis", "can"}); }

TEST(CliGolden, Rescale) { expect_golden("rescale_2_5.json", {"rescale", "--weights", "2,5"}); }

TEST(Cli, RescaleAddsTheLeadingWeight) {
    EXPECT_EQ(run({"rescale", "--weights", "2,5"}).out, run({"rescale", "--weights", "1,2,5"}).out);
}

TEST(Cli, ChecksExitZero) {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"f2", "check"}, {"wps", "gamma", "--weights", "1,2,3"}, {"wps", "gamma", "--weights", "1,1,1"},
             {"wps", "jfunction", "--weights", "1,2", "--x-order", "3"}}) {
        const Outcome o = run(args);
        EXPECT_EQ(o.code, cli::kExitOk) << args[0] << " " << args[1] << ": " << o.err;
        EXPECT_FALSE(o.out.empty());
    }
}

TEST(Cli, EmptyCorrelatorTable) {
    const Outcome o = run({"wps", "correlators", "--weights", "1,2", "--max-degree", "0", "--format", "table"});
    EXPECT_EQ(o.code, cli::kExitOk);
    EXPECT_EQ(o.out, "d\tr\ta\tj\tvalue\n");
}

TEST(Cli, TableFormatListsVerdicts) {
    const Outcome o = run({"f2", "check", "--format", "table"});
    EXPECT_EQ(o.code, cli::kExitOk);
    EXPECT_EQ(o.out.rfind("pass  ", 0), 0u);
    EXPECT_EQ(o.out.find("FAIL"), std::string::npos);
}

TEST(Cli, UsageErrorsExitTwo) {
    for (const auto& args : std::vector<std::vector<std::string>>{{},
                                                                 {"spectrum"},
                                                                 {"spectrum", "--weights", "2,3"},
                                                                 {"spectrum", "--weights", "1,x"},
                                                                 {"spectrum", "--weights", ""},
                                                                 {"f2", "matrices", "--basis", "square"},
                                                                 {"bogus"},
                                                                 {"spectrum", "--weights", "1,2", "--format", "xml"}})
        EXPECT_EQ(run(args).code, cli::kExitUsage) << (args.empty() ? "<none>" : args[0]);
}

TEST(Cli, InvalidToleranceEnvironment) {
    ::setenv("QDSKIT_TOLERANCE", "abc", 1);
    const Outcome o = run({"spectrum", "--weights", "1,2"});
    ::unsetenv("QDSKIT_TOLERANCE");
    EXPECT_EQ(o.code, cli::kExitUsage);
    EXPECT_NE(o.err.find("QDSKIT_TOLERANCE"), std::string::npos);
}

TEST(Cli, OutputFile) {
    const fs::path p = temp_path("spectrum.json");
    const Outcome o = run({"-o", p.string(), "spectrum", "--weights", "1,2"});
    EXPECT_EQ(o.code, cli::kExitOk);
    EXPECT_TRUE(o.out.empty());
    EXPECT_EQ(read_file(p), run({"spectrum", "--weights", "1,2"}).out);
    fs::remove(p);
}

TEST(Cli, QdsCheckOnFiles) {
    auto sys = qds::build_wps_system(wps::build_weight_data({1, 2, 3}), qds::WpsBasis::RescaledFlat);
    const fs::path good = temp_path("good.json"), bad = temp_path("bad.json"), broken = temp_path("broken.json");
    std::ofstream(good) << qds::encode_system(sys).dump(2);
    sys.coord_matrices[0](1, 0) += QPoly::var(sys.tau) * QPoly(Rational(1, 7));
    std::ofstream(bad) << qds::encode_system(sys).dump(2);
    std::ofstream(broken) << "{ not json";
    EXPECT_EQ(run({"qds", "check", good.string()}).code, cli::kExitOk);
    EXPECT_EQ(run({"qds", "check", bad.string()}).code, cli::kExitVerificationFailed);
    EXPECT_EQ(run({"qds", "check", broken.string()}).code, cli::kExitUsage);
    for (const auto& p : {good, bad, broken}) fs::remove(p);
}
