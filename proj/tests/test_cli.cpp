#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
    const std::string cmd = std::string(SPNAV_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

class Cli : public ::testing::Test {
protected:
    static void SetUpTestSuite() {
        dir_ = fs::temp_directory_path() / ("spnav_cli_" + std::to_string(::getpid()));
        fs::create_directories(dir_);
        ASSERT_EQ(run("generate --scenario " + std::string(SPNAV_DATA_DIR) + "/small_house.json --out " + dir_.string()), 0);
        ASSERT_EQ(run("fit --train " + (dir_ / "training.csv").string() + " --out " + dir_.string()), 0);
    }
    static void TearDownTestSuite() { fs::remove_all(dir_); }

    static std::string plan(const std::string& extra) {
        return "plan --model " + (dir_ / "model.json").string() + " --map-meta " + (dir_ / "map.yaml").string() +
               " --out " + dir_.string() + " --horizon 40 " + extra;
    }

    static fs::path dir_;
};

fs::path Cli::dir_;

}  // namespace

TEST_F(Cli, PlanSucceeds) {
    EXPECT_EQ(run(plan("--say go to the bedroom --start 35 22")), 0);
    EXPECT_TRUE(fs::exists(dir_ / "trajectory.json"));
    EXPECT_EQ(run(plan("--say bedroom --start 35 22 --method astar")), 0);
}

TEST_F(Cli, UnknownWordsAreAnInstructionError) { EXPECT_EQ(run(plan("--say zebra giraffe --start 35 22")), 3); }

TEST_F(Cli, StartInWallIsAPlanningError) { EXPECT_EQ(run(plan("--say bedroom --start 0 0")), 4); }

TEST_F(Cli, BadInputIsAValidationError) {
    const fs::path bad = dir_ / "bad.csv";
    std::ofstream(bad) << "x,words\n1.0,kitchen\n";
    EXPECT_EQ(run("fit --train " + bad.string() + " --out " + dir_.string()), 2);
    EXPECT_EQ(run("plan --no-such-flag"), 2);
    EXPECT_EQ(run(plan("--say bedroom --start 35 22 --method teleport")), 2);
    EXPECT_EQ(run("fit --train " + (dir_ / "missing.csv").string()), 2);
}

TEST_F(Cli, OracleCommand) {
    EXPECT_EQ(run("oracle --instances 10 --max-side 4 --max-horizon 3"), 0);
    // 5^12 exceeds the enumeration budget
    EXPECT_EQ(run("oracle --instances 1 --max-horizon 12"), 2);
}
