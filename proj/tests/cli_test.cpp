#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "shiftlift/io.hpp"

namespace fs = std::filesystem;
namespace sl = shiftlift;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("shiftlift_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write(const std::string& name, const std::string& text) const {
    sl::write_file(path(name), text);
    return path(name);
  }

  int run(const std::string& args, const std::string& out = "out.txt") const {
    const std::string cmd = std::string(SHIFTLIFT_CLI) + " " + args + " > " + path(out) + " 2> " +
                            path("err.txt");
    const int raw = std::system(cmd.c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  }

  sl::Json output(const std::string& out = "out.txt") const { return sl::read_json_file(path(out)); }

  fs::path dir_;
};

constexpr const char* kK33 =
    R"({"n": 6, "edges": [[1,4],[1,5],[1,6],[2,4],[2,5],[2,6],[3,4],[3,5],[3,6]], "bipartition": null})";

}  // namespace

TEST_F(Cli, VerifyK33Passes) {
  EXPECT_EQ(run("verify " + write("k33.json", kK33)), 0);
  EXPECT_EQ(output()["verdict"], "pass");
}

TEST_F(Cli, VerifyDisconnectedIsInputError) {
  const auto g = write("g.txt", "4 2\n1 2\n3 4\n");
  EXPECT_EQ(run("verify " + g), 2);
}

TEST_F(Cli, CertifyZeroShiftsFails) {
  const auto g = write("k33.json", kK33);
  const auto s = write("s.json", R"({"k": 3, "shifts": [0,0,0,0,0,0,0,0,0]})");
  EXPECT_EQ(run("certify " + g + " " + s), 1);
  EXPECT_EQ(output()["verdict"], "fail");
}

TEST_F(Cli, CertifyPassingShifts) {
  const auto g = write("k33.json", kK33);
  const auto s = write("s.json", R"({"k": 3, "shifts": [0,0,0,0,0,0,0,0,1]})");
  EXPECT_EQ(run("certify " + g + " " + s), 0);
  const auto j = output();
  EXPECT_EQ(j["verdict"], "pass");
  EXPECT_EQ(j["k"], 3);
  EXPECT_EQ(j["epsilon"], 1e-8);
}

TEST_F(Cli, MismatchedShiftsAreInputErrors) {
  const auto g = write("k33.json", kK33);
  const auto s = write("s.json", R"({"k": 3, "shifts": [0,1]})");
  EXPECT_EQ(run("certify " + g + " " + s), 2);
  EXPECT_EQ(run("certify " + g + " " + path("missing.json")), 2);
  EXPECT_EQ(run("certify " + write("bad.json", "{ nope") + " " + s), 2);
}

TEST_F(Cli, UnknownFlagsAreInputErrors) {
  EXPECT_EQ(run("verify --bogus " + write("k33.json", kK33)), 2);
  EXPECT_EQ(run("search " + write("g.json", kK33) + " --strategy sideways"), 2);
}

TEST_F(Cli, OracleOnC4) {
  EXPECT_EQ(run("generate cycle 4", "c4.json"), 0);
  EXPECT_EQ(run("oracle " + path("c4.json") + " --mode k3"), 0);
  EXPECT_EQ(output()["pass"], true);
  const auto b = write("b.json", R"({"k": 2, "shifts": [1,0,0,1]})");
  EXPECT_EQ(run("oracle " + path("c4.json") + " --mode k4 --b " + b), 0);
  EXPECT_EQ(run("oracle " + path("c4.json") + " --mode k4"), 2);
}

TEST_F(Cli, SearchExitCodes) {
  const auto g = write("k33.json", kK33);
  EXPECT_EQ(run("search " + g + " --k 3 --strategy exhaustive"), 0);
  EXPECT_EQ(run("search " + g + " --k 3 --strategy exhaustive --budget 0"), 3);
  const auto k11 = write("k11.json", R"({"n": 2, "edges": [[1,2]], "bipartition": null})");
  EXPECT_EQ(run("search " + k11 + " --k 2 --strategy exhaustive"), 1);
  EXPECT_EQ(run("search " + g + " --k 4 --strategy two-step"), 0);
  EXPECT_EQ(run("search " + g + " --k 3 --strategy two-step"), 2);
}

TEST_F(Cli, InterlaceReport) {
  EXPECT_EQ(run("generate cycle 4", "c4.json"), 0);
  EXPECT_EQ(run("interlace " + path("c4.json") + " --k 3 --prefix 1,0"), 0);
  const auto j = output();
  EXPECT_EQ(j["values"], sl::Json::parse("[0,1,2]"));
  EXPECT_EQ(run("interlace " + path("c4.json") + " --k 3 --prefix 5"), 2);
}

TEST_F(Cli, LiftAndEdgeListFormat) {
  const auto g = write("k33.json", kK33);
  const auto s = write("s.json", R"({"k": 2, "shifts": [0,0,0,0,0,0,0,0,1]})");
  EXPECT_EQ(run("lift " + g + " " + s + " --format edgelist", "lift.txt"), 0);
  const auto h = sl::parse_graph(sl::read_file(path("lift.txt")));
  EXPECT_EQ(h.n(), 12);
  EXPECT_EQ(h.m(), 18);
}

TEST_F(Cli, ConstructWritesRunDirectory) {
  const auto out = path("run");
  EXPECT_EQ(run("construct --d 3 --schedule 3 --out-dir " + out), 0);
  EXPECT_TRUE(fs::exists(fs::path(out) / "chain.json"));
  const auto chain = sl::read_json_file((fs::path(out) / "chain.json").string());
  EXPECT_EQ(chain["complete"], true);
  EXPECT_EQ(chain["stages"][0]["output_vertices"], 18);
  EXPECT_EQ(run("construct --d 3 --schedule 5"), 2);
}
