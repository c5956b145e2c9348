#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ssdlab_cli/cli.hpp"

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "ssdlab");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = ssdlab::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("ssdlab_cli_" + name);
  std::filesystem::remove_all(p);
  return p;
}

}  // namespace

TEST(Cli, TheoryPrintsCrossing) {
  const auto r = run({"theory", "--c", "1", "--d", "2", "--N", "10", "--alpha", "5"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("aia,2,1,1,1.8,2,true"), std::string::npos) << r.out;
}

TEST(Cli, UnknownSubcommandIsUsageError) {
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"theory", "--c", "1"}).code, 2);
}

TEST(Cli, HelpExitsCleanly) { EXPECT_EQ(run({"--help"}).code, 0); }

TEST(Cli, MissingConfigIsReported) {
  const auto r = run({"train", "--config", "/nonexistent/exp.cfg"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("config file not found"), std::string::npos) << r.err;
}

TEST(Cli, MatrixSchellingToStdout) {
  const auto r = run({"schelling", "--matrix", "stag_hunt"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("stag_hunt,true,true,true,true,false"), std::string::npos) << r.out;
}

TEST(Cli, TrainThenReplay) {
  const auto dir = scratch("train");
  std::filesystem::create_directories(dir);
  const auto cfg = dir / "exp.cfg";
  std::ofstream(cfg) << "env = harvest\nmap = harvest_mini\nepisodes = 2\nrecord_every = 1\n"
                        "learner.workers = 1\nharvest.episode_length = 30\n";
  const auto out = dir / "out";
  auto r = run({"train", "--config", cfg.string(), "--out", out.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(std::filesystem::exists(out / "metrics.csv"));
  EXPECT_TRUE(std::filesystem::exists(out / "checkpoints" / "agent_0.ssdp"));
  r = run({"replay", (out / "replays").string()});
  EXPECT_EQ(r.code, 0) << r.out << r.err;

  r = run({"evaluate", "--config", cfg.string(), "--checkpoints", (out / "checkpoints").string(),
           "--episodes", "1", "--out", (dir / "eval").string()});
  EXPECT_EQ(r.code, 0) << r.err;

  std::ofstream(out / "replays" / "episode_0.ssdr", std::ios::binary) << "garbage";
  EXPECT_EQ(run({"replay", (out / "replays").string()}).code, 1);
  std::filesystem::remove_all(dir);
}
