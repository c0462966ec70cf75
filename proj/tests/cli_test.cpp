#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(NARROW_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int raw = pclose(p);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

class Cli : public ::testing::Test {
protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("narrow_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
    std::ofstream(dir_ / "small.tuples") << "# small tuples\n0 2 6\n0 4 6\n0, 2, 6, 8, 12\n";
    std::ofstream(dir_ / "bad.tuples") << "0 2\n0 3 1\n";
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const char* name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, Mertens) {
  const auto r = run("mertens --mu 460");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("1.465E112"), std::string::npos) << r.out;
}

TEST_F(Cli, UnknownFlagIsUsageError) {
  EXPECT_EQ(run("mertens --bogus").status, 2);
  EXPECT_EQ(run("").status, 2);
  EXPECT_EQ(run("score").status, 2);
}

TEST_F(Cli, ComputationErrorExitsOne) {
  EXPECT_EQ(run("score " + file("bad.tuples")).status, 1);
  EXPECT_EQ(run("score /nonexistent/x.tuples").status, 1);
  EXPECT_EQ(run("mertens --mu 0.5").status, 1);
  EXPECT_EQ(run("nu " + file("small.tuples") + " --index 9").status, 1);
}

TEST_F(Cli, ScoreCsv) {
  const auto r = run("--format csv score " + file("small.tuples") + " --legacy-score");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out,
            "index,length,span,score,counterexample,legacy_score\n"
            "0,2,6,-1,no,-1\n"
            "1,2,6,-1,no,-1\n"
            "2,4,12,-1,no,-1\n");
}

TEST_F(Cli, DataDirResolvesRelativeNames) {
  const auto r = run("--format csv --data-dir " + dir_.string() + " histogram small.tuples --index 2");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "gap,count\n2,2\n4,2\n");
  const std::string env = "CONSTELLATION_DATA_DIR=" + dir_.string() + " ";
  const std::string cmd = env + NARROW_CLI_PATH + " --format csv histogram small.tuples --index 0";
  FILE* p = popen(cmd.c_str(), "r");
  ASSERT_NE(p, nullptr);
  char buf[256] = {};
  const std::size_t n = fread(buf, 1, sizeof buf - 1, p);
  EXPECT_EQ(pclose(p), 0);
  EXPECT_EQ(std::string(buf, n), "gap,count\n2,1\n4,1\n");
}

TEST_F(Cli, NuAndBfs) {
  const auto nu = run("--format csv nu " + file("small.tuples") + " --index 0 --max-prime 7");
  EXPECT_EQ(nu.status, 0);
  EXPECT_EQ(nu.out, "q,nu,admissible\n2,1,1\n3,2,1\n5,3,2\n7,3,4\n");
  const auto bfs = run("--format csv bfs " + file("small.tuples") + " --index 0 --from 2 --to 7");
  EXPECT_EQ(bfs.status, 0);
  EXPECT_EQ(bfs.out,
            "stage,nu,admissible,count,materialized,truncated\n"
            "2,1,1,1,1,no\n3,2,1,1,1,no\n5,3,2,2,2,no\n7,3,4,8,8,no\n");
}

TEST_F(Cli, BfsCheckpointResume) {
  const std::string ck = file("f.ckpt");
  EXPECT_EQ(run("bfs " + file("small.tuples") + " --index 2 --from 2 --to 11 --checkpoint " + ck).status, 0);
  const auto resumed = run("--format csv bfs " + file("small.tuples") + " --index 2 --from 2 --to 17 --checkpoint " +
                           ck + " --resume");
  EXPECT_EQ(resumed.status, 0);
  EXPECT_EQ(resumed.out.substr(0, resumed.out.find('\n')), "stage,nu,admissible,count,materialized,truncated");
  EXPECT_NE(resumed.out.find("\n13,"), std::string::npos);
  EXPECT_NE(resumed.out.find("\n17,"), std::string::npos);
  EXPECT_EQ(resumed.out.find("\n11,"), std::string::npos);
  // A checkpoint from another tuple is refused.
  EXPECT_EQ(run("bfs " + file("small.tuples") + " --index 0 --from 2 --to 17 --checkpoint " + ck + " --resume").status,
            1);
}

TEST_F(Cli, MinGammaWinfDeltaPhiDfs) {
  const auto mg = run("--format csv min-gamma " + file("small.tuples") + " --to 7 --all");
  EXPECT_EQ(mg.status, 0);
  EXPECT_NE(mg.out.find("0,1*3#,"), std::string::npos) << mg.out;

  const auto w = run("--format csv winf " + file("small.tuples"));
  EXPECT_EQ(w.status, 1);  // mixed lengths are not comparable

  const std::string csv = file("d.csv");
  EXPECT_EQ(run("deltaphi " + file("small.tuples") + " --index 0 --mu 3 --out " + csv).status, 0);
  std::ifstream in(csv);
  const std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_EQ(body, "x,delta_phi\n0,0\n2,-0.6666666667\n2,0.3333333333\n6,-1\n6,0\n");

  const auto d = run("--format csv dfs " + file("small.tuples") + " --index 0 --from 7 --depth 2");
  EXPECT_EQ(d.status, 0);
  EXPECT_NE(d.out.find("\n11,0,7,certified\n"), std::string::npos) << d.out;
}
