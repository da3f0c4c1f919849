#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#include "oracles.hpp"
#include "qrf/io.hpp"

using namespace qrf;
namespace fs = std::filesystem;

namespace {

struct Invocation {
  int code;
  std::string out;
};

// stderr is folded into the captured output.
Invocation cli(const std::string& args) {
  const std::string cmd = std::string(QRF_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("qrf_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const Json& j) {
    const auto path = (dir_ / name).string();
    std::ofstream(path) << j.dump();
    return path;
  }
  Json read(const std::string& name) { return read_json_file((dir_ / name).string()); }
  std::string path(const std::string& name) { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, VerifyTrivialGroup) {
  const Invocation r = cli("verify --group z1 --trials 2 --threads 1 --out " + path("r.json"));
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find(" 0 failed"), std::string::npos) << r.out;
  EXPECT_EQ(read("r.json")["summary"]["failed"], 0);
}

TEST_F(Cli, VerifyCsv) {
  const Invocation r = cli("verify --group builtin:z2 --suite covariance --format csv --threads 1");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("name,anchor,pass"), std::string::npos);
}

TEST_F(Cli, BadGroupFileExitsTwo) {
  const auto bad = write("bad.json", Json::parse(R"({"cayley": [[0,1],[1,1]]})"));
  const Invocation r = cli("verify --group " + bad);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("cayley row 1 not a permutation"), std::string::npos) << r.out;
}

TEST_F(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(cli("").code, 2);
  EXPECT_EQ(cli("verify").code, 2);
  EXPECT_EQ(cli("verify --group z2 --suite nonsense").code, 2);
  EXPECT_EQ(cli("twirl --input " + path("missing.json")).code, 2);
}

TEST_F(Cli, FrameChangeKet) {
  const FiniteGroup g = cyclic_group(3);
  Json in;
  in["scenario"] = Json::parse(R"({"group": "z3", "frames": [{"rep": "left_right"}, {"rep": "left_right"}]})");
  Operator ket = Operator::Zero(3, 3);
  ket(1, 1) = 1.0;
  in["state"] = operator_to_json(ket);
  const Invocation r = cli("frame-change --from 1 --to 2 --input " + write("in.json", in) + " --out " + path("o.json"));
  ASSERT_EQ(r.code, 0) << r.out;
  const Operator got = operator_from_json(read("o.json")["result"]);
  Operator expected = Operator::Zero(3, 3);
  expected(g.inverse(1), g.inverse(1)) = 1.0;
  EXPECT_LE(max_abs(got - expected), 1e-15);
  EXPECT_EQ(cli("frame-change --from 1 --to 1 --input " + path("in.json")).code, 2);
  EXPECT_EQ(cli("frame-change --from 1 --to 3 --input " + path("in.json")).code, 2);
}

TEST_F(Cli, TwirlKeepsInvariantOperator) {
  Rng rng(91);
  const FiniteGroup g = symmetric_group(3);
  const UnitaryRep rep = rep_of_dim(g, 3, 2);
  const Operator a = g_twirl(rep, random_hermitian(3, rng));
  Json in;
  in["group"] = "s3";
  in["rep"] = Json::parse(R"({"kind": "random", "dim": 3, "seed": 2})");
  in["operator"] = operator_to_json(a);
  const Invocation r = cli("twirl --input " + write("t.json", in) + " --out " + path("o.json"));
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_LE(max_abs(operator_from_json(read("o.json")["result"]) - a), 1e-12);
}

TEST_F(Cli, YenOfIdentity) {
  Json in;
  in["group"] = "d4";
  in["frame"] = Json::parse(R"({"rep": "left_regular"})");
  in["system"] = Json::parse(R"({"kind": "random", "dim": 2, "seed": 1})");
  in["operator"] = operator_to_json(Operator::Identity(2, 2));
  const Invocation r = cli("yen --input " + write("y.json", in) + " --out " + path("o.json"));
  ASSERT_EQ(r.code, 0) << r.out;
  const Json out = read("o.json");
  EXPECT_LE(max_abs(operator_from_json(out["result"]) - Operator::Identity(16, 16)), 1e-14);
  EXPECT_GT(out["context"]["rank"].get<int>(), 0);
}
