#include <gtest/gtest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include "swcode/bits.hpp"
#include "swcode/prg.hpp"

namespace {

namespace fs = std::filesystem;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("swcode_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  int run(const std::string& args) const {
    const std::string cmd = std::string(SWCODE_CLI_PATH) + " " + args + " >" + path("stdout.txt") + " 2>" +
                            path("stderr.txt");
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string read(const std::string& name) const {
    std::ifstream in(path(name), std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  }

  void write(const std::string& name, const std::string& text) const {
    std::ofstream out(path(name), std::ios::binary);
    out << text;
  }

  void write_pair(std::size_t n, std::size_t flips, std::uint64_t seed) const {
    swc::PrgStream rng(swc::derive_seed(seed, 0, swc::Role::Workload));
    swc::BitString x(n);
    for (std::size_t i = 0; i < n; ++i) x.set(i, rng.next_bit());
    swc::BitString y = x;
    for (std::size_t i = 0; i < flips; ++i) y.flip(static_cast<std::size_t>(rng.uniform(n)));
    write("x.hex", x.to_hex() + "\n");
    write("y.hex", y.to_hex() + "\n");
  }

  fs::path dir_;
};

TEST_F(Cli, RoundTripModel1WithSideChannelSeeds) {
  write_pair(1000, 8, 1);
  ASSERT_EQ(run("encode-alice --input " + path("x.hex") + " --output " + path("a.msg") + " --seeds-out " +
                path("a.seeds")),
            0)
      << read("stderr.txt");
  ASSERT_EQ(run("encode-bob --input " + path("y.hex") + " --output " + path("b.msg") + " --seeds-out " +
                path("b.seeds")),
            0);
  ASSERT_EQ(run("decode --alice " + path("a.msg") + " --bob " + path("b.msg") + " --seeds " + path("a.seeds") +
                " --seeds " + path("b.seeds") + " --out-x " + path("x.out") + " --out-y " + path("y.out")),
            0)
      << read("stderr.txt");
  EXPECT_EQ(read("x.out"), read("x.hex"));
  EXPECT_EQ(read("y.out"), read("y.hex"));
}

TEST_F(Cli, RoundTripModel3InBand) {
  write_pair(777, 5, 2);
  ASSERT_EQ(run("encode-alice --mode model3 --input " + path("x.hex") + " --output " + path("a.msg")), 0);
  ASSERT_EQ(run("encode-bob --mode model3 --input " + path("y.hex") + " --output " + path("b.msg")), 0);
  ASSERT_EQ(run("decode --alice " + path("a.msg") + " --bob " + path("b.msg") + " --out-x " + path("x.out") +
                " --out-y " + path("y.out")),
            0)
      << read("stderr.txt");
  EXPECT_EQ(read("x.out"), read("x.hex"));
  EXPECT_EQ(read("y.out"), read("y.hex"));
}

TEST_F(Cli, BadMagicIsFormatError) {
  write_pair(500, 0, 3);
  ASSERT_EQ(run("encode-alice --mode model3 --input " + path("x.hex") + " --output " + path("a.msg")), 0);
  ASSERT_EQ(run("encode-bob --mode model3 --input " + path("y.hex") + " --output " + path("b.msg")), 0);
  std::string bytes = read("a.msg");
  bytes[0] = 'Z';
  write("a.msg", bytes);
  EXPECT_EQ(run("decode --alice " + path("a.msg") + " --bob " + path("b.msg") + " --out-x " + path("x.out") +
                " --out-y " + path("y.out")),
            2);
}

TEST_F(Cli, Model1DecodeWithoutSeedsIsUsageError) {
  write_pair(500, 0, 4);
  ASSERT_EQ(run("encode-alice --input " + path("x.hex") + " --output " + path("a.msg") + " --seeds-out " +
                path("a.seeds")),
            0);
  ASSERT_EQ(run("encode-bob --input " + path("y.hex") + " --output " + path("b.msg") + " --seeds-out " +
                path("b.seeds")),
            0);
  EXPECT_EQ(run("decode --alice " + path("a.msg") + " --bob " + path("b.msg") + " --out-x " + path("x.out") +
                " --out-y " + path("y.out")),
            1);
  EXPECT_EQ(run("encode-alice --input " + path("x.hex") + " --output " + path("a.msg")), 1);
}

TEST_F(Cli, FarPairIsDecodeFailure) {
  write_pair(1000, 0, 5);
  const std::string x = read("x.hex");
  write_pair(1000, 0, 6);
  write("x.hex", x);
  ASSERT_EQ(run("encode-alice --mode model3 --input " + path("x.hex") + " --output " + path("a.msg")), 0);
  ASSERT_EQ(run("encode-bob --mode model3 --input " + path("y.hex") + " --output " + path("b.msg")), 0);
  EXPECT_EQ(run("decode --alice " + path("a.msg") + " --bob " + path("b.msg") + " --out-x " + path("x.out") +
                " --out-y " + path("y.out")),
            3);
}

TEST_F(Cli, MissingInputIsIoError) {
  EXPECT_EQ(run("encode-alice --mode model3 --input " + path("nope.hex") + " --output " + path("a.msg")), 4);
}

TEST_F(Cli, DetschemeSelfTest) {
  for (const char* lambda : {"0", "0.5", "1"}) {
    ASSERT_EQ(run(std::string("detscheme self-test --code 'hamming(3)' --lambda ") + lambda), 0);
    EXPECT_EQ(read("stdout.txt"), "1024/1024 pairs OK\n");
  }
}

TEST_F(Cli, DetschemeEncodeDecode) {
  ASSERT_EQ(run("detscheme build-code --code 'bch(15,2)' --out " + path("code.txt")), 0);
  EXPECT_NE(read("stderr.txt").find("checks=8"), std::string::npos);
  write("x.bits", "101100111000101\n");
  write("y.bits", "101100111010100\n");
  for (const char* party : {"alice", "bob"}) {
    const std::string in = party[0] == 'a' ? "x.bits" : "y.bits";
    ASSERT_EQ(run(std::string("detscheme encode --code-file ") + path("code.txt") + " --format bits --party " +
                  party + " --input " + path(in) + " --output " + path(std::string(party) + ".det")),
              0)
        << read("stderr.txt");
  }
  ASSERT_EQ(run("detscheme decode --code-file " + path("code.txt") + " --format bits --alice " + path("alice.det") +
                " --bob " + path("bob.det") + " --out-x " + path("x.out") + " --out-y " + path("y.out")),
            0);
  EXPECT_EQ(read("x.out"), read("x.bits"));
  EXPECT_EQ(read("y.out"), read("y.bits"));

  write("z.bits", "1011001\n");
  ASSERT_EQ(run("detscheme encode --lambda 0 --format bits --input " + path("z.bits") + " --output " +
                path("z.det")),
            0);
  EXPECT_NE(read("stderr.txt").find("3 bits"), std::string::npos);
}

TEST_F(Cli, Region) {
  ASSERT_EQ(run("region --alpha 0.4 --grid 0.5"), 0);
  const std::string csv = read("stdout.txt");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 10);
  EXPECT_EQ(csv.rfind("rho_a,rho_b,labels\n", 0), 0u);
  ASSERT_EQ(run("region --alpha 0.1 --out " + path("r.csv")), 0);
  const std::string fine = read("r.csv");
  EXPECT_EQ(std::count(fine.begin(), fine.end(), '\n'), 121 * 121 + 1);
  EXPECT_EQ(run("region --alpha 0.5"), 1);
  EXPECT_EQ(run("region --alpha 0.7"), 1);
}

TEST_F(Cli, SimulateIsDeterministicAndHonoursConfig) {
  ASSERT_EQ(run("simulate --n 300 --trials 4 --jsonl " + path("a.jsonl") + " --summary " + path("a.csv")), 0);
  ASSERT_EQ(run("simulate --n 300 --trials 4 --jsonl " + path("b.jsonl") + " --summary " + path("b.csv")), 0);
  EXPECT_EQ(read("a.jsonl"), read("b.jsonl"));
  EXPECT_EQ(read("a.csv"), read("b.csv"));
  const std::string jsonl = read("a.jsonl");
  EXPECT_EQ(std::count(jsonl.begin(), jsonl.end(), '\n'), 4);

  write("cfg.ini", "[simulate]\nn=300\ntrials=3\n");
  ASSERT_EQ(run("--config " + path("cfg.ini") + " simulate --jsonl " + path("c.jsonl")), 0) << read("stderr.txt");
  const std::string c = read("c.jsonl");
  EXPECT_EQ(std::count(c.begin(), c.end(), '\n'), 3);
  ASSERT_EQ(run("--config " + path("cfg.ini") + " simulate --trials 2 --jsonl " + path("d.jsonl")), 0);
  const std::string d = read("d.jsonl");
  EXPECT_EQ(std::count(d.begin(), d.end(), '\n'), 2);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run(""), 1);
  EXPECT_EQ(run("simulate --trials 0"), 1);
  EXPECT_EQ(run("frobnicate"), 1);
}

}  // namespace
