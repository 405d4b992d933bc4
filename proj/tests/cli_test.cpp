#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "obk/cli.hpp"
#include "obk/interchange.hpp"

namespace {

namespace fs = std::filesystem;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run obk_run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = obk::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return std::string(OBK_FIXTURE_DIR) + "/" + name; }

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("obk-cli-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                        "-" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

TEST_F(CliTest, NewDisk) {
  const auto r = obk_run({"new", "--genus", "0", "--boundary", "1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "openbook-kit 1 open_book\npage 0 1\nbinding B1 []\nend\n");
}

TEST_F(CliTest, NewWithWord) {
  const auto r = obk_run({"new", "--genus", "1", "--boundary", "2", "--word", "+a1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = obk::parse_document(r.out);
  const auto& ob = std::get<obk::OpenBook>(doc.payload);
  EXPECT_EQ(ob.page().genus(), 1);
  EXPECT_EQ(ob.page().boundary_count(), 2);
  ASSERT_EQ(ob.monodromy().size(), 1U);
  EXPECT_EQ(ob.monodromy().twists[0].sign, obk::Sign::positive);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(obk_run({"new", "--genus", "-1", "--boundary", "1"}).code, 2);
  EXPECT_EQ(obk_run({"new", "--genus", "0", "--boundary", "0"}).code, 2);
  EXPECT_EQ(obk_run({"new", "--genus", "x", "--boundary", "1"}).code, 2);
  EXPECT_EQ(obk_run({}).code, 2);
  EXPECT_EQ(obk_run({"frobnicate"}).code, 2);
  EXPECT_EQ(obk_run({"render", path("missing.obk")}).code, 2);
  const auto bad_word = obk_run({"new", "--genus", "1", "--boundary", "1", "--word", "+a1,+z9"});
  EXPECT_EQ(bad_word.code, 2);
  EXPECT_NE(bad_word.err.find("line 1, column 6"), std::string::npos) << bad_word.err;
}

TEST_F(CliTest, HelpAndVersion) {
  EXPECT_EQ(obk_run({"--help"}).code, 0);
  const auto v = obk_run({"--version"});
  EXPECT_EQ(v.code, 0);
  EXPECT_NE(v.out.find("format 1"), std::string::npos);
}

TEST_F(CliTest, PushoffPlanarThreeComponents) {
  const auto r = obk_run({"pushoff", fixture("c1a_three.obk"), "--certificate", path("c.obk"), "--open-book",
                          path("ob.obk")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "case=1a steps=3 order_free=true");
  EXPECT_TRUE(fs::exists(path("c.obk")));
  std::ifstream in(path("ob.obk"));
  std::stringstream buf;
  buf << in.rdbuf();
  const auto ob = std::get<obk::OpenBook>(obk::parse_document(buf.str()).payload);
  EXPECT_EQ(ob.page().boundary_count(), 5);
  EXPECT_EQ(ob.marks().size(), 3U);
}

TEST_F(CliTest, PushoffMixedOrientationReportsAux) {
  const auto r = obk_run({"pushoff", fixture("mixed_orientation.obk"), "--certificate", path("c.obk"),
                          "--open-book", path("ob.obk")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "case=1bii steps=4 order_free=false aux=1");
}

TEST_F(CliTest, PushoffFramingOffsetIsADomainError) {
  const auto r = obk_run({"pushoff", fixture("bad/framing_offset.obk"), "--certificate", path("c.obk"),
                          "--open-book", path("ob.obk")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("framing offset must be zero"), std::string::npos);
  EXPECT_FALSE(fs::exists(path("c.obk")));
}

TEST_F(CliTest, PushoffListsViolations) {
  std::ofstream(path("p.obk")) << "openbook-kit 1 placement\npage 0 1\nbinding B1 []\n"
                                  "component K curve=L kind=link-component corient=+ hom=[] orient=- class=P index=2 "
                                  "binding=B1 offset=0 null=no tb=- rot=- loose=unknown\nend\n";
  const auto r = obk_run({"pushoff", path("p.obk")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("[orientation]"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("[class-index-contiguous]"), std::string::npos) << r.err;
}

TEST_F(CliTest, PushoffRejectsWrongDocumentKind) {
  EXPECT_EQ(obk_run({"pushoff", fixture("disk.obk")}).code, 2);
}

TEST_F(CliTest, RenderToFileIsDeterministic) {
  ASSERT_EQ(obk_run({"render", fixture("mixed_orientation.certificate.obk"), "-o", path("a.svg")}).code, 0);
  const auto again = obk_run({"render", fixture("mixed_orientation.certificate.obk")});
  ASSERT_EQ(again.code, 0);
  std::ifstream in(path("a.svg"));
  std::stringstream buf;
  buf << in.rdbuf();
  EXPECT_EQ(buf.str(), again.out);
  EXPECT_EQ(obk_run({"render", fixture("loose_planar.sg.obk")}).code, 1);
}

TEST_F(CliTest, CheckFixturesPass) {
  std::vector<std::string> args{"check", "--permutations", "all", "--samples", "20"};
  for (const auto& entry : fs::directory_iterator(OBK_FIXTURE_DIR)) {
    if (entry.is_regular_file()) args.push_back(entry.path().string());
  }
  const auto r = obk_run(args);
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos) << r.out;
}

TEST_F(CliTest, CheckTamperedLedger) {
  const auto r = obk_run({"check", "--no-builtin", fixture("bad/tampered_ledger.obk")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("ledger replay mismatch"), std::string::npos);
  const auto j = obk_run({"check", "--no-builtin", "--json", fixture("bad/tampered_ledger.obk")});
  EXPECT_NE(j.out.find("\"pass\": false"), std::string::npos);
}

TEST_F(CliTest, CheckSeedFromEnvironment) {
  ::setenv("OPENBOOK_KIT_SEED", "777", 1);
  const auto a = obk_run({"check", "--samples", "10"});
  const auto b = obk_run({"check", "--samples", "10"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("seed 777"), std::string::npos);
  ::setenv("OPENBOOK_KIT_SEED", "not-a-number", 1);
  EXPECT_EQ(obk_run({"check", "--samples", "10"}).code, 2);
  ::unsetenv("OPENBOOK_KIT_SEED");
  EXPECT_EQ(obk_run({"check", "--permutations", "some"}).code, 2);
}

TEST_F(CliTest, RoundtripAndLoose) {
  const auto rt = obk_run({"roundtrip", fixture("marked_genus1.obk"), "--legendrian", path("l.obk"), "--transverse",
                           path("t.obk")});
  ASSERT_EQ(rt.code, 0) << rt.err;
  EXPECT_EQ(rt.out, "bound=1 legendrian=1 transverse=1\n");
  const auto loose = obk_run({"loose", fixture("loose_planar.obk"), "--extra", "3", "-o", path("sg.obk")});
  ASSERT_EQ(loose.code, 0) << loose.err;
  EXPECT_EQ(loose.out.substr(0, loose.out.find('\n')), "bound=0 extra=3");
  EXPECT_EQ(obk_run({"check", "--no-builtin", path("sg.obk"), path("l.obk"), path("t.obk")}).code, 0);
  EXPECT_EQ(obk_run({"loose", fixture("genus1_parallel.obk"), "-o", path("x.obk")}).code, 1);
}

}  // namespace
