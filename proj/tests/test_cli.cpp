#include "support.hpp"

#include "tiltsmith/io.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <sys/wait.h>

using namespace tiltsmith;
using namespace tiltsmith::testing;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

// Runs the CLI with stderr discarded.
CliRun cli(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " TILTSMITH_CLI " " + args + " 2>/dev/null";
  CliRun r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

json parsed(const CliRun& r) { return json::parse(r.out); }

const std::string data = TILTSMITH_TEST_DATA;

bool has_shift(const json& survivors, const std::vector<int>& s) {
  for (const auto& x : survivors)
    if (x.get<std::vector<int>>() == s) return true;
  return false;
}

}  // namespace

TEST(CheckSmc, A5Passes) {
  const CliRun r = cli("check-smc --fixture a5");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(parsed(r)["reason_code"], "OK");
}

TEST(CheckSmc, DuplicatedObjectFailsNamingThePair) {
  const CliRun r = cli("check-smc --fixture a5 --objects " + data + "/a5_k.json " + data + "/a5_k.json");
  EXPECT_EQ(r.code, 1);
  const json j = parsed(r);
  EXPECT_EQ(j["reason_code"], "SMC_B_FAILED");
  const std::string first = j["conditions"]["failures"][0];
  EXPECT_NE(first.find("X_0, X_1"), std::string::npos) << first;
}

TEST(CheckSmc, MalformedJsonIsInputError) {
  const CliRun r = cli("check-smc --algebra " + data + "/malformed.json --objects " + data + "/k.json");
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(parsed(r)["reason_code"], "INPUT_ERROR");
}

TEST(CheckSmc, MissingFileAndBadFlagsAreInputErrors) {
  EXPECT_EQ(cli("check-smc --algebra " + data + "/nope.json --objects x.json").code, 2);
  EXPECT_EQ(cli("check-smc --fixture a6").code, 2);
  EXPECT_EQ(cli("check-smc").code, 2);
  EXPECT_EQ(cli("frobnicate").code, 2);
}

TEST(BuildTilting, A5CertifiesWithThreeSimples) {
  const CliRun r = cli("build-tilting --fixture a5");
  ASSERT_EQ(r.code, 0);
  const json j = parsed(r);
  EXPECT_EQ(j["tilting"]["gamma"]["simple_count"], 3);
  EXPECT_EQ(j["tilting"]["gamma"]["dim"], 18);
}

// Literal example from the command-line contract: window 2 on a7 should be
// too small. The construction here needs W >= 1 for a7 and certifies.
TEST(BuildTilting, A7WindowTwoIsInconclusive) {
  const CliRun r = cli("build-tilting --fixture a7 --window 2");
  EXPECT_EQ(r.code, 3) << "status: " << parsed(r)["status"];
}

TEST(BuildTilting, UndersizedWindowExitsThree) {
  const CliRun r = cli("build-tilting --fixture a5 --shifts 1,2,0 --window 1");
  EXPECT_EQ(r.code, 3);
  const json j = parsed(r);
  EXPECT_EQ(j["reason_code"], "CAP_EXHAUSTED");
  EXPECT_TRUE(j["tilting"]["gamma"].is_null());
}

TEST(BuildTilting, NonPositiveCapsAreRejected) {
  EXPECT_EQ(cli("build-tilting --fixture a5 --window 0").code, 2);
  EXPECT_EQ(cli("build-tilting --fixture a5 --stages -1").code, 2);
}

TEST(BuildTilting, StageCapExitsThree) {
  const CliRun r = cli("build-tilting --fixture a5 --stages 1");
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(parsed(r)["reason_code"], "CAP_EXHAUSTED");
}

TEST(BuildTilting, C2FromFilesGivesTheInputAlgebra) {
  const CliRun r = cli("build-tilting --algebra " + data + "/c2.json --objects " + data + "/k.json");
  ASSERT_EQ(r.code, 0);
  const json g = parsed(r)["tilting"]["gamma"];
  const AlgebraPtr gamma = algebra_from_json(g);
  const AlgebraPtr input = algebra_from_json(read_json_file(data + "/c2.json"));
  EXPECT_TRUE(algebras_isomorphic(*gamma, *input));
}

TEST(BuildTilting, PrecheckFailureBlocksUnlessForced) {
  const std::string dup = " --objects " + data + "/a5_k.json " + data + "/a5_k.json";
  const CliRun blocked = cli("build-tilting --fixture a5" + dup);
  EXPECT_EQ(blocked.code, 1);
  EXPECT_EQ(parsed(blocked)["reason_code"], "PRECHECK_SMC_B_FAILED");
  const CliRun forced = cli("build-tilting --fixture a5 --force" + dup);
  EXPECT_NE(forced.code, 0);
  EXPECT_NE(forced.code, 2);
}

TEST(BuildTilting, ReportsAreByteIdentical) {
  const CliRun a = cli("build-tilting --fixture a7", "TILTSMITH_THREADS=1");
  const CliRun b = cli("build-tilting --fixture a7", "TILTSMITH_THREADS=4");
  const CliRun c = cli("build-tilting --fixture a7", "TILTSMITH_THREADS=4");
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(b.out, c.out);
  const CliRun t1 = cli("build-tilting --fixture a7 --format text");
  const CliRun t2 = cli("build-tilting --fixture a7 --format text");
  EXPECT_EQ(t1.out, t2.out);
  EXPECT_NE(t1.out.find("Gamma: dim 36"), std::string::npos);
}

TEST(BuildTilting, OutFileMatchesStdout) {
  const std::string path = ::testing::TempDir() + "tiltsmith_report.json";
  const CliRun a = cli("build-tilting --fixture c2 --out " + path);
  ASSERT_EQ(a.code, 0);
  EXPECT_TRUE(a.out.empty());
  EXPECT_EQ(read_json_file(path).dump(2) + "\n", cli("build-tilting --fixture c2").out);
}

TEST(StalkSearch, A5BoxTwoContainsChosenVector) {
  const CliRun r = cli("stalk-search --fixture a5 --box 2");
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(has_shift(parsed(r)["survivors"], {0, 1, 1}));
}

TEST(StalkSearch, A8BoxTwoContainsChosenVector) {
  const CliRun r = cli("stalk-search --fixture a8", "TILTSMITH_THREADS=4");
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(has_shift(parsed(r)["survivors"], {0, 0, 1, 0, 0}));
}

TEST(StalkSearch, BoxZeroWithNonCollectionImagesIsEmpty) {
  const CliRun r = cli("stalk-search --fixture a5 --box 0 --objects " + data + "/a5_k.json " + data + "/a5_k.json");
  EXPECT_EQ(r.code, 0);
  const json j = parsed(r);
  EXPECT_TRUE(j["survivors"].empty());
  EXPECT_EQ(j["candidates"].size(), 1u);
}

TEST(StalkSearch, TextMatrixListsEveryCriterion) {
  const CliRun r = cli("stalk-search --fixture a5 --box 1 --format text");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("end=k hom=0 stable=0 ab"), std::string::npos);
  EXPECT_NE(r.out.find("(0,1,1)"), std::string::npos);
}

TEST(Export, FilesReproduceTheFixtureCheck) {
  const std::string dir = ::testing::TempDir() + "tiltsmith_a5";
  ASSERT_EQ(cli("export --fixture a5 --out-dir " + dir).code, 0);
  const CliRun r = cli("check-smc --algebra " + dir + "/algebra.json --objects " + dir + "/object0.json " + dir +
                    "/object1.json " + dir + "/object2.json --certificate " + dir + "/certificate.json");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(parsed(r)["certificate_source"], "given");
  const CliRun t = cli("build-tilting --algebra " + dir + "/algebra.json --objects " + dir + "/object0.json " + dir +
                    "/object1.json " + dir + "/object2.json");
  EXPECT_EQ(t.code, 0);
}
