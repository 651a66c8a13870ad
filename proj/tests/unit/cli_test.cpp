#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

#ifndef EPODETECT_CLI_PATH
#error "EPODETECT_CLI_PATH must point at the epodetect executable"
#endif

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code;
  std::string output;  // stdout and stderr combined
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / ("epodetect_cli_" + std::string(info->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  RunResult run(const std::string& args) const {
    const fs::path log = dir_ / "log.txt";
    const std::string cmd =
        std::string("\"") + EPODETECT_CLI_PATH + "\" " + args + " > \"" + log.string() + "\" 2>&1";
    const int status = std::system(cmd.c_str());
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, slurp(log)};
  }

  fs::path write(const std::string& name, const std::string& text) const {
    std::ofstream(dir_ / name, std::ios::binary) << text;
    return dir_ / name;
  }

  fs::path dir_;
};

const char* kHeader =
    "participant_id,altitude,week,label,HB,HCT,RET_COUNT,RET_PCT,RET_HB,MCV,MCH,MCHC,RBC,"
    "RDW_SD,RDW_CV,WBC,IRF,LFR,MFR,HFR\n";
const char* kRow1 = "P01,sea,1,control,14.2,41.2,0.04,0.9,33.5,88.9,30.7,34.5,4.6,41.7,12.7,5.8,6.3,93.7,5.7,0.6\n";
const char* kRow2 = "P01,sea,5,rhepo,14.5,42.3,,1.4,33.5,89.5,30.6,34.2,4.7,42.5,12.9,5.6,9.9,90.1,8.6,1.3\n";

TEST_F(CliTest, IngestValidFile) {
  const auto input = write("in.csv", std::string(kHeader) + kRow1 + kRow2);
  const RunResult r = run("ingest --input \"" + input.string() + "\" --output-dir \"" +
                          dir_.string() + "\"");
  EXPECT_EQ(r.exit_code, 0) << r.output;
  EXPECT_NE(r.output.find("Blood samples"), std::string::npos);
  const std::string imputed = slurp(dir_ / "cohort_imputed.csv");
  EXPECT_NE(imputed.find("P01,sea,5,rhepo,14.5,42.3,0.04,"), std::string::npos) << imputed;
}

TEST_F(CliTest, DuplicateKeyIsIntegrityError) {
  const auto input = write("dup.csv", std::string(kHeader) + kRow1 + kRow1);
  const RunResult r = run("ingest --input \"" + input.string() + "\" --output-dir \"" +
                          dir_.string() + "\"");
  EXPECT_NE(r.exit_code, 0);
  EXPECT_NE(r.output.find("error[E_INTEGRITY]"), std::string::npos) << r.output;
  EXPECT_NE(r.output.find("P01"), std::string::npos);
  EXPECT_FALSE(fs::exists(dir_ / "cohort_imputed.csv"));
}

TEST_F(CliTest, ParseErrorNamesRow) {
  const auto input = write("bad.csv", std::string(kHeader) + kRow1 +
                                          "P02,sea,13,control,1,1,1,1,1,1,1,1,1,1,1,1,1,98,1,1\n");
  const RunResult r = run("ingest --input \"" + input.string() + "\" --output-dir \"" +
                          dir_.string() + "\"");
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.output.find("error[E_PARSE]"), std::string::npos) << r.output;
  EXPECT_NE(r.output.find("row 3"), std::string::npos) << r.output;
}

TEST_F(CliTest, SimulateRoundTripsThroughIngest) {
  const RunResult sim = run("simulate --seed 3 --output-dir \"" + dir_.string() + "\"");
  ASSERT_EQ(sim.exit_code, 0) << sim.output;
  EXPECT_NE(sim.output.find("306"), std::string::npos) << sim.output;
  const RunResult ing = run("ingest --input \"" + (dir_ / "cohort.csv").string() +
                            "\" --output-dir \"" + dir_.string() + "\"");
  ASSERT_EQ(ing.exit_code, 0) << ing.output;
  EXPECT_EQ(slurp(dir_ / "cohort.csv"), slurp(dir_ / "cohort_imputed.csv"));
  const auto spec = nlohmann::json::parse(slurp(dir_ / "cohort.json"));
  EXPECT_EQ(spec["seed"], 3);
}

TEST_F(CliTest, SeedDeterminesOutput) {
  fs::create_directories(dir_ / "a");
  fs::create_directories(dir_ / "b");
  ASSERT_EQ(run("simulate --seed 7 --output-dir \"" + (dir_ / "a").string() + "\"").exit_code, 0);
  ASSERT_EQ(run("simulate --seed 7 --output-dir \"" + (dir_ / "b").string() + "\"").exit_code, 0);
  EXPECT_EQ(slurp(dir_ / "a" / "cohort.csv"), slurp(dir_ / "b" / "cohort.csv"));
  ASSERT_EQ(run("simulate --seed 8 --output-dir \"" + (dir_ / "b").string() + "\"").exit_code, 0);
  EXPECT_NE(slurp(dir_ / "a" / "cohort.csv"), slurp(dir_ / "b" / "cohort.csv"));
}

TEST_F(CliTest, MissingRateBlanksCells) {
  const RunResult r =
      run("simulate --seed 1 --missing-rate 0.05 --output-dir \"" + dir_.string() + "\"");
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const std::string csv = slurp(dir_ / "cohort.csv");
  EXPECT_NE(csv.find(",,"), std::string::npos);
}

TEST_F(CliTest, ScreenAlphaAndTopK) {
  RunResult r = run("screen --simulate --alpha 1e-30 --output-dir \"" + dir_.string() + "\"");
  ASSERT_EQ(r.exit_code, 0) << r.output;
  auto j = nlohmann::json::parse(slurp(dir_ / "screen.json"));
  EXPECT_TRUE(j["selected"].empty());
  EXPECT_EQ(j["source"], "simulate");

  r = run("screen --simulate --top-k 8 --corr-threshold 0 --output-dir \"" + dir_.string() +
          "\"");
  ASSERT_EQ(r.exit_code, 0) << r.output;
  j = nlohmann::json::parse(slurp(dir_ / "screen.json"));
  EXPECT_LE(j["features"].size(), 8u);
  EXPECT_GE(j["features"].size(), 1u);
  EXPECT_EQ(j["parameters"].size(), 17u);
  EXPECT_TRUE(fs::exists(dir_ / "screen.csv"));
}

TEST_F(CliTest, TrainEvalWritesArtefacts) {
  const RunResult r = run("train-eval --simulate --output-dir \"" + dir_.string() + "\"");
  ASSERT_EQ(r.exit_code, 0) << r.output;
  EXPECT_NE(r.output.find("XGBoost"), std::string::npos);
  for (const char* f : {"report.json", "report.txt", "normalizer.json", "roc_svc.csv",
                        "roc_rf.csv", "roc_boost.csv", "model_svc.json", "model_rf.json",
                        "model_boost.json"}) {
    EXPECT_TRUE(fs::exists(dir_ / f)) << f;
  }
  const auto j = nlohmann::json::parse(slurp(dir_ / "report.json"));
  EXPECT_GT(j["test_split"]["XGBoost"]["auc"].get<double>(), 0.8);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run("").exit_code, 2);
  EXPECT_EQ(run("screen --alpha 2 --simulate").exit_code, 2);
  EXPECT_EQ(run("ingest").exit_code, 2);
  EXPECT_EQ(run("simulate --altitude moon").exit_code, 2);
  const RunResult r = run("train-eval --simulate --features FOO --output-dir \"" +
                          dir_.string() + "\"");
  EXPECT_NE(r.exit_code, 0);
  EXPECT_NE(r.output.find("FOO"), std::string::npos) << r.output;
}

}  // namespace
