// Exercises the shared library through its public header only.
#include <gtest/gtest.h>

#include <hprandtl/hprandtl.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>

namespace {

hp_config* parse(const char* text) {
  hp_config* c = nullptr;
  EXPECT_EQ(hp_config_parse(text, &c), HP_OK) << hp_last_error();
  return c;
}

}  // namespace

TEST(CApi, VersionAndEmptyError) {
  EXPECT_GT(std::strlen(hp_version()), 0u);
  hp_config* c = parse("K = 2\n");
  EXPECT_STREQ(hp_last_error(), "");
  hp_config_free(c);
}

TEST(CApi, ConfigErrorsMapToCodes) {
  hp_config* c = reinterpret_cast<hp_config*>(0x1);
  EXPECT_EQ(hp_config_parse("K = 4\nbogus = 1\n", &c), HP_ERR_CONFIG);
  EXPECT_EQ(c, nullptr);
  EXPECT_NE(std::string(hp_last_error()).find("line 2"), std::string::npos);
  EXPECT_EQ(hp_config_parse(nullptr, &c), HP_ERR_INVALID_ARGUMENT);

  c = parse("K = 4\n");
  EXPECT_EQ(hp_config_set(c, "dt", "0.5"), HP_ERR_CONFIG);
  EXPECT_NE(std::string(hp_config_echo(c)).find("K = 4"), std::string::npos);
  EXPECT_EQ(hp_config_set(c, "K", "3"), HP_OK);
  EXPECT_NE(std::string(hp_config_echo(c)).find("K = 3"), std::string::npos);
  hp_config_free(c);
  hp_config_free(nullptr);
}

TEST(CApi, SweepProducesCsvAndSummary) {
  hp_config* c = parse("grid_n = 31\nt_end = 0.2\nK = 3\nchecks = psi_gronwall,theorem\nmodel = both\n");
  hp_run* r = nullptr;
  ASSERT_EQ(hp_run_sweep(c, &r), HP_OK) << hp_last_error();
  EXPECT_GT(hp_run_check_count(r), 0u);
  EXPECT_EQ(hp_run_failed_checks(r), 0u);
  EXPECT_EQ(hp_run_all_checks_passed(r), 1);
  const std::string traj = hp_run_csv(r, "trajectory");
  EXPECT_EQ(traj.rfind("model,k,t,", 0), 0u);
  EXPECT_NE(traj.find("classical,"), std::string::npos);
  EXPECT_EQ(std::string(hp_run_csv(r, "growth")).rfind("model,k,A_k", 0), 0u);
  EXPECT_EQ(hp_run_csv(r, "nope"), nullptr);
  EXPECT_EQ(std::string(hp_run_summary_json(r)).front(), '{');

  const auto dir = std::filesystem::temp_directory_path() / "hprandtl_capi_test";
  std::filesystem::remove_all(dir);
  ASSERT_EQ(hp_run_write_outputs(r, dir.string().c_str()), HP_OK) << hp_last_error();
  for (const char* f : {"trajectory.csv", "checks.csv", "growth.csv", "manifest.json"}) {
    EXPECT_TRUE(std::filesystem::exists(dir / f)) << f;
  }
  std::filesystem::remove_all(dir);
  hp_run_free(r);
  hp_config_free(c);
}

TEST(CApi, SingleModeAndGronwall) {
  hp_config* c = parse("grid_n = 31\nt_end = 0.1\nK = 2\ngronwall_trials = 5\n");
  hp_run* r = nullptr;
  ASSERT_EQ(hp_run_simulate_mode(c, 7, &r), HP_OK) << hp_last_error();
  EXPECT_NE(std::string(hp_run_csv(r, "trajectory")).find("hyperbolic,7,"), std::string::npos);
  hp_run_free(r);
  ASSERT_EQ(hp_run_verify_gronwall(c, &r), HP_OK) << hp_last_error();
  EXPECT_EQ(hp_run_check_count(r), 15u);
  EXPECT_EQ(hp_run_all_checks_passed(r), 1);
  hp_run_free(r);
  hp_config_free(c);
}

TEST(CApi, StabilityErrorOnTooLargeFrequency) {
  hp_config* c = parse("grid_n = 31\nt_end = 0.1\nK = 2\ndt = 0.01\n");
  hp_run* r = nullptr;
  EXPECT_EQ(hp_run_simulate_mode(c, 500, &r), HP_ERR_CONFIG);
  EXPECT_EQ(r, nullptr);
  EXPECT_NE(std::string(hp_last_error()).find("limit"), std::string::npos);
  hp_config_free(c);
}

TEST(CApi, Constants) {
  hp_constants_out out{};
  ASSERT_EQ(hp_constants(8.0, "poiseuille 4", 0.0, &out), HP_OK) << hp_last_error();
  EXPECT_EQ(out.curvature_weight, 16.0);
  EXPECT_EQ(out.alpha, 4.0);
  EXPECT_EQ(out.beta, 2.0);
  EXPECT_EQ(out.gamma, 1.0);
  EXPECT_GT(out.T_sigma, 0.0);
  ASSERT_EQ(hp_constants(8.0, "poiseuille 4", 10.0, &out), HP_OK);
  EXPECT_TRUE(std::isnan(out.beta));
  ASSERT_EQ(hp_constants(8.0, "linear 0 1", 3.0, &out), HP_OK);
  EXPECT_TRUE(std::isinf(out.T_sigma));
  EXPECT_EQ(hp_constants(8.0, "blasius", 0.0, &out), HP_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(hp_constants(-1.0, "linear 0 1", 0.0, &out), HP_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(hp_constants(8.0, "linear 0 1", 0.0, nullptr), HP_ERR_INVALID_ARGUMENT);
}
