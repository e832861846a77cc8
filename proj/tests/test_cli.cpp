#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "rcqm/cli.hpp"

using namespace rcqm;
using namespace rcqm::cli;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / ("rcqm_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

int run_binary(const std::string& args, const std::string& stdout_file = "/dev/null") {
  const std::string cmd = std::string(RCQM_BINARY) + " " + args + " >" + stdout_file + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path write_config(const std::string& name, const json& j) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << j.dump();
  return p;
}

json small_config() {
  return json{{"schema_version", 1},
              {"grid", {{"dim", 1}, {"n", 101}, {"box_length", 80}, {"mass", 1}}},
              {"packet", {{"center_k", {0.5, 0, 0}}, {"width", 2}, {"polarization", {1, 0, 0.5, {0, 0.5}}}}}};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(Config, ParsesFullDocument) {
  json j = small_config();
  j["experiment"] = "equivalence";
  j["picture"] = "Dirac";
  j["horizon"] = 5;
  j["checkpoints"] = 6;
  j["times"] = {0.5, 1};
  j["realizations"] = {"FW", "DiracLocal"};
  j["conventions"] = {"Prime"};
  j["tolerance"] = 1e-6;
  j["seed"] = 42;
  j["debug"] = {{"flip_vminus", true}};
  const RunConfig c = parse_config(j);
  EXPECT_EQ(c.grid.dim, 1);
  EXPECT_EQ(c.picture, Picture::Dirac);
  EXPECT_EQ(*c.checkpoints, 6);
  EXPECT_EQ(c.realizations.size(), 2u);
  EXPECT_EQ(c.conventions.front(), Convention::Prime);
  EXPECT_TRUE(c.debug.flip_vminus);
  EXPECT_EQ(c.packet.polarization[3], cplx(0, 0.5));
  EXPECT_EQ(c.seed, 42u);
}

TEST(Config, RejectsBadDocuments) {
  const auto expect_error = [](json j) { EXPECT_THROW(parse_config(j), ConfigError) << j.dump(); };
  json j = small_config();
  j.erase("schema_version");
  expect_error(j);
  j = small_config();
  j["schema_version"] = 2;
  expect_error(j);
  j = small_config();
  j["colour"] = "blue";
  expect_error(j);
  j = small_config();
  j["grid"]["spacing"] = 1;
  expect_error(j);
  j = small_config();
  j["packet"]["width"] = 0.1;
  expect_error(j);
  j = small_config();
  j["grid"]["n"] = 100;
  expect_error(j);
  j = small_config();
  j["picture"] = "Heisenberg";
  expect_error(j);
  j = small_config();
  j["realizations"] = {"Lattice"};
  expect_error(j);
  j = small_config();
  j["checkpoints"] = 1;
  expect_error(j);
  j = small_config();
  j["grid"]["mass"] = "heavy";
  expect_error(j);
  j = small_config();
  j["plane_wave"] = {{"k_offsets", {0, 1, 0}}};
  expect_error(j);
}

TEST(Config, QuickModeIsOneDimensional) {
  const RunConfig c = quick_config(parse_config(small_config()));
  EXPECT_EQ(c.grid.dim, 1);
  EXPECT_EQ(c.grid.n_per_axis, 101);
  const State f = initial_state(c);
  EXPECT_EQ(f.grid->size(), 101u);
}

TEST(Config, InitialStates) {
  json j = small_config();
  j["state"] = "plane_wave";
  j["plane_wave"] = {{"k_offsets", {2, 0, 0}}, {"alpha", 3}};
  EXPECT_NEAR(norm(initial_state(parse_config(j))), 1.0, 1e-12);
  j["state"] = "random";
  j["seed"] = 5;
  EXPECT_EQ(initial_state(parse_config(j)).data, initial_state(parse_config(j)).data);
}

TEST(Cli, VerifyCliffordExitCodes) {
  const fs::path report = scratch() / "clifford.json";
  EXPECT_EQ(run_binary("verify-clifford", report.string()), 0);
  const json j = json::parse(slurp(report));
  EXPECT_GE(j.at("passed").get<int>(), 40);
  EXPECT_EQ(j.at("failed").get<int>(), 0);
  bool pd = false, qm = false;
  for (const auto& row : j.at("identities")) {
    pd = pd || row.at("representation") == "PauliDirac";
    qm = qm || row.at("representation") == "QuantumMechanical";
  }
  EXPECT_TRUE(pd && qm);
  EXPECT_EQ(run_binary("verify-clifford --corrupt-gamma"), 1);
}

TEST(Cli, VerifyAlgebraExitCodes) {
  const fs::path cfg = write_config("alg.json", small_config());
  const fs::path csv = scratch() / "alg.csv";
  EXPECT_EQ(run_binary("verify-algebra --config " + cfg.string(), csv.string()), 0);
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "realization,convention,t,a,b,expected,residual,status");
  EXPECT_EQ(run_binary("--quick verify-algebra"), 0);
  EXPECT_EQ(run_binary("--quick --tolerance 1e-15 verify-algebra"), 2);
}

TEST(Cli, DroppedSpinTermFailsAlgebra) {
  json j = small_config();
  j["grid"] = {{"dim", 3}, {"n", 25}, {"box_length", 20}, {"mass", 1}};
  j["packet"] = {{"width", 1.25}};
  j["realizations"] = {"RCQM_X"};
  j["algebra_times"] = {0};
  j["debug"] = {{"drop_spin_j12", true}};
  const fs::path cfg = write_config("drop.json", j);
  EXPECT_EQ(run_binary("verify-algebra --tolerance 1e-3 --config " + cfg.string()), 2);
  j.erase("debug");
  const fs::path ok = write_config("nodrop.json", j);
  EXPECT_EQ(run_binary("verify-algebra --tolerance 1e-3 --config " + ok.string()), 0);
}

TEST(Cli, EquivalenceExitCodes) {
  json j = small_config();
  const fs::path cfg = write_config("eq.json", j);
  const fs::path report = scratch() / "eq.json.out";
  EXPECT_EQ(run_binary("equivalence --config " + cfg.string(), report.string()), 0);
  const json r = json::parse(slurp(report));
  EXPECT_EQ(r.at("checkpoints").size(), 20u);
  EXPECT_LE(r.at("max_dirac_residual").get<double>(), 1e-10);
  EXPECT_EQ(run_binary("equivalence --flip-vminus --config " + cfg.string()), 3);
  j["state"] = "plane_wave";
  const fs::path pw = write_config("pw.json", j);
  const fs::path pw_report = scratch() / "pw.out";
  EXPECT_EQ(run_binary("equivalence --config " + pw.string(), pw_report.string()), 0);
  EXPECT_LE(json::parse(slurp(pw_report)).at("max_dirac_residual").get<double>(), 1e-12);
}

TEST(Cli, ConfigErrorsExitFour) {
  EXPECT_EQ(run_binary("verify-algebra --config /nonexistent/config.json"), 4);
  json j = small_config();
  j["unknown"] = 1;
  EXPECT_EQ(run_binary("equivalence --config " + write_config("bad.json", j).string()), 4);
  const fs::path broken = scratch() / "broken.json";
  std::ofstream(broken) << "{ not json";
  EXPECT_EQ(run_binary("evolve --out /tmp --config " + broken.string()), 4);
  EXPECT_EQ(run_binary("no-such-command"), 4);
  EXPECT_EQ(run_binary("verify-algebra"), 4);
}

TEST(Cli, EvolveWritesArtifacts) {
  json j = small_config();
  j["horizon"] = 4;
  j["checkpoints"] = 5;
  j["picture"] = "FW";
  j["snapshot_stride"] = 2;
  const fs::path cfg = write_config("evolve.json", j);
  const fs::path out = scratch() / "evolve_out" / "nested";
  fs::remove_all(out);
  EXPECT_EQ(run_binary("evolve --config " + cfg.string() + " --out " + out.string()), 0);
  EXPECT_TRUE(fs::exists(out / "conservation.csv"));
  EXPECT_TRUE(fs::exists(out / "conservation.json"));
  EXPECT_TRUE(fs::exists(out / "marginals_000.csv"));
  EXPECT_TRUE(fs::exists(out / "marginals_004.csv"));
  EXPECT_TRUE(fs::exists(out / "snapshot_000.json"));
  EXPECT_TRUE(fs::exists(out / "snapshot_002.json"));
  EXPECT_FALSE(fs::exists(out / "snapshot_001.json"));
  const json c = json::parse(slurp(out / "conservation.json"));
  EXPECT_EQ(c.at("picture"), "FW");
  EXPECT_LE(c.at("max_drift").get<double>(), 1e-9);

  // Deterministic reports.
  const std::string first = slurp(out / "conservation.csv");
  EXPECT_EQ(run_binary("evolve --config " + cfg.string() + " --out " + out.string()), 0);
  EXPECT_EQ(slurp(out / "conservation.csv"), first);
}

TEST(Cli, EvolvePositronPacketHasNegativeFwEnergy) {
  json j = small_config();
  j["packet"]["polarization"] = {0, 0, 1, 0};
  j["picture"] = "FW";
  j["horizon"] = 2;
  j["checkpoints"] = 3;
  const fs::path out = scratch() / "positron";
  EXPECT_EQ(run_binary("evolve --config " + write_config("pos.json", j).string() + " --out " + out.string()), 0);
  const json c = json::parse(slurp(out / "conservation.json"));
  for (const auto& cp : c.at("checkpoints")) EXPECT_LT(cp.at("values").at("P0").get<double>(), 0);
}
