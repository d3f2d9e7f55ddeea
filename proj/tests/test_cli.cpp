// End-to-end checks of the command-line surface: output formats, exit codes,
// and byte-level determinism. Each test shells out to the built binary.

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#ifndef HOROKLEIN_CLI_PATH
#error "HOROKLEIN_CLI_PATH must point at the built CLI binary"
#endif

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout only
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(HOROKLEIN_CLI_PATH) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buf{};
  RunResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return result;
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    result.output.append(buf.data(), n);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  out << contents;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    write_file("cli_u.json", R"({"1": 0.5})");
    write_file("cli_v.json", R"({"2": 0.5})");
    write_file("cli_base.json", R"({})");
    write_file("cli_xhat.json", R"({"1": 0.3})");
    write_file("cli_unit.json", R"({"1": 1.0})");
    write_file("cli_cone.json", R"({"lambda": 2.0, "spatial": {"1": 1.0}})");
    write_file("cli_bad.json", R"({"1": )");
    write_file("cli_outside.json", R"({"1": 1.5})");
  }

  void TearDown() override {
    for (const char* f :
         {"cli_u.json", "cli_v.json", "cli_base.json", "cli_xhat.json", "cli_unit.json",
          "cli_cone.json", "cli_bad.json", "cli_outside.json", "cli_terms.jsonl",
          "cli_terms2.jsonl", "cli_report1.csv", "cli_report2.csv"}) {
      std::remove(f);
    }
  }
};

}  // namespace

TEST_F(CliTest, DistBirkhoffRadial) {
  const RunResult r = run_cli("dist cli_base.json cli_u.json");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.output, "0.549306144334055\n");  // atanh(1/2), 15 significant digits
}

TEST_F(CliTest, DistThreeMetricsAgree) {
  const RunResult rho = run_cli("dist --metric birkhoff cli_u.json cli_v.json");
  const RunResult dh = run_cli("dist --metric arccosh cli_u.json cli_v.json");
  const RunResult delta = run_cli("dist --metric crossratio cli_u.json cli_v.json");
  EXPECT_EQ(rho.exit_code, 0);
  EXPECT_EQ(rho.output, "0.795365461223906\n");
  EXPECT_EQ(dh.output, rho.output);
  EXPECT_EQ(delta.output, rho.output);
}

TEST_F(CliTest, DistRayScaledConeInput) {
  const RunResult r = run_cli("dist cli_cone.json cli_u.json");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.output, "0\n");  // (2, e1) and (1, 0.5 e1) span the same ray
}

TEST_F(CliTest, GaugeClosedAndOracle) {
  const RunResult closed = run_cli("gauge cli_u.json cli_base.json");
  EXPECT_EQ(closed.exit_code, 0);
  EXPECT_EQ(closed.output, "1.5\n");
  const RunResult oracle = run_cli("gauge --oracle --tol 1e-10 cli_u.json cli_base.json");
  EXPECT_EQ(oracle.exit_code, 0);
  EXPECT_NEAR(std::stod(oracle.output), 1.5, 1e-9);
}

TEST_F(CliTest, HoroEvalAndClassify) {
  const RunResult eval = run_cli("horo eval --xhat cli_xhat.json --r 0.8 cli_u.json");
  EXPECT_EQ(eval.exit_code, 0);
  EXPECT_EQ(eval.output, "-0.0234728988319345\n");

  const RunResult valid = run_cli("horo classify --xhat cli_xhat.json --r 0.8");
  EXPECT_EQ(valid.exit_code, 0);
  EXPECT_EQ(valid.output, "{\"valid\":true,\"is_busemann\":false}\n");

  const RunResult busemann = run_cli("horo classify --xhat cli_unit.json --r 1.0");
  EXPECT_EQ(busemann.exit_code, 0);
  EXPECT_EQ(busemann.output, "{\"valid\":true,\"is_busemann\":true}\n");

  const RunResult invalid = run_cli("horo classify --xhat cli_xhat.json --r 0.2");
  EXPECT_EQ(invalid.exit_code, 0);
  EXPECT_NE(invalid.output.find("\"valid\":false"), std::string::npos);
}

TEST_F(CliTest, SeqGenerateAuditDiagnose) {
  const RunResult gen = run_cli(
      "seq gen --kind boundary --xhat cli_unit.json --n 40 --out cli_terms.jsonl");
  EXPECT_EQ(gen.exit_code, 0);

  const RunResult ag = run_cli("seq check-ag --eps 1e-9 cli_terms.jsonl");
  EXPECT_EQ(ag.exit_code, 0);
  EXPECT_NE(ag.output.find("\"pass\":true"), std::string::npos);

  const RunResult diag = run_cli("seq diagnostic --xhat cli_unit.json cli_terms.jsonl");
  EXPECT_EQ(diag.exit_code, 0);
  EXPECT_EQ(diag.output.substr(0, 4), "n,q\n");
  // the ratio is identically 1 along the boundary approach toward x_hat
  EXPECT_NE(diag.output.find("\n0,1\n"), std::string::npos);
}

TEST_F(CliTest, SeqCheckAgFailsOnDrift) {
  const RunResult gen = run_cli(
      "seq gen --kind drift --xhat cli_base.json --r 0.9 --start-index 1 --n 20 "
      "--out cli_terms.jsonl");
  EXPECT_EQ(gen.exit_code, 0);
  const RunResult ag = run_cli("seq check-ag --eps 0.1 cli_terms.jsonl");
  EXPECT_EQ(ag.exit_code, 4);
  EXPECT_NE(ag.output.find("\"pass\":false"), std::string::npos);
}

TEST_F(CliTest, ConvergeDriftPassesAtTightTolerance) {
  const RunResult r = run_cli(
      "converge --kind drift --xhat cli_xhat.json --r 0.8 --start-index 10 "
      "--n-max 50 --pass-tol 1e-13");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.output.find("# pass: true"), std::string::npos);
}

TEST_F(CliTest, ConvergeWrongTargetFails) {
  const RunResult gen = run_cli(
      "seq gen --kind drift --xhat cli_base.json --r 0.5 --start-index 1 --n 30 "
      "--out cli_terms.jsonl");
  EXPECT_EQ(gen.exit_code, 0);
  const RunResult r = run_cli(
      "converge --terms cli_terms.jsonl --target-xhat cli_xhat.json --target-r 0.9 "
      "--n-max 29 --pass-tol 1e-6");
  EXPECT_EQ(r.exit_code, 4);
  EXPECT_NE(r.output.find("# pass: false"), std::string::npos);
}

TEST_F(CliTest, VerifyPassesAndIsDeterministic) {
  const RunResult r1 = run_cli("verify --seed 42 --trials 300 --out cli_report1.csv");
  const RunResult r2 = run_cli("verify --seed 42 --trials 300 --out cli_report2.csv");
  EXPECT_EQ(r1.exit_code, 0);
  EXPECT_EQ(r2.exit_code, 0);
  const std::string a = read_file("cli_report1.csv");
  const std::string b = read_file("cli_report2.csv");
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, b);
  EXPECT_NE(a.find("# all_pass: true"), std::string::npos);
}

TEST_F(CliTest, SeqGenDeterministic) {
  const RunResult r1 = run_cli(
      "seq gen --kind drift --xhat cli_xhat.json --r 0.8 --n 25 --out cli_terms.jsonl");
  const RunResult r2 = run_cli(
      "seq gen --kind drift --xhat cli_xhat.json --r 0.8 --n 25 --out cli_terms2.jsonl");
  EXPECT_EQ(r1.exit_code, 0);
  EXPECT_EQ(r2.exit_code, 0);
  EXPECT_EQ(read_file("cli_terms.jsonl"), read_file("cli_terms2.jsonl"));
}

TEST_F(CliTest, ExitCodesDistinguishFailureKinds) {
  // 2: malformed input file
  EXPECT_EQ(run_cli("dist cli_bad.json cli_u.json").exit_code, 2);
  // 2: unknown flag
  EXPECT_EQ(run_cli("dist --no-such-flag cli_u.json cli_v.json").exit_code, 2);
  // 2: invalid horofunction parameters
  EXPECT_EQ(run_cli("horo eval --xhat cli_xhat.json --r 0.1 cli_u.json").exit_code, 2);
  // 3: exterior point reaching a metric (domain, not format)
  EXPECT_EQ(run_cli("dist cli_outside.json cli_u.json").exit_code, 3);
  // 3: numerical domain error (gauge against a boundary ray)
  EXPECT_EQ(run_cli("gauge cli_u.json cli_unit.json").exit_code, 3);
  // 0: help
  EXPECT_EQ(run_cli("--help").exit_code, 0);
}
