#include <gtest/gtest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#ifndef ORTHOIKS_CLI
#error "ORTHOIKS_CLI must name the command-line binary"
#endif

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args) {
  Run r;
  const std::string cmd = std::string(ORTHOIKS_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int s = pclose(pipe);
  r.status = WIFEXITED(s) ? WEXITSTATUS(s) : -1;
  return r;
}

nlohmann::json run_json(const std::string& args) {
  const auto r = run(args);
  EXPECT_EQ(r.status, 0) << args;
  return nlohmann::json::parse(r.out);
}

std::filesystem::path temp_dir() {
  auto d = std::filesystem::temp_directory_path() / "orthoiks_cli_test";
  std::filesystem::create_directories(d);
  return d;
}

}  // namespace

TEST(Cli, ClassifyReferenceDesigns) {
  EXPECT_EQ(run_json("classify --a2 2 --a3 1.5 --d2 1")["result"]["verdict"], "quaternary");
  EXPECT_EQ(run_json("classify --a2 0.5 --a3 0.15 --d2 0.21")["result"]["verdict"], "binary");
  const auto j = run_json("classify --a1 2 --a2 4 --a3 3 --d2 2");
  EXPECT_NEAR(j["result"]["threshold"].get<double>(), 2 * 0.20081141588622764, 1e-12);
  EXPECT_EQ(run_json("classify --a2 2 --a3 1.5 --d2 0")["result"]["rule"], "no_offsets");
}

TEST(Cli, InvalidInputExitsTwo) {
  EXPECT_EQ(run("classify --a2 -1 --a3 1 --d2 1").status, 2);
  EXPECT_EQ(run("classify --a2 1 --a3 1").status, 2);
  EXPECT_EQ(run("nonsense").status, 2);
  EXPECT_EQ(run("workspace --a2 2 --a3 1.5 --d2 1 --d3 0.5 --out -").status, 2);
}

TEST(Cli, HelpExitsZero) {
  const auto r = run("--help");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("classify"), std::string::npos);
}

TEST(Cli, ForwardAndInverse) {
  const auto fk = run_json("fk --a2 2 --a3 1.5 --d2 1");
  EXPECT_NEAR(fk["point"]["x"].get<double>(), 4.5, 1e-12);
  EXPECT_NEAR(fk["point"]["y"].get<double>(), 1.0, 1e-12);
  EXPECT_EQ(run_json("ik --a2 2 --a3 1.5 --d2 1 --x 9 --y 0 --z 0")["count"], 0);
  const auto ik = run_json("ik --a2 2 --a3 1.5 --d2 1 --x 2.30313 --y 0 --z -0.034375");
  EXPECT_EQ(ik["count"], 4);
  EXPECT_EQ(ik["solutions"].size(), 4u);
}

TEST(Cli, WorkspaceWritesFiles) {
  const auto dir = temp_dir();
  const auto svg = dir / "ws.svg";
  ASSERT_EQ(run("workspace --a2 1.5 --a3 0.9 --d2 0.5 --samples 512 --out " + svg.string()).status, 0);
  std::ifstream in(svg);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str().rfind("<svg", 0), 0u);

  const auto j = run_json("workspace --a2 1.5 --a3 0.9 --d2 0.5 --format json --out -");
  EXPECT_EQ(j["cusps"], 4);
  const auto csv = run("workspace --a2 1.5 --a3 0.9 --d2 0.5 --format csv --samples 64 --out -");
  EXPECT_EQ(csv.out.rfind("kind,branch,rho,z,theta2,theta3\n", 0), 0u);
}

TEST(Cli, ScanAndSurface) {
  const auto scan = run("scan --x-range 0,1 --y-range 0,1 --step 0.5 --out -");
  EXPECT_EQ(scan.status, 0);
  EXPECT_EQ(scan.out,
            "a2,a3,closed_form,cusp_scan,grid_iks,agree,near_surface\n"
            "0.5,0.5,quaternary,quaternary,quaternary,1,0\n"
            "0.5,1,quaternary,quaternary,quaternary,1,0\n"
            "1,0.5,quaternary,quaternary,quaternary,1,0\n"
            "1,1,quaternary,quaternary,quaternary,1,0\n");
  const auto j = run_json("scan --x d2 --fixed a2=0.5 --x-range 0,0.5 --y-range 0,0.5 --step 0.1 "
                          "--oracles closed_form cusp_scan --format json --out -");
  EXPECT_EQ(j["counts"]["total"], 25);
  EXPECT_EQ(j["counts"]["disagreements"], 0);
  EXPECT_EQ(run("scan --x a2 --y a2 --out -").status, 2);

  const auto surface = run("surface --a2-range 0.5,1 --d2-range 0.5,1 --resolution 2 --out -");
  EXPECT_EQ(surface.status, 0);
  EXPECT_EQ(surface.out.rfind("a2,d2,threshold_low\n0.5,0.5,0.371748034\n", 0), 0u);
}

TEST(Cli, DefaultOutputDirectory) {
  const auto dir = temp_dir() / "out";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const std::string cmd = "ORTHOIKS_OUT_DIR=" + dir.string() + " " + std::string(ORTHOIKS_CLI) +
                          " surface --resolution 3 >/dev/null 2>&1";
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  EXPECT_FALSE(std::filesystem::is_empty(dir));
}

TEST(Cli, VerifyQuickAndFaultInjection) {
  const auto ok = run("verify --quick");
  EXPECT_EQ(ok.status, 0) << ok.out;
  EXPECT_EQ(ok.out.find("[FAIL]"), std::string::npos);
  const auto bad = run("verify --quick --inject-threshold-bias 0.05");
  EXPECT_EQ(bad.status, 1);
  EXPECT_NE(bad.out.find("[FAIL]"), std::string::npos);
}
