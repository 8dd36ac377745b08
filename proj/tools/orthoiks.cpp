// orthoiks: command-line front end.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error.
// Files named by a subcommand's default go to $ORTHOIKS_OUT_DIR when it is
// set and --out is not given; otherwise the output goes to stdout.

#include "orthoiks/orthoiks.hpp"
#include "orthoiks/verification.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

using nlohmann::json;
using namespace orthoiks;

struct ParamFlags {
  double a1 = 1.0, a2 = 0.0, a3 = 0.0, d2 = 0.0, d3 = 0.0;
  DhParams get() const { return DhParams(a1, a2, a3, d2, d3); }
};

void add_param_flags(CLI::App* cmd, ParamFlags& p) {
  cmd->add_option("--a1", p.a1, "link length a1")->check(CLI::NonNegativeNumber)->capture_default_str();
  cmd->add_option("--a2", p.a2, "link length a2")->check(CLI::NonNegativeNumber)->required();
  cmd->add_option("--a3", p.a3, "link length a3")->check(CLI::NonNegativeNumber)->required();
  cmd->add_option("--d2", p.d2, "joint offset d2")->check(CLI::NonNegativeNumber)->required();
  cmd->add_option("--d3", p.d3, "joint offset d3")->check(CLI::NonNegativeNumber)->capture_default_str();
}

// Writes to `out`, to $ORTHOIKS_OUT_DIR/default_name, or to stdout.
// Returns the path written, or "" for stdout.
std::string emit(const std::string& content, const std::string& out,
                 const std::string& default_name) {
  std::filesystem::path path;
  if (!out.empty() && out != "-") {
    path = out;
  } else if (out.empty()) {
    if (const char* dir = std::getenv("ORTHOIKS_OUT_DIR"); dir && *dir) {
      path = std::filesystem::path(dir) / default_name;
    }
  }
  if (path.empty()) {
    std::cout << content;
    return "";
  }
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  f << content;
  return path.string();
}

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

Param param_or_throw(const std::string& s) {
  if (auto p = parse_param(s)) return *p;
  throw UsageError("unknown parameter '" + s + "' (expected a1, a2, a3, d2 or d3)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Binary/quaternary classification of orthogonal 3R manipulators"};
  app.require_subcommand(1);

  // classify
  ParamFlags cls_p;
  auto* cls = app.add_subcommand("classify", "closed-form verdict as JSON");
  add_param_flags(cls, cls_p);

  // fk
  ParamFlags fk_p;
  double t1 = 0, t2 = 0, t3 = 0;
  auto* fk = app.add_subcommand("fk", "forward kinematics as JSON");
  add_param_flags(fk, fk_p);
  fk->add_option("--t1", t1, "theta1 [rad]")->capture_default_str();
  fk->add_option("--t2", t2, "theta2 [rad]")->capture_default_str();
  fk->add_option("--t3", t3, "theta3 [rad]")->capture_default_str();

  // ik
  ParamFlags ik_p;
  double x = 0, y = 0, z = 0, ik_tol = 1e-6;
  auto* ik = app.add_subcommand("ik", "all inverse kinematic solutions as JSON");
  add_param_flags(ik, ik_p);
  ik->add_option("--x", x)->required();
  ik->add_option("--y", y)->required();
  ik->add_option("--z", z)->required();
  ik->add_option("--tol", ik_tol, "accepted FK residual, relative to a1")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  // workspace
  ParamFlags ws_p;
  int ws_samples = 2048;
  std::string ws_format = "svg", ws_out;
  auto* ws = app.add_subcommand("workspace", "boundary curves and features");
  add_param_flags(ws, ws_p);
  ws->add_option("--samples", ws_samples, "samples per boundary branch")
      ->check(CLI::Range(16, 1 << 20))
      ->capture_default_str();
  ws->add_option("--format", ws_format)
      ->check(CLI::IsMember({"svg", "joint-svg", "csv", "json"}))
      ->capture_default_str();
  ws->add_option("--out", ws_out, "output file ('-' for stdout)");

  // scan
  std::vector<std::string> sc_fixed;
  std::string sc_x = "a2", sc_y = "a3", sc_format = "csv", sc_out;
  std::pair<double, double> sc_xr{0.0, 3.0}, sc_yr{0.0, 3.0};
  double sc_step = 0.03, sc_eps = 0.01, sc_bias = 0.0;
  std::vector<std::string> sc_oracles = {"closed_form", "cusp_scan", "grid_iks"};
  unsigned sc_threads = 0;
  int sc_samples = 2048, sc_grid = 48;
  auto* sc = app.add_subcommand("scan", "classify every cell of a two-parameter section");
  sc->add_option("--fixed", sc_fixed, "fixed assignment name=value (a1 defaults to 1, d2 to 0.5)");
  sc->add_option("--x", sc_x, "horizontal parameter")->capture_default_str();
  sc->add_option("--y", sc_y, "vertical parameter")->capture_default_str();
  sc->add_option("--x-range", sc_xr, "lo,hi (lo excluded)")->delimiter(',');
  sc->add_option("--y-range", sc_yr, "lo,hi (lo excluded)")->delimiter(',');
  sc->add_option("--step", sc_step)->check(CLI::PositiveNumber)->capture_default_str();
  sc->add_option("--oracles", sc_oracles)
      ->delimiter(',')
      ->check(CLI::IsMember({"closed_form", "cusp_scan", "grid_iks"}));
  sc->add_option("--eps", sc_eps, "near-surface band")->check(CLI::NonNegativeNumber)->capture_default_str();
  sc->add_option("--threads", sc_threads, "0 = all cores")->capture_default_str();
  sc->add_option("--samples", sc_samples)->check(CLI::Range(16, 1 << 20))->capture_default_str();
  sc->add_option("--grid-res", sc_grid)->check(CLI::Range(1, 10000))->capture_default_str();
  sc->add_option("--inject-threshold-bias", sc_bias, "shift the closed-form threshold (testing)");
  sc->add_option("--format", sc_format)->check(CLI::IsMember({"csv", "json", "svg"}))->capture_default_str();
  sc->add_option("--out", sc_out, "output file ('-' for stdout)");

  // surface
  std::pair<double, double> sf_a2{0.05, 3.0}, sf_d2{0.05, 3.0};
  int sf_res = 60;
  std::string sf_out;
  auto* sf = app.add_subcommand("surface", "separating surface mesh as CSV (a1 = 1)");
  sf->add_option("--a2-range", sf_a2, "lo,hi")->delimiter(',');
  sf->add_option("--d2-range", sf_d2, "lo,hi")->delimiter(',');
  sf->add_option("--resolution", sf_res)->check(CLI::Range(2, 100000))->capture_default_str();
  sf->add_option("--out", sf_out, "output file ('-' for stdout)");

  // verify
  bool vf_full = false, vf_quick = false;
  double vf_bias = 0.0;
  unsigned vf_threads = 0;
  std::uint64_t vf_seed = VerifyOptions{}.seed;
  auto* vf = app.add_subcommand("verify", "run the acceptance checks");
  auto* quick_flag = vf->add_flag("--quick", vf_quick, "thinned scans and samples (default)");
  vf->add_flag("--full", vf_full, "full-resolution run")->excludes(quick_flag);
  vf->add_option("--inject-threshold-bias", vf_bias, "shift the closed-form threshold (testing)");
  vf->add_option("--threads", vf_threads)->capture_default_str();
  vf->add_option("--seed", vf_seed)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*cls) {
      const DhParams p = cls_p.get();
      json j = {{"params", p}, {"result", classify(p)}};
      std::cout << j.dump(2) << '\n';
    } else if (*fk) {
      const DhParams p = fk_p.get();
      const JointConfig q(t1, t2, t3);
      const CartesianPoint pt = forward_kinematics(p, q);
      json j = {{"params", p}, {"q", q}, {"point", pt}, {"cross_section", cross_section(pt)}};
      std::cout << j.dump(2) << '\n';
    } else if (*ik) {
      const DhParams p = ik_p.get();
      const CartesianPoint pt{x, y, z};
      const auto sols = inverse_kinematics(p, pt, ik_tol);
      json j = {{"params", p}, {"point", pt}, {"count", sols.size()}, {"solutions", sols}};
      std::cout << j.dump(2) << '\n';
    } else if (*ws) {
      const DhParams p = ws_p.get();
      WorkspaceOptions wo;
      wo.n_samples = ws_samples;
      const auto boundary = boundary_cross_section(p, ws_samples);
      const auto features = find_features(p, wo);
      std::string content, name;
      if (ws_format == "svg") {
        content = workspace_svg(p, boundary, features);
        name = "workspace.svg";
      } else if (ws_format == "joint-svg") {
        content = joint_space_svg(singularity_curves(p, ws_samples));
        name = "joint_space.svg";
      } else if (ws_format == "csv") {
        std::ostringstream s;
        write_workspace_csv(s, boundary, features);
        content = s.str();
        name = "workspace.csv";
      }
      json summary = {{"params", p},
                      {"cusps", count_features(features, FeatureKind::Cusp)},
                      {"nodes", count_features(features, FeatureKind::Node)},
                      {"quadruple_points", count_features(features, FeatureKind::QuadruplePoint)},
                      {"features", features},
                      {"isolated_points", boundary.isolated_points}};
      if (ws_format == "json") {
        emit(summary.dump(2) + "\n", ws_out, "workspace.json");
      } else {
        const std::string path = emit(content, ws_out, name);
        if (!path.empty()) {
          summary["file"] = path;
          std::cout << summary.dump(2) << '\n';
        }
      }
    } else if (*sc) {
      ScanSpec spec;
      spec.fixed = {{Param::A1, 1.0}};
      bool d2_given = false;
      for (const auto& f : sc_fixed) {
        const auto eq = f.find('=');
        if (eq == std::string::npos) throw UsageError("--fixed expects name=value, got '" + f + "'");
        const Param p = param_or_throw(f.substr(0, eq));
        double v = 0.0;
        try {
          v = std::stod(f.substr(eq + 1));
        } catch (const std::exception&) {
          throw UsageError("--fixed: '" + f.substr(eq + 1) + "' is not a number");
        }
        spec.fixed[p] = v;
        d2_given = d2_given || p == Param::D2;
      }
      spec.x = Axis{param_or_throw(sc_x), sc_xr.first, sc_xr.second, sc_step};
      spec.y = Axis{param_or_throw(sc_y), sc_yr.first, sc_yr.second, sc_step};
      if (!d2_given && spec.x.param != Param::D2 && spec.y.param != Param::D2) {
        spec.fixed[Param::D2] = 0.5;
      }
      if (spec.x.param == Param::A1 || spec.y.param == Param::A1) spec.fixed.erase(Param::A1);
      spec.oracles.clear();
      for (const auto& o : sc_oracles) spec.oracles.insert(*parse_oracle(o));
      spec.near_eps = sc_eps;
      spec.threads = sc_threads;
      spec.boundary_samples = sc_samples;
      spec.grid.grid_res = sc_grid;
      spec.threshold_bias = sc_bias;
      try {
        validate(spec);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      const auto cells = scan_section(spec);
      const auto report = agreement_report(cells);
      std::string content, name;
      if (sc_format == "csv") {
        std::ostringstream s;
        write_scan_csv(s, spec, cells);
        content = s.str();
        name = "scan.csv";
      } else if (sc_format == "json") {
        content = scan_summary(spec, report).dump(2) + "\n";
        name = "scan.json";
      } else {
        content = scan_svg(spec, cells);
        name = "scan.svg";
      }
      const std::string path = emit(content, sc_out, name);
      if (!path.empty()) {
        json j = scan_summary(spec, report)["counts"];
        j["file"] = path;
        std::cout << j.dump(2) << '\n';
      }
    } else if (*sf) {
      std::ostringstream s;
      write_mesh_csv(s, surface_mesh(sf_a2, sf_d2, sf_res));
      const std::string path = emit(s.str(), sf_out, "surface.csv");
      if (!path.empty()) std::cout << json{{"file", path}}.dump(2) << '\n';
    } else if (*vf) {
      VerifyOptions o;
      o.full = vf_full;
      o.threshold_bias = vf_bias;
      o.threads = vf_threads;
      o.seed = vf_seed;
      std::cout << (o.full ? "full" : "quick") << " verification\n";
      const auto results = run_acceptance(o, [](const CriterionResult& r) {
        std::cout << format_result(r) << std::endl;
      });
      const bool ok = all_passed(results);
      std::cout << (ok ? "all criteria passed" : "verification FAILED") << '\n';
      return ok ? 0 : 1;
    }
  } catch (const std::exception& e) {
    // Bad parameter values, invalid scan specs and unwritable outputs.
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
