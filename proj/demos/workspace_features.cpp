// Boundary features of a design given on the command line (a1 a2 a3 d2),
// followed by the solutions at a point with four solutions when one exists.

#include "orthoiks/orthoiks.hpp"

#include <cstdio>
#include <cstdlib>

int main(int argc, char** argv) {
  using namespace orthoiks;
  const DhParams p = argc == 5 ? DhParams(std::atof(argv[1]), std::atof(argv[2]),
                                          std::atof(argv[3]), std::atof(argv[4]))
                               : DhParams(1, 2, 1.5, 1);
  const auto features = find_features(p);
  std::printf("cusps %d, nodes %d\n", count_features(features, FeatureKind::Cusp),
              count_features(features, FeatureKind::Node));
  for (const auto& f : features) {
    std::printf("  %-9s %s  rho=%.6f z=%+.6f  |e1|=%.1e |e2|=%.1e |e3|=%.1e\n",
                std::string(to_string(f.kind)).c_str(), std::string(to_string(f.branch)).c_str(),
                f.location.rho, f.location.z, std::abs(f.residuals.e1), std::abs(f.residuals.e2),
                std::abs(f.residuals.e3));
  }
  for (const auto& probe : region_probes(p)) {
    const int n = count_iks(p, probe.point);
    std::printf("region (WS1 %s, WS2 %s): %d solutions at rho=%.3f z=%+.3f\n",
                probe.inside_ws1 ? "in " : "out", probe.inside_ws2 ? "in " : "out", n,
                probe.point.rho, probe.point.z);
    if (n != 4) continue;
    for (const auto& s : inverse_kinematics(p, {probe.point.rho, 0.0, probe.point.z})) {
      std::printf("    q = (%+.6f, %+.6f, %+.6f)  residual %.1e\n", s.q.theta1, s.q.theta2,
                  s.q.theta3, s.residual);
    }
  }
}
