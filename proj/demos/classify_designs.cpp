// Classifies a few designs with the closed-form rule and the two numerical
// oracles and prints one line per design.

#include "orthoiks/orthoiks.hpp"

#include <cstdio>
#include <string>
#include <vector>

int main() {
  using namespace orthoiks;
  const std::vector<DhParams> designs = {
      DhParams(1, 0.5, 0.15, 0.21), DhParams(1, 0.5, 0.4, 0.1), DhParams(1, 0.5, 0.45, 0.4),
      DhParams(1, 2, 1.5, 1),       DhParams(1, 3, 4, 3),       DhParams(2, 3, 1, 1),
  };
  std::printf("%-28s %-11s %-18s %-11s %-11s %s\n", "a1 a2 a3 d2", "closed", "rule", "cusp scan",
              "grid IKS", "threshold");
  for (const auto& p : designs) {
    const auto r = classify(p);
    const Verdict cusp = numerical_classify(p);
    const int iks = grid_iks_oracle(p);
    char label[64];
    std::snprintf(label, sizeof label, "%g %g %g %g", p.a1(), p.a2(), p.a3(), p.d2());
    std::printf("%-28s %-11s %-18s %-11s %-11d %s\n", label, std::string(to_string(r.verdict)).c_str(),
                std::string(to_string(r.rule)).c_str(), std::string(to_string(cusp)).c_str(), iks,
                r.threshold ? std::to_string(*r.threshold).c_str() : "-");
  }
}
