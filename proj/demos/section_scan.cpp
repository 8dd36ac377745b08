// Coarse (a2, a3) section at d2 = 0.5 written as CSV and SVG into the working
// directory, with the agreement summary on stdout.

#include "orthoiks/orthoiks.hpp"

#include <fstream>
#include <iostream>

int main() {
  using namespace orthoiks;
  ScanSpec spec;
  spec.fixed = {{Param::A1, 1.0}, {Param::D2, 0.5}};
  spec.x = Axis{Param::A2, 0.0, 3.0, 0.1};
  spec.y = Axis{Param::A3, 0.0, 3.0, 0.1};
  const auto cells = scan_section(spec);
  std::ofstream("section_d2_0.5.csv") << [&] {
    std::ostringstream s;
    write_scan_csv(s, spec, cells);
    return s.str();
  }();
  std::ofstream("section_d2_0.5.svg") << scan_svg(spec, cells);
  std::cout << scan_summary(spec, agreement_report(cells))["counts"].dump(2) << '\n';
}
