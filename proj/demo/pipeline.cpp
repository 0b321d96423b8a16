// From a catalog entry to its Einstein metrics, twice: once by solving
// r1 = ... = rs directly, once by reading the equilibria at infinity of the
// compactified flow.

#include "ricciflow/einstein.hpp"

#include <cstdio>

int main(int argc, char** argv) {
  using namespace ricciflow;
  const FlagSpace& sp = find_space(argc > 1 ? argv[1] : "G2/U(2)-long");
  std::printf("%s  dims", sp.id.c_str());
  for (int d : sp.dims) std::printf(" %d", d);
  std::printf("  n=%d\n", sp.n);

  std::printf("direct solve:\n");
  for (const auto& e : solve_einstein(sp)) {
    std::printf("  (");
    for (std::size_t k = 0; k < e.metric.size(); ++k) std::printf(k ? ", %.6g" : "%.6g", e.metric[k]);
    std::printf(")  residual %.2e%s\n", e.residual, e.is_kahler ? "  Kahler" : "");
  }

  std::printf("equilibria at infinity (chart U1):\n");
  const FixedPointSearch fps = infinity_fixed_points(sp);
  for (const auto& r : fps.points) {
    std::printf("  z = (");
    for (std::size_t k = 0; k + 1 < r.z.size(); ++k) std::printf(k ? ", %.6g" : "%.6g", r.z[k]);
    std::printf(")  %s  transverse %.4g\n", std::string(to_string(r.classification)).c_str(), r.transverse_eigenvalue);
  }
}
