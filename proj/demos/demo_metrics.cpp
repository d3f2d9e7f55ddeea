// Compares the three equivalent distance formulas on a handful of disc
// points: the Birkhoff gauge product, the acosh form, and the cross-ratio.

#include <cstdio>

#include "horoklein/horoklein.hpp"

using namespace horoklein;

int main() {
  const DiscPoint points[] = {
      DiscPoint(SparseVector{}),
      DiscPoint(SparseVector::unit(1, 0.5)),
      DiscPoint(SparseVector::unit(2, 0.5)),
      DiscPoint({{1, 0.3}, {2, -0.4}}),
      DiscPoint({{3, 0.7}, {7, 0.2}}),
  };

  std::printf("%-4s %-4s %18s %18s %18s\n", "i", "j", "birkhoff", "arccosh",
              "cross-ratio");
  const int n = sizeof(points) / sizeof(points[0]);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const ConeVector u = points[i].as_cone();
      const ConeVector v = points[j].as_cone();
      std::printf("%-4d %-4d %18.15f %18.15f %18.15f\n", i, j,
                  birkhoff_distance(u, v), hyperbolic_distance(u, v),
                  cross_ratio_distance(points[i], points[j]));
    }
  }
  return 0;
}
