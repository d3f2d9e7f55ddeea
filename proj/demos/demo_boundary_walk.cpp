// Walks the two constructive sequences toward their horofunctions and prints
// how fast i(x_n) = d(x_n, .) - d(x_n, b) closes in on the closed form.
//
// The drift sequence nails its horofunction exactly from the first term (its
// terms are orthogonal to every probe), while the boundary approach converges
// like 1/n.

#include <cstdio>

#include "horoklein/horoklein.hpp"

using namespace horoklein;

namespace {

double sup_probe_gap(const DiscPoint& x, const HoroParams& target) {
  double sup = 0.0;
  for (const DiscPoint& probe : default_probes()) {
    const double gap =
        std::abs(i_embed(x, probe.as_cone()) - horo_eval(target, probe.as_cone()));
    sup = std::max(sup, gap);
  }
  return sup;
}

void walk(const char* label, const PointSequence& seq) {
  std::printf("%s -> (x_hat, r) = (%s, %g)%s\n", label,
              to_json(seq.target()->x_hat()).dump().c_str(), seq.target()->r(),
              seq.target()->is_busemann() ? "  [Busemann]" : "");
  for (std::size_t n : {0, 1, 10, 100, 1000}) {
    std::printf("  n = %4zu   |x_n| = %.12f   sup-probe gap = %.3e\n", n,
                norm(seq.term(n).spatial()), sup_probe_gap(seq.term(n), *seq.target()));
  }
}

}  // namespace

int main() {
  walk("orthonormal drift, x_hat = 0.3 e1, r = 0.8",
       gen_orthonormal_drift(SparseVector::unit(1, 0.3), 0.8, 10));
  walk("boundary approach, x_hat = e1", gen_boundary_approach(SparseVector::unit(1)));
  walk("damped drift, x_hat = 0, r = 1", gen_orthonormal_drift(SparseVector{}, 1.0, 6));
  return 0;
}
