// Demo: the minimal-entropy floor of a fixed spectrum as the mean-energy
// target grows, next to the unconstrained thermal envelope at the same mean
// energy. The floor rises to ln n for finite ranks; the envelope keeps
// climbing.
#include <cstdio>

#include "optham/optham.hpp"

int main() {
  using namespace optham;

  Spectrum spec = Spectrum::linear(10);
  double budget = 1.0;

  std::printf("spectrum: linear(10), budget E0 = %g\n", budget);
  std::printf("%10s %8s %4s %6s %12s %12s\n", "E", "theta", "m", "case",
              "S_floor", "S_envelope");
  for (CurveRow row : entropy_curve(spec, budget, 0.25, 8.0, 16)) {
    std::printf("%10.4f %8.4f %4zu %6c %12.8f %12.8f\n", row.E, row.theta,
                row.m, regime_label(row.regime), row.entropy,
                Spectrum::oscillator(row.E).entropy());
  }

  std::printf("\nabove E = %.4f the floor saturates at ln 10 = %.8f\n",
              budget / (spec.eigenvalue(10) * 10.0),
              optimal_entropy(spec, budget, 10.0));
  return 0;
}
