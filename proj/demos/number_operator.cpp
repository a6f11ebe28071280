// Demo: for the thermal (geometric) spectrum with mean level index E0, the
// entropy-minimizing levels at mean energy E = E0 are exactly 0, 1, 2, ...,
// and the spectrum's own entropy is the floor. Away from E = E0 the levels
// stay affine in the level index but change scale and kernel.
#include <cstdio>

#include "optham/optham.hpp"

int main() {
  using namespace optham;

  double budget = 1.0;
  Spectrum spec = Spectrum::oscillator(budget);

  std::printf("thermal spectrum with mean level index E0 = %g (q = %g)\n",
              budget, spec.ratio());
  for (double energy : {1.0, 0.5, 3.0}) {
    OptimalHamiltonian opt = optimal_hamiltonian(spec, budget, energy);
    std::printf("\nE = %-4g  kernel m = %zu  beta = %.8f  entropy = %.8f\n",
                energy, opt.kernel_dim(), opt.beta(),
                optimal_entropy(spec, budget, energy));
    std::printf("  levels:");
    for (std::size_t i = 1; i <= 8; ++i) std::printf(" %.6f", opt.level(i));
    std::printf(" ...\n");

    GibbsState gibbs = optimal_gibbs(spec, budget, energy);
    std::printf("  thermal check: mean = %.12f  entropy = %.12f\n",
                gibbs.mean_energy, gibbs.entropy);
  }
  std::printf("\nat E = E0 the construction returns the number operator and\n"
              "the floor equals the spectrum entropy %.12f\n", spec.entropy());
  return 0;
}
