// Thermal-state machinery: partition sums, the mean-energy solve, the
// finite-domain uniform rule, and the convergence abscissa.
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "optham/gibbs.hpp"
#include "optham/hamiltonian.hpp"

using namespace optham;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Levels ln i with the integral bound sum_{i>=j} i^{-b} <= j^{-b} +
// j^{1-b}/(b-1) for b > 1, divergent otherwise.
Hamiltonian log_levels() {
  return Hamiltonian::generated(
      [](std::size_t i) { return std::log(static_cast<double>(i)); },
      [](double b, std::size_t j) -> double {
        if (b <= 1.0) return kInfinity;
        double jd = static_cast<double>(j);
        return std::pow(jd, -b) + std::pow(jd, 1.0 - b) / (b - 1.0);
      });
}

}  // namespace

TEST_CASE("partition sums in closed form") {
  Hamiltonian qubit = Hamiltonian::finite({0.0, 1.0});
  CHECK_THAT(partition_function(qubit, std::log(3.0)),
             WithinRel(4.0 / 3.0, 1e-14));

  Hamiltonian flat = Hamiltonian::finite({0.0, 0.0, 0.0});
  CHECK_THAT(partition_function(flat, 2.7), WithinRel(3.0, 1e-15));

  Hamiltonian number_op = Hamiltonian::arithmetic_tail({0.0, 1.0}, 1.0);
  CHECK_THAT(partition_function(number_op, std::log(2.0)),
             WithinRel(2.0, 1e-13));
}

TEST_CASE("mean energy in closed form") {
  Hamiltonian qubit = Hamiltonian::finite({0.0, 1.0});
  CHECK_THAT(mean_energy(qubit, std::log(3.0)), WithinAbs(0.25, 1e-14));

  Hamiltonian number_op = Hamiltonian::arithmetic_tail({0.0, 1.0}, 1.0);
  CHECK_THAT(mean_energy(number_op, std::log(2.0)), WithinRel(1.0, 1e-12));
}

TEST_CASE("convergence abscissa") {
  CHECK(convergence_abscissa(Hamiltonian::finite({0.0, 1.0})) == 0.0);
  CHECK(convergence_abscissa(Hamiltonian::arithmetic_tail({0.0, 1.0}, 1.0)) ==
        0.0);
  CHECK_THAT(convergence_abscissa(log_levels()), WithinAbs(1.0, 1e-8));
}

TEST_CASE("series without usable certificates refuse loudly") {
  Hamiltonian H = log_levels();
  CHECK(partition_function(H, 0.5) == kInfinity);
  // Convergent but slow: the certified error exceeds the 1e-9 mean-energy
  // budget, so the query must refuse rather than return a sloppy value.
  CHECK_THROWS_AS(mean_energy(H, 2.0), NoConvergenceCertificate);
}

TEST_CASE("gibbs ceiling") {
  CHECK_THAT(max_mean_energy(Hamiltonian::finite({0.0, 1.0})),
             WithinAbs(0.5, 1e-15));
  CHECK(max_mean_energy(Hamiltonian::arithmetic_tail({0.0, 1.0}, 1.0)) ==
        kInfinity);
}

TEST_CASE("thermal solve on a qubit") {
  Hamiltonian qubit = Hamiltonian::finite({0.0, 1.0});
  GibbsState st = solve_gibbs(qubit, 0.25);
  CHECK_THAT(st.beta, WithinAbs(std::log(3.0), 1e-11));
  CHECK_THAT(st.mean_energy, WithinAbs(0.25, 1e-12));
  REQUIRE(st.weights.size() == 2);
  CHECK_THAT(st.weights[0], WithinAbs(0.75, 1e-12));
  CHECK_THAT(st.weights[1], WithinAbs(0.25, 1e-12));
  CHECK_THAT(st.entropy, WithinAbs(0.5623351446188083, 1e-12));
  CHECK_FALSE(st.finite_dim_uniform);
}

TEST_CASE("finite-domain uniform rule at and above the ceiling") {
  Hamiltonian qubit = Hamiltonian::finite({0.0, 1.0});
  for (double e : {0.5, 0.6, 5.0}) {
    GibbsState st = solve_gibbs(qubit, e);
    CHECK(st.finite_dim_uniform);
    CHECK(st.beta == 0.0);
    CHECK_THAT(st.entropy, WithinRel(std::log(2.0), 1e-15));
    CHECK_THAT(st.mean_energy, WithinAbs(0.5, 1e-15));
  }
  Hamiltonian flat = Hamiltonian::finite({0.0, 0.0, 0.0});
  GibbsState st = solve_gibbs(flat, 0.1);
  CHECK(st.finite_dim_uniform);
  CHECK_THAT(st.entropy, WithinRel(std::log(3.0), 1e-15));
}

TEST_CASE("thermal solve on the number operator") {
  Hamiltonian number_op = Hamiltonian::arithmetic_tail({0.0, 1.0}, 1.0);
  GibbsState st = solve_gibbs(number_op, 1.0);
  CHECK_THAT(st.beta, WithinAbs(std::log(2.0), 1e-11));
  CHECK_THAT(st.entropy, WithinAbs(2.0 * std::log(2.0), 1e-11));
  CHECK(st.weight_tail <= 1e-13);
  REQUIRE(st.weights.size() >= 20);
  CHECK_THAT(st.weights[0], WithinAbs(0.5, 1e-11));
  CHECK_THAT(st.weights[3], WithinAbs(1.0 / 16.0, 1e-11));
  double cum = st.weight_tail;
  for (double w : st.weights) cum += w;
  CHECK_THAT(cum, WithinAbs(1.0, 1e-10));
}

TEST_CASE("maximal entropy under a mean-energy budget") {
  Hamiltonian qubit = Hamiltonian::finite({0.0, 1.0});
  CHECK_THAT(max_entropy(qubit, 0.25), WithinAbs(0.5623351446188083, 1e-12));
  CHECK_THAT(max_entropy(qubit, 0.7), WithinRel(std::log(2.0), 1e-15));
  CHECK_THAT(max_entropy(qubit, 0.5), WithinRel(std::log(2.0), 1e-12));

  Hamiltonian flat = Hamiltonian::finite({0.0, 0.0, 0.0});
  CHECK_THAT(max_entropy(flat, 0.01), WithinRel(std::log(3.0), 1e-15));

  Hamiltonian number_op = Hamiltonian::arithmetic_tail({0.0, 1.0}, 1.0);
  CHECK_THAT(max_entropy(number_op, 1.0),
             WithinAbs(2.0 * std::log(2.0), 1e-11));
}

TEST_CASE("solver residuals stay within certificate") {
  // Random-ish finite level sets at several targets: the returned state's
  // mean must reproduce E to the solver's advertised accuracy.
  std::vector<std::vector<double>> sets = {
      {0.0, 0.3, 1.1, 2.0}, {0.0, 1.0, 1.0, 4.5}, {0.0, 0.01, 0.02, 9.0}};
  for (const auto& levels : sets) {
    Hamiltonian H = Hamiltonian::finite(levels);
    double ceiling = max_mean_energy(H);
    for (double frac : {0.1, 0.45, 0.9}) {
      double e = frac * ceiling;
      GibbsState st = solve_gibbs(H, e);
      CHECK_THAT(st.mean_energy, WithinAbs(e, 1e-10 * std::max(1.0, e)));
    }
  }
}

TEST_CASE("level validation") {
  CHECK_THROWS_AS(Hamiltonian::finite({0.5, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(Hamiltonian::finite({0.0, 2.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(Hamiltonian::finite({}), std::invalid_argument);
  CHECK_THROWS_AS(Hamiltonian::arithmetic_tail({0.0, 1.0}, 0.0),
                  NoConvergenceCertificate);
  CHECK_THROWS_AS(solve_gibbs(Hamiltonian::finite({0.0, 1.0}), 0.0),
                  std::invalid_argument);
}
