// The entropy-minimizing construction: breakpoints, classification, levels,
// the closed-form minimum, and its Gibbs state.
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "optham/optimal.hpp"

using namespace optham;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("breakpoints of the linear spectrum") {
  // E_k = E0 (n)(n+1) / ((n+k)(n-k+1)) for n = 10, E0 = 1.
  BreakpointTable table(Spectrum::linear(10), 1.0);
  CHECK(table.energy(1) == 0.0);
  for (std::size_t k = 2; k <= 10; ++k) {
    double expect = 110.0 / static_cast<double>((10 + k) * (11 - k));
    CHECK_THAT(table.energy(k), WithinRel(expect, 1e-14));
  }
  CHECK_THAT(table.energy(2), WithinRel(110.0 / 108.0, 1e-14));
  CHECK_THAT(table.energy(10), WithinRel(5.5, 1e-14));
  CHECK_THROWS_AS(table.energy(0), std::invalid_argument);
  CHECK_THROWS_AS(table.energy(11), std::invalid_argument);
}

TEST_CASE("classification against the linear spectrum") {
  Spectrum spec = Spectrum::linear(10);

  Classification at_cap = classify(spec, 1.0, 5.5);
  CHECK(at_cap.regime == Regime::A);
  CHECK(at_cap.m == 9);

  Classification above = classify(spec, 1.0, 80.0);
  CHECK(above.regime == Regime::A);

  Classification just_below = classify(spec, 1.0, 5.4999);
  CHECK(just_below.regime == Regime::B);
  CHECK(just_below.m == 9);

  // Right-closed membership at a breakpoint: E_2 belongs to the m = 1 cell,
  // and anything visibly above it to m = 2.
  double e2 = 110.0 / 108.0;
  CHECK(classify(spec, 1.0, e2).m == 1);
  CHECK(classify(spec, 1.0, e2 * (1.0 + 1e-11)).m == 2);
  CHECK(classify(spec, 1.0, 0.2).m == 1);
}

TEST_CASE("uniform spectrum saturates at its budget") {
  Spectrum spec = Spectrum::uniform(10);
  // Every breakpoint sits at E0, so regime A starts exactly there.
  CHECK(classify(spec, 1.0, 1.0).regime == Regime::A);
  CHECK(classify(spec, 1.0, 1.0).m == 1);
  CHECK(classify(spec, 1.0, 0.999).regime == Regime::B);
  CHECK(classify(spec, 1.0, 0.999).m == 1);

  CHECK_THAT(optimal_entropy(spec, 1.0, 1.0), WithinRel(std::log(10.0), 1e-15));
  CHECK_THAT(optimal_entropy(spec, 1.0, 7.3), WithinRel(std::log(10.0), 1e-15));

  // theta = 1/2 closed form: 0.45 ln 10 + eta(0.55) + 0.9 eta(0.5).
  double expect = 0.45 * std::log(10.0) + eta(0.55) + 0.9 * eta(0.5);
  CHECK_THAT(optimal_entropy(spec, 1.0, 0.5), WithinAbs(expect, 1e-15));
  CHECK_THAT(optimal_entropy(spec, 1.0, 0.5), WithinAbs(1.6768898735148874, 1e-12));

  // Regime-A levels: zero kernel and the shared cap E0/(p_n (n - m)).
  OptimalHamiltonian cap = optimal_hamiltonian(spec, 1.0, 2.0);
  CHECK(cap.level(1) == 0.0);
  CHECK_THAT(cap.level(2), WithinRel(10.0 / 9.0, 1e-14));
  CHECK_THAT(cap.level(10), WithinRel(10.0 / 9.0, 1e-14));
}

TEST_CASE("degenerate multiplier right below the cap") {
  CHECK_THROWS_AS(optimal_hamiltonian(Spectrum::uniform(10), 1.0,
                                      0.9999999999999999),
                  DegenerateBeta);
}

TEST_CASE("geometric spectrum at its own mean energy gives the number operator") {
  Spectrum spec = Spectrum::oscillator(1.0);
  OptimalHamiltonian opt = optimal_hamiltonian(spec, 1.0, 1.0);
  CHECK(opt.regime() == Regime::B);
  CHECK(opt.kernel_dim() == 1);
  CHECK_THAT(opt.beta(), WithinRel(std::log(2.0), 1e-13));
  for (std::size_t i = 1; i <= 20; ++i) {
    CHECK_THAT(opt.level(i), WithinAbs(static_cast<double>(i - 1), 1e-9));
  }
  CHECK_THAT(optimal_entropy(spec, 1.0, 1.0),
             WithinAbs(2.0 * std::log(2.0), 1e-12));
  CHECK_THAT(optimal_entropy(spec, 1.0, 1.0), WithinRel(spec.entropy(), 1e-13));

  // The thermal solve on the constructed levels returns the same multiplier.
  GibbsState direct = solve_gibbs(opt.to_hamiltonian(), 1.0);
  CHECK_THAT(direct.beta, WithinAbs(std::log(2.0), 1e-10));
  CHECK_THAT(direct.entropy, WithinAbs(2.0 * std::log(2.0), 1e-10));
}

TEST_CASE("multiplier equals the slope of the minimum in theta") {
  Spectrum spec = Spectrum::oscillator(1.0);
  double h = 1e-6;
  for (double e : {0.5, 1.0, 2.5}) {
    OptimalHamiltonian opt = optimal_hamiltonian(spec, 1.0, e);
    double slope =
        (optimal_entropy(spec, 1.0, e + h) - optimal_entropy(spec, 1.0, e - h)) /
        (2.0 * h);
    CHECK_THAT(slope, WithinAbs(opt.beta(), 1e-5));
  }
}

TEST_CASE("fixed-point weights of the optimal construction") {
  SECTION("interior regime, uniform spectrum") {
    GibbsState st = optimal_gibbs(Spectrum::uniform(10), 1.0, 0.5);
    REQUIRE(st.weights.size() == 10);
    CHECK_THAT(st.weights[0], WithinAbs(0.55, 1e-14));
    for (std::size_t i = 1; i < 10; ++i) {
      CHECK_THAT(st.weights[i], WithinAbs(0.05, 1e-14));
    }
    double mass = st.weight_tail;
    for (double w : st.weights) mass += w;
    CHECK_THAT(mass, WithinAbs(1.0, 1e-13));
    CHECK_THAT(st.mean_energy, WithinAbs(0.5, 1e-12));
    CHECK_THAT(st.entropy,
               WithinAbs(optimal_entropy(Spectrum::uniform(10), 1.0, 0.5),
                         1e-13));
  }
  SECTION("cap regime is uniform") {
    GibbsState st = optimal_gibbs(Spectrum::linear(10), 1.0, 6.0);
    CHECK(st.finite_dim_uniform);
    CHECK_THAT(st.entropy, WithinRel(std::log(10.0), 1e-15));
    CHECK_THAT(st.mean_energy, WithinRel(5.5, 1e-14));
  }
  SECTION("geometric spectrum materializes until the tail is negligible") {
    GibbsState st = optimal_gibbs(Spectrum::oscillator(1.0), 1.0, 0.7);
    CHECK(st.weight_tail <= 1.0000001e-13);
    double mass = st.weight_tail;
    for (double w : st.weights) mass += w;
    CHECK_THAT(mass, WithinAbs(1.0, 1e-12));
    CHECK_THAT(st.mean_energy, WithinAbs(0.7, 1e-11));
    CHECK_THAT(st.entropy,
               WithinAbs(optimal_entropy(Spectrum::oscillator(1.0), 1.0, 0.7),
                         1e-11));
    CHECK_THAT(st.beta,
               WithinRel(optimal_hamiltonian(Spectrum::oscillator(1.0), 1.0, 0.7)
                             .beta(),
                         1e-13));
  }
}

TEST_CASE("levels price the spectrum exactly at the budget") {
  struct Case {
    Spectrum spec;
    double budget;
    double energy;
  };
  std::vector<Case> cases = {
      {Spectrum::linear(10), 2.0, 1.3},
      {Spectrum::uniform(6), 0.7, 0.2},
      {Spectrum::from_probabilities({0.4, 0.3, 0.2, 0.1}), 1.0, 0.9},
      {Spectrum::oscillator(1.0), 1.0, 0.6},
  };
  for (const Case& c : cases) {
    OptimalHamiltonian opt = optimal_hamiltonian(c.spec, c.budget, c.energy);
    std::size_t n = c.spec.finite_rank() ? c.spec.rank() : 80;
    double priced = 0.0;
    for (std::size_t i = n; i >= 1; --i) {
      priced += c.spec.eigenvalue(i) * opt.level(i);
    }
    CHECK_THAT(priced, WithinAbs(c.budget, 1e-12 * std::max(1.0, c.budget)));
  }
}

TEST_CASE("pure-point construction reproduces the state itself at theta = 1") {
  Spectrum spec = Spectrum::from_probabilities({0.5, 0.3, 0.2});
  OptimalHamiltonian opt = optimal_hamiltonian(spec, 1.0, 1.0);
  double denom = spec.entropy() + std::log(0.5);
  for (std::size_t i = 1; i <= 3; ++i) {
    double expect = (std::log(0.5) - std::log(spec.eigenvalue(i))) / denom;
    CHECK_THAT(opt.level(i), WithinAbs(expect, 1e-13));
  }
  GibbsState st = optimal_gibbs(spec, 1.0, 1.0);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK_THAT(st.weights[i], WithinAbs(spec.eigenvalue(i + 1), 1e-14));
  }
  CHECK_THAT(st.entropy, WithinRel(spec.entropy(), 1e-14));
  CHECK_THAT(st.mean_energy, WithinAbs(1.0, 1e-13));
}

TEST_CASE("scale covariance in the energy pair") {
  Spectrum spec = Spectrum::linear(8);
  OptimalHamiltonian base = optimal_hamiltonian(spec, 1.0, 0.8);
  for (double c : {0.1, 3.0, 42.0}) {
    OptimalHamiltonian scaled = optimal_hamiltonian(spec, c, 0.8 * c);
    CHECK(scaled.kernel_dim() == base.kernel_dim());
    CHECK_THAT(optimal_entropy(spec, c, 0.8 * c),
               WithinAbs(optimal_entropy(spec, 1.0, 0.8), 1e-12));
    for (std::size_t i = 1; i <= 8; ++i) {
      CHECK_THAT(scaled.level(i), WithinAbs(c * base.level(i), 1e-10 * c));
    }
  }
}

TEST_CASE("truncated heads work without a tail certificate") {
  std::vector<double> head;
  for (std::size_t i = 0; i < 50; ++i) head.push_back(0.5 * std::pow(0.5, i));
  Spectrum trunc = Spectrum::truncated(head, 1e-12);
  Spectrum exact = Spectrum::oscillator(1.0);

  OptimalHamiltonian a = optimal_hamiltonian(trunc, 1.0, 0.7);
  OptimalHamiltonian b = optimal_hamiltonian(exact, 1.0, 0.7);
  CHECK(a.kernel_dim() == b.kernel_dim());
  for (std::size_t i = 1; i <= 10; ++i) {
    CHECK_THAT(a.level(i), WithinAbs(b.level(i), 1e-9));
  }
  CHECK_THAT(optimal_entropy(trunc, 1.0, 0.7),
             WithinAbs(optimal_entropy(exact, 1.0, 0.7), 1e-9));
  CHECK_THROWS_AS(a.to_hamiltonian(), NoConvergenceCertificate);

  GibbsState st = optimal_gibbs(trunc, 1.0, 0.7);
  double mass = st.weight_tail;
  for (double w : st.weights) mass += w;
  CHECK_THAT(mass, WithinAbs(1.0, 1e-11));
}

TEST_CASE("entropy curve is monotone with nondecreasing kernel") {
  Spectrum spec = Spectrum::linear(10);
  std::vector<CurveRow> rows = entropy_curve(spec, 1.0, 0.2, 7.0, 200);
  REQUIRE(rows.size() == 200);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].entropy >= rows[i - 1].entropy - 1e-12);
    CHECK(rows[i].m >= rows[i - 1].m);
  }
  CHECK(rows.front().regime == Regime::B);
  CHECK(rows.back().regime == Regime::A);
  CHECK_THAT(rows.back().entropy, WithinRel(std::log(10.0), 1e-14));
  CHECK_THAT(rows.front().theta, WithinRel(0.2, 1e-15));

  CHECK_THROWS_AS(entropy_curve(spec, 1.0, 0.0, 2.0, 5), std::invalid_argument);
  CHECK_THROWS_AS(entropy_curve(spec, 1.0, 2.0, 1.0, 5), std::invalid_argument);
}

TEST_CASE("bad energy pairs are rejected") {
  Spectrum spec = Spectrum::uniform(4);
  CHECK_THROWS_AS(optimal_hamiltonian(spec, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(optimal_hamiltonian(spec, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(optimal_hamiltonian(spec, 1.0, -2.0), std::invalid_argument);
  CHECK_THROWS_AS(optimal_entropy(spec, -1.0, 1.0), std::invalid_argument);
}
