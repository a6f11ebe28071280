// Semicontinuity bound evaluator: envelope, main term, preset catalog.
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <set>

#include "optham/bounds.hpp"

using namespace optham;
using Catch::Matchers::WithinAbs;

TEST_CASE("binary entropy envelope") {
  CHECK(binary_entropy_envelope(0.0) == 0.0);
  CHECK_THAT(binary_entropy_envelope(0.25), WithinAbs(0.5623351446188083, 1e-15));
  CHECK_THAT(binary_entropy_envelope(0.5), WithinAbs(std::numbers::ln2, 1e-15));
  // Above one half the envelope is the exact constant, not a computed sum.
  CHECK(binary_entropy_envelope(0.8) == std::numbers::ln2);
  CHECK(binary_entropy_envelope(1.0) == std::numbers::ln2);

  double prev = 0.0;
  for (int i = 1; i <= 100; ++i) {
    double value = binary_entropy_envelope(i / 100.0);
    CHECK(value >= prev - 1e-15);
    prev = value;
  }

  CHECK_THROWS_AS(binary_entropy_envelope(-0.1), OutOfRange);
  CHECK_THROWS_AS(binary_entropy_envelope(1.1), OutOfRange);
}

TEST_CASE("main term at eps = 1 is the entropy of the state") {
  Spectrum osc = Spectrum::oscillator(1.0);
  CHECK_THAT(semicontinuity_main_term(osc, 1.0),
             WithinAbs(2.0 * std::log(2.0), 1e-12));
  Spectrum flat = Spectrum::uniform(10);
  CHECK_THAT(semicontinuity_main_term(flat, 1.0),
             WithinAbs(std::log(10.0), 1e-14));

  // Smaller eps means a larger energy window, so the term grows.
  CHECK(semicontinuity_main_term(osc, 0.1) >
        semicontinuity_main_term(osc, 0.5));
  CHECK(semicontinuity_main_term(osc, 0.5) >
        semicontinuity_main_term(osc, 1.0));

  CHECK_THROWS_AS(semicontinuity_main_term(osc, 0.0), OutOfRange);
  CHECK_THROWS_AS(semicontinuity_main_term(osc, 1.0001), OutOfRange);
}

TEST_CASE("preset catalog") {
  const auto& table = characteristic_presets();
  REQUIRE(table.size() == 10);
  std::set<std::string> names;
  for (const auto& p : table) {
    CHECK(!p.name.empty());
    CHECK(!p.metric_note.empty());
    CHECK((p.C == 1.0 || p.C == 2.0));
    CHECK((p.D == 1.0 || p.D == 2.0));
    names.insert(p.name);
  }
  CHECK(names.size() == table.size());

  const auto& vn = find_preset("von Neumann entropy");
  CHECK(vn.C == 1.0);
  CHECK(vn.D == 1.0);
  const auto& mi = find_preset("quantum mutual information, commuting");
  CHECK(mi.C == 2.0);
  CHECK(mi.D == 2.0);
  const auto& discord = find_preset("quantum discord, measured A1, commuting");
  CHECK(discord.C == 1.0);
  CHECK(discord.D == 2.0);
  CHECK_THROWS_AS(find_preset("spooky action"), BadConfig);
}

TEST_CASE("bound assembles coefficients, main term, and envelope") {
  Spectrum osc = Spectrum::oscillator(1.0);
  double eps = 0.1;
  double main = semicontinuity_main_term(osc, eps);
  double env = binary_entropy_envelope(eps);

  CHECK_THAT(semicontinuity_bound(osc, eps, find_preset("von Neumann entropy")),
             WithinAbs(eps * main + env, 1e-14));
  CHECK_THAT(semicontinuity_bound(osc, eps,
                                  find_preset("quantum mutual information, "
                                              "commuting")),
             WithinAbs(2.0 * eps * main + 2.0 * env, 1e-14));
  CHECK_THAT(semicontinuity_bound(osc, eps,
                                  "quantum discord, measured A1, commuting"),
             WithinAbs(eps * main + 2.0 * env, 1e-14));
  CHECK_THROWS_AS(semicontinuity_bound(osc, eps, "nope"), BadConfig);
}
