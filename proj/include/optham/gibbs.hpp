// gibbs.hpp: Gibbs states of grounded Hamiltonians. Solves the mean-energy
// equation sum h_i e^{-b h_i} = E sum e^{-b h_i} for b, applies the finite-
// domain rule (uniform state once E reaches the level average), and exposes
// the maximal entropy compatible with a mean-energy budget.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "optham/errors.hpp"
#include "optham/hamiltonian.hpp"
#include "optham/numeric.hpp"

namespace optham {

struct GibbsState {
  double beta = 0.0;                // weights follow exp(-beta h_i)
  std::vector<double> weights;      // head occupation probabilities
  double weight_tail = 0.0;         // mass past the stored head (<= 1e-13)
  double mean_energy = 0.0;
  double entropy = 0.0;             // nats
  bool finite_dim_uniform = false;  // beta = 0 rule on a finite domain
};

// Z(b); +inf when the series diverges.
inline double partition_function(const Hamiltonian& H, double b) {
  SeriesValue z = H.boltzmann_sum(b);
  if (z.divergent) return kInfinity;
  if (!z.certified) {
    throw NoConvergenceCertificate("partition sum has no tail certificate");
  }
  return z.value;
}

namespace detail {

struct Mean {
  double value = 0.0;
  double err = 0.0;
  bool divergent = false;
  bool certified = true;
};

inline Mean mean_energy_certified(const Hamiltonian& H, double b) {
  Mean m;
  SeriesValue z = H.boltzmann_sum(b);
  if (z.divergent) {
    m.divergent = true;
    return m;
  }
  SeriesValue w = H.energy_sum(b);
  if (w.divergent) {
    m.divergent = true;
    return m;
  }
  if (!z.certified || !w.certified) {
    m.certified = false;
    return m;
  }
  m.value = w.value / z.value;
  m.err = 2.0 * (w.err + std::abs(m.value) * z.err) / z.value;
  return m;
}

}  // namespace detail

// <H>_b = Z'(b)-weighted level average at parameter b.
inline double mean_energy(const Hamiltonian& H, double b) {
  detail::Mean m = detail::mean_energy_certified(H, b);
  if (m.divergent) {
    throw std::invalid_argument("mean energy undefined: Z(b) diverges");
  }
  if (!m.certified || m.err > 1e-9 * std::max(1.0, std::abs(m.value))) {
    throw NoConvergenceCertificate("mean energy not certified at this b");
  }
  return m.value;
}

// Infimum of b with Z(b) < inf, bisected to absolute 1e-9. Exact 0 for
// finite domains and arithmetic tails.
inline double convergence_abscissa(const Hamiltonian& H) {
  if (H.finite_domain()) return 0.0;
  auto diverges = [&](double b) {
    SeriesValue z = H.boltzmann_sum(b);
    if (!z.divergent && !z.certified) {
      throw NoConvergenceCertificate(
          "series class at b = " + std::to_string(b) + " not certifiable");
    }
    return z.divergent;
  };
  double hi = 1.0;
  while (diverges(hi)) {
    hi *= 2.0;
    if (hi > 1e18) {
      throw NoConvergenceCertificate("no convergent abscissa found");
    }
  }
  double lo = hi * 0.5;
  while (!diverges(lo)) {
    hi = lo;
    lo *= 0.5;
    if (lo < 1e-12) return 0.0;
  }
  while (hi - lo > 1e-9) {
    double mid = 0.5 * (lo + hi);
    (diverges(mid) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Largest mean energy a Gibbs state can reach: the level average on finite
// domains, the abscissa-limit of <H>_b otherwise. The abscissa is known to
// 1e-9 only, so divergence there is classified via the tail certificate and
// a 1e10 ceiling on the probed mean.
inline double max_mean_energy(const Hamiltonian& H) {
  if (H.finite_domain()) {
    double sum = 0.0;
    std::size_t n = H.dimension();
    for (std::size_t i = n; i >= 1; --i) sum += H.level(i);
    return sum / static_cast<double>(n);
  }
  double g = convergence_abscissa(H);
  if (g <= 1e-12) return kInfinity;  // Z(0) counts infinitely many levels
  double probe = g + 1e-9;
  SeriesValue z = H.boltzmann_sum(probe);
  if (z.divergent) return kInfinity;
  detail::Mean m = detail::mean_energy_certified(H, probe);
  if (m.divergent) return kInfinity;
  if (!m.certified) {
    throw NoConvergenceCertificate("mean energy at the abscissa probe");
  }
  if (m.value > 1e10) return kInfinity;
  return m.value;
}

namespace detail {

// Residual <H>_b - E with +inf standing for "Z diverges at b".
inline double gibbs_residual(const Hamiltonian& H, double b, double E) {
  Mean m = mean_energy_certified(H, b);
  if (m.divergent) return kInfinity;
  if (!m.certified) {
    throw NoConvergenceCertificate("residual not certifiable during solve");
  }
  return m.value - E;
}

// Root of the residual in (0, inf). Bracketing by doubling/halving from 1,
// then bisection with interpolation once both ends are finite.
inline double solve_beta(const Hamiltonian& H, double E) {
  auto resid = [&](double b) { return gibbs_residual(H, b, E); };
  double tol = 1e-13 * std::max(1.0, E);

  double lo = 0.0, hi = 0.0;  // resid(lo) > 0 (or diverged), resid(hi) < 0
  double r1 = resid(1.0);
  if (r1 == 0.0) return 1.0;
  if (std::isfinite(r1) && r1 < 0.0) {
    hi = 1.0;
    lo = 0.5;
    for (;;) {
      double r = resid(lo);
      if (r >= 0.0 || std::isinf(r)) break;
      hi = lo;
      lo *= 0.5;
      if (lo < 1e-300) {
        throw NoGibbsState("mean energy stays below E for every b");
      }
    }
  } else {
    lo = 1.0;
    hi = 2.0;
    while (resid(hi) > 0.0) {
      lo = hi;
      hi *= 2.0;
      if (hi > 1e30) {
        throw NoConvergenceCertificate("no sign change while bracketing");
      }
    }
  }

  double best_b = hi, best_r = resid(hi);
  double pb = kNaN, pr = kNaN;  // previous finite evaluation for interpolation
  for (int iter = 0; iter < 260 && std::abs(best_r) > tol; ++iter) {
    double mid;
    bool interpolated = false;
    if (!std::isnan(pb) && pr != best_r && std::isfinite(pr)) {
      mid = (pb * best_r - best_b * pr) / (best_r - pr);
      interpolated = mid > lo && mid < hi;
    }
    if (!interpolated) mid = 0.5 * (lo + hi);
    double r = resid(mid);
    if (std::isinf(r) || r > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (std::isfinite(r)) {
      if (std::abs(r) < std::abs(best_r)) {
        pb = best_b;
        pr = best_r;
        best_b = mid;
        best_r = r;
      } else {
        pb = mid;
        pr = r;
      }
    }
    if (hi - lo <= 1e-16 * std::max(1.0, hi)) break;
  }
  if (std::abs(best_r) > 1e-11 * std::max(1.0, E)) {
    if (!H.finite_domain() && best_r < 0.0) {
      throw NoGibbsState("requested mean energy exceeds the Gibbs ceiling");
    }
    throw NoConvergenceCertificate("Gibbs residual did not converge");
  }
  return best_b;
}

}  // namespace detail

// Gibbs state with mean energy E (E > 0). Finite domains return the uniform
// state once E >= the level average; infinite domains throw NoGibbsState
// when E is unreachable.
inline GibbsState solve_gibbs(const Hamiltonian& H, double E) {
  if (!(E > 0.0) || !std::isfinite(E)) {
    throw std::invalid_argument("solve_gibbs needs E > 0");
  }
  GibbsState st;
  if (H.finite_domain()) {
    std::size_t n = H.dimension();
    double ceiling = max_mean_energy(H);
    if (E >= ceiling) {
      st.beta = 0.0;
      st.finite_dim_uniform = true;
      st.weights.assign(n, 1.0 / static_cast<double>(n));
      st.mean_energy = ceiling;
      st.entropy = std::log(static_cast<double>(n));
      return st;
    }
  }
  double beta = detail::solve_beta(H, E);
  double z = partition_function(H, beta);
  st.beta = beta;
  st.mean_energy = mean_energy(H, beta);
  st.entropy = beta * st.mean_energy + std::log(z);
  if (H.finite_domain()) {
    std::size_t n = H.dimension();
    st.weights.resize(n);
    for (std::size_t i = 1; i <= n; ++i) {
      st.weights[i - 1] = std::exp(-beta * H.level(i)) / z;
    }
  } else {
    double cum = 0.0;
    for (std::size_t i = 1; i <= Hamiltonian::kTermBudget; ++i) {
      double w = std::exp(-beta * H.level(i)) / z;
      st.weights.push_back(w);
      cum += w;
      if (1.0 - cum <= 1e-13) break;
    }
    st.weight_tail = std::max(0.0, 1.0 - cum);
    if (st.weight_tail > 1e-13) {
      throw NoConvergenceCertificate("weight head does not cover the state");
    }
  }
  return st;
}

// Largest entropy among states with mean energy <= E: the entropy of the
// Gibbs state at E below the ceiling, ln(dim) on finite domains above it,
// and the linear continuation g*E + ln Z(g) past the ceiling otherwise.
inline double max_entropy(const Hamiltonian& H, double E) {
  if (!(E > 0.0) || !std::isfinite(E)) {
    throw std::invalid_argument("max_entropy needs E > 0");
  }
  if (H.finite_domain()) {
    if (E >= max_mean_energy(H)) {
      return std::log(static_cast<double>(H.dimension()));
    }
    double beta = detail::solve_beta(H, E);
    return beta * E + std::log(partition_function(H, beta));
  }
  try {
    double beta = detail::solve_beta(H, E);
    return beta * E + std::log(partition_function(H, beta));
  } catch (const NoGibbsState&) {
    double g = convergence_abscissa(H);
    double z = partition_function(H, g + 1e-9);
    return g * E + std::log(z);
  }
}

}  // namespace optham
