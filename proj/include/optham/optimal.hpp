// optimal.hpp: the entropy-minimizing grounded Hamiltonian for a spectrum p
// under the two-energy constraint (budget E0 on the state, mean E on the
// Gibbs side). The minimizer has an m-dimensional zero kernel; above it the
// levels are an affine function of -ln p_i in regime B, or a single shared
// level in the finite-rank cap regime A where the entropy saturates at ln n.
#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "optham/errors.hpp"
#include "optham/gibbs.hpp"
#include "optham/hamiltonian.hpp"
#include "optham/numeric.hpp"
#include "optham/spectrum.hpp"

namespace optham {

// A: finite rank with E at or above E0/(n p_n); the optimal Gibbs state is
//    uniform and the entropy cap ln n is met.
// B: interior regime with E inside a breakpoint interval (E_m, E_{m+1}].
enum class Regime { A, B };

inline char regime_label(Regime r) { return r == Regime::A ? 'A' : 'B'; }

struct Classification {
  Regime regime = Regime::B;
  std::size_t m = 1;  // kernel dimension of the optimal Hamiltonian
};

// Energies E_k = E0 / (d_k + k p_k) at which the kernel dimension steps from
// k-1 to k; E_1 = 0. Nondecreasing, with E_k = E_{k+1} iff p_k = p_{k+1}.
// Rows are extended lazily for infinite ranks.
class BreakpointTable {
 public:
  BreakpointTable(Spectrum spec, double E0)
      : spec_(std::move(spec)), E0_(E0) {
    if (!(E0 > 0.0) || !std::isfinite(E0)) {
      throw std::invalid_argument("breakpoints need E0 > 0");
    }
    ek_.push_back(0.0);  // E_1
  }

  // Membership uses right-closed intervals with relative slack 1e-12 at the
  // right endpoint, so E = E_{m+1} classifies into the lower interval m.
  static constexpr double kEdgeTol = 1e-12;

  const Spectrum& spectrum() const { return spec_; }
  double budget() const { return E0_; }
  std::size_t known() const { return ek_.size(); }

  double energy(std::size_t k) {
    if (k < 1) throw std::invalid_argument("breakpoint index is 1-based");
    if (spec_.finite_rank() && k > spec_.rank()) {
      throw std::invalid_argument("breakpoint index beyond rank");
    }
    while (ek_.size() < k) {
      std::size_t next = ek_.size() + 1;
      TailSums t = spec_.tail_sums(next);
      double denom = t.d + static_cast<double>(next) * spec_.eigenvalue(next);
      ek_.push_back(E0_ / denom);
    }
    return ek_[k - 1];
  }

  // The kernel dimension m with E in (E_m, E_{m+1}]. Callers guarantee
  // E < E_n for finite ranks (regime A is split off before this).
  std::size_t locate(double E) {
    std::size_t m = 1;
    for (;;) {
      if (spec_.finite_rank() && m + 1 > spec_.rank()) {
        throw std::logic_error("locate called with E at or above the cap");
      }
      double next = energy(m + 1);
      if (E <= next * (1.0 + kEdgeTol)) return m;
      ++m;
      if (m > 50'000'000) {
        throw NoConvergenceCertificate("breakpoint search did not terminate");
      }
    }
  }

 private:
  Spectrum spec_;
  double E0_;
  std::vector<double> ek_;
};

inline BreakpointTable breakpoint_table(const Spectrum& spec, double E0) {
  return BreakpointTable(spec, E0);
}

namespace detail {

inline void require_energies(double E0, double E) {
  if (!(E0 > 0.0) || !std::isfinite(E0) || !(E > 0.0) || !std::isfinite(E)) {
    throw std::invalid_argument("energies must satisfy E0 > 0 and E > 0");
  }
}

// Trailing run of eigenvalues equal to p_n, capped at n-1 so the uniform
// spectrum keeps a one-dimensional kernel.
inline std::size_t regime_a_kernel(const Spectrum& spec) {
  std::size_t n = spec.rank();
  double pn = spec.eigenvalue(n);
  std::size_t run = 1;
  while (run < n - 1 && spec.eigenvalue(n - run) == pn) ++run;
  return n - run;
}

}  // namespace detail

inline Classification classify(const Spectrum& spec, double E0, double E,
                               BreakpointTable* table = nullptr) {
  detail::require_energies(E0, E);
  if (spec.finite_rank()) {
    std::size_t n = spec.rank();
    double cap = E0 / (spec.eigenvalue(n) * static_cast<double>(n));
    if (E >= cap) return {Regime::A, detail::regime_a_kernel(spec)};
  }
  if (table != nullptr) return {Regime::B, table->locate(E)};
  BreakpointTable local(spec, E0);
  return {Regime::B, local.locate(E)};
}

// The minimizing level sequence. Regime B levels above the kernel are
// level_scale * (level_shift - ln p_i); regime A shares one finite level
// across the non-kernel block.
class OptimalHamiltonian {
 public:
  Regime regime() const { return regime_; }
  std::size_t kernel_dim() const { return m_; }
  double theta() const { return theta_; }
  // Log-domain multiplier beta_m (nats): d(entropy)/d(theta) along the
  // curve; 0 in regime A where the Gibbs parameter vanishes.
  double beta() const { return beta_; }
  double level_scale() const { return scale_; }  // C = E0/beta, regime B
  double level_shift() const { return shift_; }  // D, regime B
  double budget() const { return E0_; }
  double energy() const { return E_; }
  const Spectrum& spectrum() const { return spec_; }

  double level(std::size_t i) const {
    if (i < 1) throw std::invalid_argument("level index is 1-based");
    if (i <= m_) return 0.0;
    if (spec_.finite_rank() && i > spec_.rank()) return kInfinity;
    if (regime_ == Regime::A) return cap_level_;
    return scale_ * (shift_ - spec_.log_eigenvalue(i));
  }

  std::vector<double> levels(std::size_t count) const {
    std::vector<double> out(count);
    for (std::size_t i = 1; i <= count; ++i) out[i - 1] = level(i);
    return out;
  }

  // Gibbs-side view of the same levels. Finite ranks materialize fully;
  // geometric spectra continue with an exact arithmetic tail.
  Hamiltonian to_hamiltonian() const {
    if (spec_.finite_rank()) return Hamiltonian::finite(levels(spec_.rank()));
    if (spec_.model() == Spectrum::Model::Geometric) {
      double gap = -scale_ * std::log(spec_.ratio());
      return Hamiltonian::arithmetic_tail(levels(m_ + 2), gap);
    }
    throw NoConvergenceCertificate(
        "levels beyond a truncated head carry no tail certificate");
  }

 private:
  friend OptimalHamiltonian optimal_hamiltonian(const Spectrum&, double,
                                                double);
  Regime regime_ = Regime::B;
  std::size_t m_ = 1;
  double theta_ = 1.0;
  double beta_ = 0.0;
  double scale_ = kNaN;
  double shift_ = kNaN;
  double cap_level_ = kInfinity;
  double E0_ = 1.0;
  double E_ = 1.0;
  Spectrum spec_ = Spectrum::uniform(2);
};

namespace detail {

struct RegimeBData {
  double beta = 0.0;   // s_m + d_m * shift
  double shift = 0.0;  // ln((1 - theta d_m) / (theta m))
  TailSums tail;
};

inline RegimeBData regime_b_data(const Spectrum& spec, double theta,
                                 std::size_t m) {
  RegimeBData r;
  r.tail = spec.tail_sums(m);
  double capacity = 1.0 - theta * r.tail.d;
  if (!(capacity > 0.0)) {
    throw Error("interior regime out of range: 1 - theta*d_m <= 0");
  }
  r.shift = std::log(capacity / (theta * static_cast<double>(m)));
  r.beta = r.tail.s + r.tail.d * r.shift;
  return r;
}

}  // namespace detail

inline OptimalHamiltonian optimal_hamiltonian(const Spectrum& spec, double E0,
                                              double E) {
  detail::require_energies(E0, E);
  Classification c = classify(spec, E0, E);
  OptimalHamiltonian H;
  H.regime_ = c.regime;
  H.m_ = c.m;
  H.theta_ = E / E0;
  H.E0_ = E0;
  H.E_ = E;
  H.spec_ = spec;
  if (c.regime == Regime::A) {
    std::size_t n = spec.rank();
    H.beta_ = 0.0;
    H.cap_level_ =
        E0 / (spec.eigenvalue(n) * static_cast<double>(n - c.m));
    return H;
  }
  detail::RegimeBData r = detail::regime_b_data(spec, H.theta_, c.m);
  if (r.beta <= 1e-14) {
    throw DegenerateBeta("log-domain multiplier below 1e-14; level scale "
                         "E0/beta is unusable this close to the cap");
  }
  H.beta_ = r.beta;
  H.scale_ = E0 / r.beta;
  H.shift_ = r.shift;
  return H;
}

namespace detail {

// Entropy of the interior-regime minimizer with kernel dimension m.
inline double regime_b_entropy(const Spectrum& spec, double theta,
                               std::size_t m) {
  RegimeBData r = regime_b_data(spec, theta, m);
  double capacity = 1.0 - theta * r.tail.d;
  return theta * r.tail.s + eta(capacity) +
         capacity * std::log(static_cast<double>(m)) + r.tail.d * eta(theta);
}

}  // namespace detail

// Minimal Gibbs entropy compatible with the (E0, E) pair: ln n in regime A,
// the closed interior form otherwise.
inline double optimal_entropy(const Spectrum& spec, double E0, double E) {
  detail::require_energies(E0, E);
  Classification c = classify(spec, E0, E);
  if (c.regime == Regime::A) {
    return std::log(static_cast<double>(spec.rank()));
  }
  return detail::regime_b_entropy(spec, E / E0, c.m);
}

// The Gibbs state of the optimal Hamiltonian at mean energy E, in closed
// form: uniform in regime A; otherwise (1 - theta d_m)/m on the kernel and
// theta p_i above it.
inline GibbsState optimal_gibbs(const Spectrum& spec, double E0, double E) {
  OptimalHamiltonian H = optimal_hamiltonian(spec, E0, E);
  const double theta = H.theta();
  GibbsState st;
  if (H.regime() == Regime::A) {
    std::size_t n = spec.rank();
    st.beta = 0.0;
    st.finite_dim_uniform = true;
    st.weights.assign(n, 1.0 / static_cast<double>(n));
    st.mean_energy =
        E0 / (spec.eigenvalue(n) * static_cast<double>(n));
    st.entropy = std::log(static_cast<double>(n));
    return st;
  }
  std::size_t m = H.kernel_dim();
  TailSums tm = spec.tail_sums(m);
  double kernel_w = (1.0 - theta * tm.d) / static_cast<double>(m);
  st.beta = H.beta() / E0;  // dimensionful Gibbs parameter of H itself
  st.weights.assign(m, kernel_w);

  double head_entropy = static_cast<double>(m) * eta(kernel_w);
  double head_mean = 0.0;
  // Finite ranks and truncated heads materialize fully; the geometric
  // family stops once the remaining mass is certifiably negligible.
  std::size_t stop = spec.finite_rank() ? spec.rank() : spec.head_size();
  std::size_t i = m + 1;
  for (;; ++i) {
    if (stop != 0 && i > stop) break;
    if (stop == 0 && theta * spec.tail_sums(i - 1).d <= 1e-13) break;
    double w = theta * spec.eigenvalue(i);
    st.weights.push_back(w);
    head_entropy += eta(w);
    head_mean += w * H.level(i);
  }
  TailSums tk = spec.tail_sums(i - 1);
  st.weight_tail = theta * tk.d;
  // Analytic remainders: -sum_{j>i-1} w ln w = theta (s_k - d_k ln theta),
  // sum w h = theta C (D d_k + s_k).
  st.entropy = head_entropy + theta * (tk.s - tk.d * std::log(theta));
  st.mean_energy =
      head_mean + theta * H.level_scale() * (H.level_shift() * tk.d + tk.s);
  return st;
}

struct CurveRow {
  double E = 0.0;
  double theta = 0.0;
  std::size_t m = 1;
  Regime regime = Regime::B;
  double entropy = 0.0;
};

// Minimal entropy along a uniform energy grid; one shared breakpoint table.
inline std::vector<CurveRow> entropy_curve(const Spectrum& spec, double E0,
                                           double e_min, double e_max,
                                           std::size_t points) {
  if (points < 1) throw std::invalid_argument("curve needs >= 1 points");
  if (!(e_min > 0.0) || !(e_max >= e_min)) {
    throw std::invalid_argument("curve needs 0 < e_min <= e_max");
  }
  detail::require_energies(E0, e_min);
  BreakpointTable table(spec, E0);
  std::vector<CurveRow> rows;
  rows.reserve(points);
  for (std::size_t j = 0; j < points; ++j) {
    double E = points == 1 ? e_min
                           : e_min + (e_max - e_min) * static_cast<double>(j) /
                                         static_cast<double>(points - 1);
    Classification c = classify(spec, E0, E, &table);
    CurveRow row;
    row.E = E;
    row.theta = E / E0;
    row.m = c.m;
    row.regime = c.regime;
    row.entropy = c.regime == Regime::A
                      ? std::log(static_cast<double>(spec.rank()))
                      : detail::regime_b_entropy(spec, row.theta, c.m);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace optham
