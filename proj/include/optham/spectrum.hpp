// spectrum.hpp: nonincreasing eigenvalue spectra of mixed states with exact
// residual (tail) sums. Finite lists are stored; the geometric family keeps
// closed forms so infinite ranks never need materialization.
#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "optham/errors.hpp"
#include "optham/numeric.hpp"

namespace optham {

// Residual sums past position k: d = sum_{i>k} p_i, s = sum_{i>k} eta(p_i).
struct TailSums {
  std::size_t k = 0;
  double d = 0.0;  // residual mass
  double s = 0.0;  // residual entropy, nats
};

class Spectrum {
 public:
  enum class Model { Explicit, Uniform, Linear, Geometric, TruncatedNumeric };

  // Whether sum_i p_i^b is known to converge for every b > 0 (the condition
  // under which Gibbs states exist at every positive temperature scale).
  enum class TailCondition { Holds, Unknown };

  static constexpr double kMassTol = 1e-12;

  // p_i = 1/n, i = 1..n.
  static Spectrum uniform(std::size_t n) {
    require_rank(n);
    Spectrum s;
    s.model_ = Model::Uniform;
    s.finite_ = true;
    s.n_ = n;
    s.entropy_ = std::log(static_cast<double>(n));
    return s;
  }

  // p_i = 2(n-i+1)/(n(n+1)), i = 1..n.
  static Spectrum linear(std::size_t n) {
    require_rank(n);
    Spectrum s;
    s.model_ = Model::Linear;
    s.finite_ = true;
    s.n_ = n;
    s.build_suffix_entropy_linear();
    s.entropy_ = s.suffix_entropy_[0];
    return s;
  }

  // p_i = (1-q) q^{i-1}, 0 < q < 1; infinite rank.
  static Spectrum geometric(double q) {
    if (!(q > 0.0) || !(q < 1.0)) {
      throw std::invalid_argument("geometric spectrum needs ratio q in (0,1)");
    }
    Spectrum s;
    s.model_ = Model::Geometric;
    s.finite_ = false;
    s.q_ = q;
    // S = -ln(1-q) - q ln(q)/(1-q), the (E0+1)ln(E0+1) - E0 ln E0 form.
    s.entropy_ = -std::log1p(-q) - q * std::log(q) / (1.0 - q);
    return s;
  }

  // Geometric spectrum parameterized by its mean level index E0 > 0,
  // q = E0/(E0+1): the thermal occupation of a harmonic mode.
  static Spectrum oscillator(double mean_quanta) {
    if (!(mean_quanta > 0.0)) {
      throw std::invalid_argument("oscillator spectrum needs mean quanta > 0");
    }
    return geometric(mean_quanta / (mean_quanta + 1.0));
  }

  // Finite list carrying unit mass within kMassTol; renormalized exactly.
  static Spectrum from_probabilities(std::vector<double> p) {
    validate_positive_nonincreasing(p);
    double total = sum_ascending(p);
    if (std::abs(total - 1.0) > kMassTol) {
      throw NonNormalized("probability mass " + std::to_string(total) +
                          " deviates from 1 beyond 1e-12");
    }
    for (double& v : p) v /= total;
    Spectrum s;
    s.model_ = Model::Explicit;
    s.finite_ = true;
    s.n_ = p.size();
    s.p_ = std::move(p);
    s.require_mixed();
    s.build_suffix(0.0);
    s.entropy_ = s.suffix_entropy_[0];
    return s;
  }

  // Head of an infinite-rank spectrum with declared tail tolerance: the
  // residual mass and residual entropy beyond the list are certified <= tau
  // by the caller. The deficit is kept as tail mass; nothing is rescaled.
  static Spectrum truncated(std::vector<double> p, double tail_tol = 1e-12) {
    if (!(tail_tol >= 0.0)) {
      throw std::invalid_argument("tail tolerance must be nonnegative");
    }
    validate_positive_nonincreasing(p);
    double total = sum_ascending(p);
    if (total > 1.0 + kMassTol) {
      throw NonNormalized("truncated head carries mass " +
                          std::to_string(total) + " above 1");
    }
    double deficit = std::max(0.0, 1.0 - total);
    if (deficit > tail_tol) {
      throw InfiniteEntropy("residual mass " + std::to_string(deficit) +
                            " exceeds declared tail tolerance; entropy sum "
                            "not certified");
    }
    Spectrum s;
    s.model_ = Model::TruncatedNumeric;
    s.finite_ = false;
    s.n_ = p.size();
    s.p_ = std::move(p);
    s.tail_tol_ = tail_tol;
    s.require_mixed();
    s.build_suffix(deficit);
    s.entropy_ = s.suffix_entropy_[0];
    return s;
  }

  Model model() const { return model_; }
  bool finite_rank() const { return finite_; }

  std::size_t rank() const {
    if (!finite_) throw std::logic_error("rank(): spectrum has infinite rank");
    return n_;
  }

  // Stored prefix length: the rank for finite models, the head length for
  // truncated lists, 0 for the closed-form geometric family.
  std::size_t head_size() const { return n_; }

  double entropy() const { return entropy_; }
  double tail_tolerance() const { return tail_tol_; }

  double eigenvalue(std::size_t i) const {
    check_index(i);
    switch (model_) {
      case Model::Uniform:
        return 1.0 / static_cast<double>(n_);
      case Model::Linear:
        return linear_p(i);
      case Model::Geometric:
        return (1.0 - q_) * std::pow(q_, static_cast<double>(i - 1));
      default:
        return p_[i - 1];
    }
  }

  // ln p_i without forming p_i; keeps deep levels cancellation-free.
  double log_eigenvalue(std::size_t i) const {
    check_index(i);
    switch (model_) {
      case Model::Uniform:
        return -std::log(static_cast<double>(n_));
      case Model::Linear:
        return std::log(2.0 * static_cast<double>(n_ - i + 1)) -
               std::log(static_cast<double>(n_) * static_cast<double>(n_ + 1));
      case Model::Geometric:
        return std::log1p(-q_) +
               static_cast<double>(i - 1) * std::log(q_);
      default:
        return std::log(p_[i - 1]);
    }
  }

  // Residual sums past position k >= 0; d_0 = 1 and s_0 = entropy().
  // Analytic for Uniform and Geometric; backward-accumulated otherwise.
  // For truncated lists, positions past the head report the certified
  // deficit as d and 0 as s.
  TailSums tail_sums(std::size_t k) const {
    TailSums t;
    t.k = k;
    switch (model_) {
      case Model::Uniform: {
        if (k >= n_) return t;
        double nd = static_cast<double>(n_);
        t.d = static_cast<double>(n_ - k) / nd;
        t.s = static_cast<double>(n_ - k) * std::log(nd) / nd;
        return t;
      }
      case Model::Linear: {
        if (k >= n_) return t;
        double nd = static_cast<double>(n_);
        double r = static_cast<double>(n_ - k);
        t.d = r * (r + 1.0) / (nd * (nd + 1.0));
        t.s = suffix_entropy_[k];
        return t;
      }
      case Model::Geometric: {
        double qk = std::pow(q_, static_cast<double>(k));
        t.d = qk;
        t.s = qk * (entropy_ - static_cast<double>(k) * std::log(q_));
        return t;
      }
      default: {
        if (k >= n_) {
          t.d = suffix_mass_.back();  // 0 for Explicit, deficit for truncated
          t.s = 0.0;
          return t;
        }
        t.d = suffix_mass_[k];
        t.s = suffix_entropy_[k];
        return t;
      }
    }
  }

  double ratio() const {
    require_geometric();
    return q_;
  }

  // Mean of the zero-based level index under the spectrum: q/(1-q).
  double mean_quanta() const {
    require_geometric();
    return q_ / (1.0 - q_);
  }

  TailCondition tail_condition() const {
    return model_ == Model::TruncatedNumeric ? TailCondition::Unknown
                                             : TailCondition::Holds;
  }

 private:
  Model model_ = Model::Uniform;
  bool finite_ = true;
  std::size_t n_ = 0;  // rank (finite models) or head length (truncated)
  double q_ = 0.0;
  double entropy_ = 0.0;
  double tail_tol_ = 0.0;
  std::vector<double> p_;
  std::vector<double> suffix_mass_;     // suffix_mass_[k] = d_k, k = 0..n
  std::vector<double> suffix_entropy_;  // suffix_entropy_[k] = s_k

  static void require_rank(std::size_t n) {
    if (n < 2) throw NotMixed("spectrum rank must be at least 2");
  }

  static void validate_positive_nonincreasing(const std::vector<double>& p) {
    if (p.empty()) throw std::invalid_argument("empty probability list");
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (!(p[i] > 0.0) || !std::isfinite(p[i])) {
        throw std::invalid_argument("probabilities must be finite and > 0");
      }
      if (i > 0 && p[i] > p[i - 1]) {
        throw std::invalid_argument("probabilities must be nonincreasing");
      }
    }
  }

  static double sum_ascending(const std::vector<double>& p) {
    double total = 0.0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) total += *it;
    return total;
  }

  void require_mixed() const {
    bool mixed = p_[0] < 1.0 - kMassTol && (!finite_ || n_ >= 2);
    if (!mixed) throw NotMixed("spectrum must have rank >= 2 and p1 < 1");
  }

  void require_geometric() const {
    if (model_ != Model::Geometric) {
      throw std::logic_error("ratio/mean_quanta: not a geometric spectrum");
    }
  }

  void check_index(std::size_t i) const {
    if (i < 1) throw std::invalid_argument("eigenvalue index is 1-based");
    if (model_ == Model::Geometric) return;
    if (i > n_) {
      throw IndexBeyondRank("eigenvalue index " + std::to_string(i) +
                            " beyond stored length " + std::to_string(n_));
    }
  }

  double linear_p(std::size_t i) const {
    double nd = static_cast<double>(n_);
    return 2.0 * static_cast<double>(n_ - i + 1) / (nd * (nd + 1.0));
  }

  // Backward accumulation makes d_k - d_{k+1} = p_{k+1} hold term-exactly.
  void build_suffix(double deficit) {
    suffix_mass_.assign(n_ + 1, 0.0);
    suffix_entropy_.assign(n_ + 1, 0.0);
    suffix_mass_[n_] = deficit;
    for (std::size_t k = n_; k-- > 0;) {
      suffix_mass_[k] = suffix_mass_[k + 1] + p_[k];
      suffix_entropy_[k] = suffix_entropy_[k + 1] + eta(p_[k]);
    }
  }

  void build_suffix_entropy_linear() {
    suffix_entropy_.assign(n_ + 1, 0.0);
    for (std::size_t k = n_; k-- > 0;) {
      suffix_entropy_[k] = suffix_entropy_[k + 1] + eta(linear_p(k + 1));
    }
  }
};

}  // namespace optham
