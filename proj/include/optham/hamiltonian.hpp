// hamiltonian.hpp: grounded nondecreasing level sequences with certified
// evaluation of the Boltzmann series sum exp(-b h_i) and its energy-weighted
// companion. Three backings: finite domains (implicit +inf past the list),
// arithmetic tails (exact closed-form sums), and generated sequences that
// must bring their own tail certificate.
#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "optham/errors.hpp"
#include "optham/numeric.hpp"

namespace optham {

// Certified value of a positive series.
//   value, err:  the series lies in [value - err, value + err]
//   divergent:   the series exceeds every bound (value/err meaningless)
//   certified:   false when no usable tail bound existed at the cutoff
struct SeriesValue {
  double value = 0.0;
  double err = 0.0;
  bool divergent = false;
  bool certified = true;

  static SeriesValue diverged() {
    SeriesValue s;
    s.divergent = true;
    return s;
  }
  static SeriesValue uncertified(double partial) {
    SeriesValue s;
    s.value = partial;
    s.err = kInfinity;
    s.certified = false;
    return s;
  }
};

class Hamiltonian {
 public:
  // 1-based level access for generated sequences.
  using LevelFn = std::function<double(std::size_t)>;
  // TailBoundFn(b, j) returns an upper bound on sum_{i>=j} exp(-b h_i).
  // +inf asserts divergence of the full series at this b; NaN means no
  // certificate is available.
  using TailBoundFn = std::function<double(double, std::size_t)>;

  // Partial sums beyond this sentinel are treated as divergent.
  static constexpr double kDivergenceSentinel = 1e12;
  static constexpr std::size_t kTermBudget = std::size_t{1} << 20;

  // Levels h_1..h_n with +inf beyond: an n-dimensional domain.
  static Hamiltonian finite(std::vector<double> levels) {
    validate_head(levels);
    Hamiltonian h;
    h.kind_ = Kind::Finite;
    h.head_ = std::move(levels);
    return h;
  }

  // Levels continue past the list with constant gap > 0:
  // h_{n+j} = h_n + j * gap. Partition sums are geometric and exact.
  static Hamiltonian arithmetic_tail(std::vector<double> head, double gap) {
    validate_head(head);
    if (!(gap > 0.0) || !std::isfinite(gap)) {
      throw NoConvergenceCertificate(
          "arithmetic tail needs gap > 0; the level series has no "
          "convergent abscissa otherwise");
    }
    Hamiltonian h;
    h.kind_ = Kind::Arithmetic;
    h.head_ = std::move(head);
    h.gap_ = gap;
    return h;
  }

  // Arbitrary nondecreasing grounded sequence; the caller certifies tails.
  static Hamiltonian generated(LevelFn levels, TailBoundFn tail) {
    if (!levels) throw std::invalid_argument("generated: null level function");
    double ground = levels(1);
    if (!(std::abs(ground) <= 1e-12)) {
      throw std::invalid_argument("ground level must be 0");
    }
    Hamiltonian h;
    h.kind_ = Kind::Generated;
    h.level_fn_ = std::move(levels);
    h.tail_fn_ = std::move(tail);
    return h;
  }

  bool finite_domain() const { return kind_ == Kind::Finite; }

  std::size_t dimension() const {
    if (kind_ != Kind::Finite) {
      throw std::logic_error("dimension(): domain is infinite");
    }
    return head_.size();
  }

  std::size_t head_size() const { return head_.size(); }

  double tail_gap() const {
    if (kind_ != Kind::Arithmetic) {
      throw std::logic_error("tail_gap(): no arithmetic tail");
    }
    return gap_;
  }

  // h_i; +inf past a finite domain.
  double level(std::size_t i) const {
    if (i < 1) throw std::invalid_argument("level index is 1-based");
    switch (kind_) {
      case Kind::Finite:
        return i <= head_.size() ? head_[i - 1] : kInfinity;
      case Kind::Arithmetic:
        if (i <= head_.size()) return head_[i - 1];
        return head_.back() +
               static_cast<double>(i - head_.size()) * gap_;
      default:
        return level_fn_(i);
    }
  }

  // Z(b) = sum_i exp(-b h_i). b >= 0 on finite domains, b > 0 otherwise.
  SeriesValue boltzmann_sum(double b) const {
    switch (kind_) {
      case Kind::Finite: {
        require_b(b, /*allow_zero=*/true);
        double sum = 0.0;
        for (auto it = head_.rbegin(); it != head_.rend(); ++it) {
          sum += std::exp(-b * *it);
        }
        return exact(sum, static_cast<double>(head_.size()));
      }
      case Kind::Arithmetic: {
        require_b(b, /*allow_zero=*/false);
        double sum = 0.0;
        for (auto it = head_.rbegin(); it != head_.rend(); ++it) {
          sum += std::exp(-b * *it);
        }
        double r = std::exp(-b * gap_);
        sum += std::exp(-b * head_.back()) * r / (1.0 - r);
        return exact(sum, static_cast<double>(head_.size()) + 2.0);
      }
      default: {
        require_b(b, /*allow_zero=*/false);
        return generated_sum(b, [&](std::size_t i) {
          return std::exp(-b * level_fn_(i));
        });
      }
    }
  }

  // sum_i h_i exp(-b h_i), the numerator of the Gibbs mean energy.
  SeriesValue energy_sum(double b) const {
    switch (kind_) {
      case Kind::Finite: {
        require_b(b, /*allow_zero=*/true);
        double sum = 0.0;
        for (auto it = head_.rbegin(); it != head_.rend(); ++it) {
          sum += *it * std::exp(-b * *it);
        }
        return exact(sum, static_cast<double>(head_.size()));
      }
      case Kind::Arithmetic: {
        require_b(b, /*allow_zero=*/false);
        double sum = 0.0;
        for (auto it = head_.rbegin(); it != head_.rend(); ++it) {
          sum += *it * std::exp(-b * *it);
        }
        // sum_{j>=1} (h + j g) e^{-b(h + j g)}
        //   = e^{-b h} (h r/(1-r) + g r/(1-r)^2),  r = e^{-b g}.
        double h = head_.back();
        double r = std::exp(-b * gap_);
        double geo = r / (1.0 - r);
        sum += std::exp(-b * h) * (h * geo + gap_ * geo / (1.0 - r));
        return exact(sum, static_cast<double>(head_.size()) + 4.0);
      }
      default: {
        require_b(b, /*allow_zero=*/false);
        return generated_sum(b, [&](std::size_t i) {
          double h = level_fn_(i);
          return h * std::exp(-b * h);
        }, /*energy_weighted=*/true);
      }
    }
  }

  // Upper bound on sum_{i>=j} exp(-b h_i); +inf asserts divergence,
  // NaN means unknown.
  double tail_bound(double b, std::size_t from) const {
    switch (kind_) {
      case Kind::Finite: {
        if (from > head_.size()) return 0.0;
        double sum = 0.0;
        for (std::size_t i = head_.size(); i >= from; --i) {
          sum += std::exp(-b * head_[i - 1]);
        }
        return sum;
      }
      case Kind::Arithmetic: {
        if (b <= 0.0) return kInfinity;
        double r = std::exp(-b * gap_);
        if (from > head_.size()) {
          double h_from = level(from);
          return std::exp(-b * h_from) / (1.0 - r);
        }
        double sum = 0.0;
        for (std::size_t i = head_.size(); i >= from; --i) {
          sum += std::exp(-b * head_[i - 1]);
        }
        return sum + std::exp(-b * head_.back()) * r / (1.0 - r);
      }
      default:
        return tail_fn_ ? tail_fn_(b, from) : kNaN;
    }
  }

 private:
  enum class Kind { Finite, Arithmetic, Generated };

  Kind kind_ = Kind::Finite;
  std::vector<double> head_;
  double gap_ = 0.0;
  LevelFn level_fn_;
  TailBoundFn tail_fn_;

  static void validate_head(const std::vector<double>& levels) {
    if (levels.empty()) throw std::invalid_argument("empty level list");
    if (!(std::abs(levels.front()) <= 1e-12)) {
      throw std::invalid_argument("ground level must be 0");
    }
    for (std::size_t i = 0; i < levels.size(); ++i) {
      if (!std::isfinite(levels[i]) || levels[i] < 0.0) {
        throw std::invalid_argument("levels must be finite and >= 0");
      }
      if (i > 0 && levels[i] < levels[i - 1]) {
        throw std::invalid_argument("levels must be nondecreasing");
      }
    }
  }

  static void require_b(double b, bool allow_zero) {
    bool ok = allow_zero ? b >= 0.0 : b > 0.0;
    if (!ok || !std::isfinite(b)) {
      throw std::invalid_argument("series parameter b outside its domain");
    }
  }

  static SeriesValue exact(double value, double terms) {
    SeriesValue s;
    s.value = value;
    s.err = 8.0 * terms * 1e-17 * std::max(1.0, value);
    return s;
  }

  // Bound on sum_{i>=j} h_i exp(-b h_i) via an exponent split:
  // h e^{-b h} <= M(delta, h_j) e^{-sigma h} for h >= h_j, sigma = b - delta.
  double energy_tail_bound(double b, std::size_t from) const {
    double h_from = level_fn_(from);
    double best = kNaN;
    for (double frac : {0.5, 0.75, 0.9, 0.99}) {
      double sigma = frac * b;
      double zb = tail_bound(sigma, from);
      if (!std::isfinite(zb)) continue;
      double delta = b - sigma;
      double peak = 1.0 / delta;
      double m = h_from >= peak ? h_from * std::exp(-delta * h_from)
                                : peak * std::exp(-1.0);
      double bound = m * zb;
      if (std::isnan(best) || bound < best) best = bound;
    }
    return best;
  }

  template <typename TermFn>
  SeriesValue generated_sum(double b, TermFn term,
                            bool energy_weighted = false) const {
    auto bound_from = [&](std::size_t i) {
      return energy_weighted ? energy_tail_bound(b, i) : tail_bound(b, i);
    };
    double sum = 0.0;
    for (std::size_t i = 1; i <= kTermBudget; ++i) {
      double tb = bound_from(i);  // covers sum_{j>=i}; term i not added yet
      if (std::isinf(tb)) return SeriesValue::diverged();
      if (!std::isnan(tb) && (tb <= 1e-15 * (sum + tb) || tb <= 1e-300)) {
        SeriesValue s;
        s.value = sum + 0.5 * tb;
        s.err = 0.5 * tb + 1e-16 * std::max(1.0, sum);
        return s;
      }
      // Divergence asserted by the base certificate, even in energy mode.
      if (energy_weighted && std::isinf(tail_bound(b, i))) {
        return SeriesValue::diverged();
      }
      sum += term(i);
      if (sum > kDivergenceSentinel) return SeriesValue::diverged();
    }
    double tb = bound_from(kTermBudget + 1);
    if (std::isinf(tb)) return SeriesValue::diverged();
    if (!std::isnan(tb)) {
      SeriesValue s;
      s.value = sum + 0.5 * tb;
      s.err = 0.5 * tb + 1e-16 * std::max(1.0, sum);
      return s;
    }
    return SeriesValue::uncertified(sum);
  }
};

}  // namespace optham
