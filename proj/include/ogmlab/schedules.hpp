#ifndef OGMLAB_SCHEDULES_HPP
#define OGMLAB_SCHEDULES_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ogm {

class ScheduleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {
// Constraint slack is pure roundoff for the valid sequences; 1e-12 absolute.
inline constexpr double kScheduleSlack = 1e-12;
}  // namespace detail

/// Momentum coefficient sequence θ_k with θ_{-1} = 0.
/// exact:  θ_0 = 1, θ_{k+1} = (1 + sqrt(1+4θ_k²))/2 (positive root of
///         θ² - θ = θ_k²), memoized.
/// simple: θ_k = (k+2)/2.
/// custom: caller-supplied values, checked against the relaxed requirement
///         0 ≤ θ_{k+1}² - θ_{k+1} ≤ θ_k².
class ThetaSchedule {
 public:
  enum class Variant { exact, simple, custom };

  static ThetaSchedule exact() { return ThetaSchedule(Variant::exact, {}); }
  static ThetaSchedule simple() { return ThetaSchedule(Variant::simple, {}); }

  static ThetaSchedule custom(std::vector<double> values) {
    if (values.empty() || std::abs(values[0] - 1.0) > detail::kScheduleSlack)
      throw ScheduleError("custom theta: theta_0 must equal 1");
    for (std::size_t k = 0; k + 1 < values.size(); ++k) {
      const double lhs = values[k + 1] * values[k + 1] - values[k + 1];
      const double rhs = values[k] * values[k];
      if (lhs < -detail::kScheduleSlack || lhs > rhs + detail::kScheduleSlack)
        throw ScheduleError("custom theta: relaxed requirement violated at k=" +
                            std::to_string(k + 1));
    }
    return ThetaSchedule(Variant::custom, std::move(values));
  }

  Variant variant() const { return variant_; }

  /// θ_k for k ≥ -1.
  double operator()(long k) const {
    if (k < -1) throw std::invalid_argument("theta: k must be >= -1");
    if (k == -1) return 0.0;
    switch (variant_) {
      case Variant::simple:
        return 0.5 * static_cast<double>(k + 2);
      case Variant::custom:
        if (static_cast<std::size_t>(k) >= values_->size())
          throw ScheduleError("custom theta: index beyond supplied values");
        return (*values_)[static_cast<std::size_t>(k)];
      case Variant::exact:
        return exact_at(static_cast<std::size_t>(k));
    }
    return 0.0;  // unreachable
  }

 private:
  ThetaSchedule(Variant v, std::vector<double> values)
      : variant_(v),
        values_(std::make_shared<std::vector<double>>(std::move(values))),
        lock_(std::make_shared<std::mutex>()) {
    if (variant_ == Variant::exact) values_->push_back(1.0);
  }

  double exact_at(std::size_t k) const {
    // Extension appends only; already-generated prefixes never move because
    // the vector is grown under the lock and read after the size check.
    {
      std::scoped_lock g(*lock_);
      while (values_->size() <= k) {
        const double t = values_->back();
        values_->push_back(0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t)));
      }
    }
    return (*values_)[k];
  }

  Variant variant_;
  std::shared_ptr<std::vector<double>> values_;
  std::shared_ptr<std::mutex> lock_;
};

inline double theta_exact(long k) {
  static const ThetaSchedule s = ThetaSchedule::exact();
  return s(k);
}

inline double theta_simple(long k) {
  if (k < 0) throw std::invalid_argument("theta_simple: k must be >= 0");
  return 0.5 * static_cast<double>(k + 2);
}

/// φ_k = positive root of φ² - φ - 2θ_{k-1}² = 0; φ_0 = 1 since θ_{-1} = 0.
inline double phi_exact(long k, const ThetaSchedule& theta) {
  if (k < 0) throw std::invalid_argument("phi_exact: k must be >= 0");
  const double t = theta(k - 1);
  return 0.5 * (1.0 + std::sqrt(1.0 + 8.0 * t * t));
}

/// Rational companion of θ_k = (k+2)/2: φ_k = (k+1+1/√2)/√2, valid for k ≥ 1.
/// At k = 0 the formula violates the φ constraint; callers must use φ_0 = 1.
inline double phi_simple(long k) {
  if (k < 1)
    throw std::invalid_argument(
        "phi_simple: defined for k >= 1; use phi_exact(0, theta) = 1 at k = 0");
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  return (static_cast<double>(k) + 1.0 + inv_sqrt2) * inv_sqrt2;
}

/// Last-step coefficient sequence φ_k, paired with a θ schedule. φ_0 = 1 for
/// both variants (the only value admitted by the constraint with θ_{-1} = 0).
class PhiSchedule {
 public:
  enum class Variant { exact, simple };

  static PhiSchedule exact(ThetaSchedule theta) {
    return PhiSchedule(Variant::exact, std::move(theta));
  }
  static PhiSchedule simple(ThetaSchedule theta) {
    return PhiSchedule(Variant::simple, std::move(theta));
  }

  Variant variant() const { return variant_; }
  const ThetaSchedule& companion() const { return theta_; }

  double operator()(long k) const {
    if (k < 0) throw std::invalid_argument("phi: k must be >= 0");
    if (k == 0) return 1.0;
    return variant_ == Variant::exact ? phi_exact(k, theta_) : phi_simple(k);
  }

 private:
  PhiSchedule(Variant v, ThetaSchedule theta) : variant_(v), theta_(std::move(theta)) {}

  Variant variant_;
  ThetaSchedule theta_;
};

/// γ for SC-OGM: the positive root of (κ-1)γ² - 3γ - 2 = 0. Computed in the
/// rationalized form 4/(sqrt(8κ+1) - 3), stable as κ → 1⁺.
struct ScGamma {
  double kappa;
  double gamma;

  /// Momentum/correction coefficient 1/(2γ+1) of SC-OGM.
  double momentum() const { return 1.0 / (2.0 * gamma + 1.0); }
};

inline ScGamma gamma_sc(double kappa) {
  if (!(kappa > 1.0 + 1e-9))
    throw std::domain_error("gamma_sc: kappa must exceed 1 (gamma is unbounded at kappa = 1)");
  return ScGamma{kappa, 4.0 / (std::sqrt(8.0 * kappa + 1.0) - 3.0)};
}

/// Step/coupling sequences of the linear-coupling form. alpha(k) is the
/// mirror stepsize producing z_k (so alpha(1) pairs with the first step) and
/// tau(k) the coupling weight producing x_k. tilde_alpha/tilde_tau serve the
/// last-step sequence x̃_k.
class CouplingSchedule {
 public:
  enum class Mode { agm, ogm };

  CouplingSchedule(ThetaSchedule theta, double l, Mode mode)
      : theta_(std::move(theta)), phi_(), l_(l), mode_(mode) {
    if (!(l > 0.0)) throw std::invalid_argument("CouplingSchedule: L must be positive");
    if (mode_ == Mode::ogm) validate_alpha(64);
  }

  CouplingSchedule(ThetaSchedule theta, PhiSchedule phi, double l)
      : theta_(std::move(theta)), phi_(std::move(phi)), l_(l), mode_(Mode::ogm) {
    if (!(l > 0.0)) throw std::invalid_argument("CouplingSchedule: L must be positive");
    validate_alpha(64);
    validate_tilde(64);
  }

  Mode mode() const { return mode_; }
  double smoothness() const { return l_; }
  const ThetaSchedule& theta() const { return theta_; }
  bool has_tilde() const { return phi_.has_value(); }

  /// α_{k} = 2θ_{k-1}/L (ogm) or θ_{k-1}/L (agm), k ≥ 1.
  double alpha(long k) const {
    if (k < 1) throw std::invalid_argument("alpha: k must be >= 1");
    const double factor = mode_ == Mode::ogm ? 2.0 : 1.0;
    return factor * theta_(k - 1) / l_;
  }

  /// τ_k = 1/θ_k in both modes (2/(α_{k+1}L) for ogm, 1/(α_{k+1}L) for agm).
  double tau(long k) const {
    if (k < 0) throw std::invalid_argument("tau: k must be >= 0");
    return 1.0 / theta_(k);
  }

  /// α̃ paired with x̃_k: α̃ = φ_k/L, so that τ̃_k = 1/φ_k.
  double tilde_alpha(long k) const {
    require_tilde();
    if (k < 0) throw std::invalid_argument("tilde_alpha: k must be >= 0");
    return (*phi_)(k) / l_;
  }

  double tilde_tau(long k) const {
    require_tilde();
    if (k < 0) throw std::invalid_argument("tilde_tau: k must be >= 0");
    return 1.0 / (*phi_)(k);
  }

 private:
  void require_tilde() const {
    if (!phi_) throw ScheduleError("coupling schedule has no last-step (phi) sequence");
  }

  // 0 ≤ α_{k+1}²L - 2α_{k+1} ≤ α_k²L with α_1 = 2/L.
  void validate_alpha(long upto) const {
    if (std::abs(alpha(1) * l_ - 2.0) > detail::kScheduleSlack)
      throw ScheduleError("coupling: alpha_1 must equal 2/L");
    for (long k = 1; k < upto; ++k) {
      const double a = alpha(k) * l_, b = alpha(k + 1) * l_;
      const double lhs = b * b - 2.0 * b;
      if (lhs < -1e-9 || lhs > a * a + 1e-9 * (1.0 + a * a))
        throw ScheduleError("coupling: alpha requirement violated at k=" + std::to_string(k));
      const double t = tau(k);
      if (!(t > 0.0 && t <= 1.0 + detail::kScheduleSlack))
        throw ScheduleError("coupling: tau outside (0,1] at k=" + std::to_string(k));
    }
  }

  // 0 ≤ α̃_{k+1}²L - α̃_{k+1} ≤ ½α_k²L with α̃ paired as tilde_alpha(k) = φ_k/L.
  void validate_tilde(long upto) const {
    if (std::abs(tilde_alpha(0) * l_ - 1.0) > detail::kScheduleSlack)
      throw ScheduleError("coupling: tilde alpha must start at 1/L");
    for (long k = 1; k < upto; ++k) {
      const double a = alpha(k) * l_, b = tilde_alpha(k) * l_;
      const double lhs = b * b - b;
      if (lhs < -1e-9 || lhs > 0.5 * a * a + 1e-9 * (1.0 + a * a))
        throw ScheduleError("coupling: tilde alpha requirement violated at k=" +
                            std::to_string(k));
    }
  }

  ThetaSchedule theta_;
  std::optional<PhiSchedule> phi_;
  double l_;
  Mode mode_;
};

inline CouplingSchedule coupling_from_theta(ThetaSchedule theta, double l,
                                            CouplingSchedule::Mode mode) {
  return CouplingSchedule(std::move(theta), l, mode);
}

inline CouplingSchedule tilde_coupling(ThetaSchedule theta, PhiSchedule phi, double l) {
  return CouplingSchedule(std::move(theta), std::move(phi), l);
}

/// Constant coupling coefficient of the strongly convex linear-coupling
/// method: τ = γ/(2γ+1), the solution of (1-τ)/τ·γ - 1 = γ²/(1+γ)·(1-τ)/τ.
/// This is the weight that cancels the <∇f(x_k), y_k - x_k> term in the
/// telescoping argument (the mirror-step difference z_k - z_{k+1} enters that
/// argument multiplied by γ), and it is exactly the weight under which the
/// coupled form reproduces the direct strongly convex method.
inline double sc_coupling_tau(const ScGamma& g) {
  return g.gamma / (2.0 * g.gamma + 1.0);
}

/// Numerical probe of the asymptotic expansion θ_k = (k+ζ+1)/2 + log(k)/4 + o(1).
struct ZetaEstimate {
  double zeta;            // 2θ_K - K - 1 - log(K)/2
  double residual;        // ζ̂(K) - ζ̂(K/10), convergence indicator
  double max_c;           // max over 3 ≤ k ≤ K of c_k = (θ_k - (k+2)/2)/log k
  bool c_below_quarter;   // c_k < 1/4 throughout; c_2 ≈ 0.279 sits above the
                          // limit, and the invariance argument only applies
                          // once the sequence has entered (0, 1/4) at k = 3
  bool e_decreasing;      // e_k = θ_k - (k+2)/2 - log(k)/4 strictly decreasing on samples
  double e_lower_bound;   // smallest sampled e_k
};

/// Replays the exact θ recurrence in extended precision (long double); double
/// precision loses too many digits over 10⁶ steps to resolve ζ to 1e-2.
inline ZetaEstimate estimate_zeta(long cap) {
  if (cap < 100) throw std::invalid_argument("estimate_zeta: K must be >= 100");
  const long double quarter_log = 0.25L;
  long double t = 1.0L;  // θ_0
  ZetaEstimate out{};
  out.max_c = -1.0;
  out.c_below_quarter = true;
  out.e_decreasing = true;
  long double prev_e = 0.0L;
  bool have_e = false;
  out.e_lower_bound = std::numeric_limits<double>::infinity();
  long double zeta_prev_decade = 0.0L;
  for (long k = 1; k <= cap; ++k) {
    t = 0.5L * (1.0L + std::sqrt(1.0L + 4.0L * t * t));
    const long double lk = std::log(static_cast<long double>(k));
    if (k >= 3) {
      const long double c = (t - 0.5L * (k + 2)) / lk;
      out.max_c = std::max(out.max_c, static_cast<double>(c));
      if (!(c < 0.25L)) out.c_below_quarter = false;
    }
    const long double e = t - 0.5L * (k + 2) - quarter_log * lk;
    if (have_e && !(e < prev_e)) out.e_decreasing = false;
    prev_e = e;
    have_e = true;
    out.e_lower_bound = std::min(out.e_lower_bound, static_cast<double>(e));
    if (k == cap / 10) {
      const long double lkk = std::log(static_cast<long double>(k));
      zeta_prev_decade = 2.0L * t - k - 1 - 0.5L * lkk;
    }
  }
  const long double lcap = std::log(static_cast<long double>(cap));
  const long double zeta = 2.0L * t - cap - 1 - 0.5L * lcap;
  out.zeta = static_cast<double>(zeta);
  out.residual = static_cast<double>(zeta - zeta_prev_decade);
  return out;
}

}  // namespace ogm

#endif  // OGMLAB_SCHEDULES_HPP
