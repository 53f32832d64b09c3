#ifndef OGMLAB_CERTIFICATES_HPP
#define OGMLAB_CERTIFICATES_HPP

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ogmlab/methods.hpp"
#include "ogmlab/numkit.hpp"
#include "ogmlab/problems.hpp"
#include "ogmlab/schedules.hpp"

namespace ogm {

/// h(x) = f(x) - f* - (1/2L)||grad f(x)||_*^2, nonnegative by L-smoothness.
inline double gap_term(const Vec& x, const ObjectiveOracle& oracle) {
  const double g = oracle.norm().dual(oracle.gradient(x));
  return oracle.value(x) - oracle.reference().f_star - g * g / (2.0 * oracle.smoothness());
}

inline double gap_term(double f_x, const Vec& grad_x, const ObjectiveOracle& oracle) {
  const double g = oracle.norm().dual(grad_x);
  return f_x - oracle.reference().f_star - g * g / (2.0 * oracle.smoothness());
}

/// Roundoff tolerance for certificate inequalities:
/// tol_k = 1e-9 (1+|U_0|) + k 1e-12 |U_0| + weight * eps_ref,
/// where eps_ref is the first-order objective uncertainty induced by a
/// refined (inexact) reference and weight the f-coefficient of the
/// certificate at index k.
struct ToleranceModel {
  double u0_abs = 0.0;
  double eps_ref = 0.0;
  double scale = 1.0;  // global override from the experiment config

  static ToleranceModel make(double u0, const ObjectiveOracle& oracle) {
    const Reference& ref = oracle.reference();
    const double eps =
        ref.exact ? 0.0 : ref.grad_residual * (1.0 + oracle.norm().primal(ref.x_star));
    return ToleranceModel{std::abs(u0), eps, 1.0};
  }

  double operator()(long k, double f_weight = 1.0) const {
    return scale * (1e-9 * (1.0 + u0_abs) + static_cast<double>(k) * 1e-12 * u0_abs +
                    f_weight * eps_ref);
  }
};

struct CertRow {
  long k = 0;
  double lyap = 0.0;
  double dlyap = 0.0;   // certificate increment; must stay <= tol
  double bound = 0.0;   // theoretical bound on the gap (0 when not applicable)
  double gap = 0.0;     // measured f - f*
  double slack = 0.0;   // bound - gap
  bool violated = false;
};

struct CertificateReport {
  std::string name;
  std::vector<CertRow> rows;
  double worst_slack = std::numeric_limits<double>::infinity();
  std::optional<long> first_violation;
  double eps_ref = 0.0;

  bool ok() const { return !first_violation.has_value(); }

  void push(CertRow row) {
    worst_slack = std::min(worst_slack, row.slack);
    if (row.violated && !first_violation) first_violation = row.k;
    rows.push_back(row);
  }
};

// ---------------------------------------------------------------------------
// Lyapunov functions
// ---------------------------------------------------------------------------

/// AGM: U_k = th_{k-1}^2 (f(y_k) - f*) + (L/2)||z_k - x*||^2, k >= 0.
inline double lyapunov_agm(const Trajectory& traj, const ObjectiveOracle& oracle,
                           const ThetaSchedule& theta, long k) {
  if (!traj.has_z()) throw std::invalid_argument("lyapunov_agm: trace carries no z");
  const Reference& ref = oracle.reference();
  const double t = theta(k - 1);
  const double d = oracle.norm().primal(traj.z[static_cast<std::size_t>(k)] - ref.x_star);
  return t * t * (traj.f_y[static_cast<std::size_t>(k)] - ref.f_star) +
         0.5 * oracle.smoothness() * d * d;
}

/// OGM: U_k = 2 th_k^2 h(x_k) + (L/2)||z_{k+1} - x*||^2 for k >= 0 and
/// U_{-1} = (L/2)||x_0 - x*||^2 (th_{-1} = 0, z_0 = x_0).
inline double lyapunov_ogm(const Trajectory& traj, const ObjectiveOracle& oracle,
                           const ThetaSchedule& theta, long k) {
  if (!traj.has_z()) throw std::invalid_argument("lyapunov_ogm: trace carries no z");
  const Reference& ref = oracle.reference();
  const double l = oracle.smoothness();
  if (k == -1) {
    const double d = oracle.norm().primal(traj.z[0] - ref.x_star);
    return 0.5 * l * d * d;
  }
  const auto i = static_cast<std::size_t>(k);
  const double t = theta(k);
  const double h = gap_term(traj.f_x[i], traj.grad[i], oracle);
  const double d = oracle.norm().primal(traj.z[i + 1] - ref.x_star);
  return 2.0 * t * t * h + 0.5 * l * d * d;
}

/// OGM secondary: U~_k = phi_k^2 (f(x~_k) - f*)
///                     + (L/2)||z_k - (phi_k/L) grad f(x~_k) - x*||^2.
inline double lyapunov_ogm_tilde(const Trajectory& traj, const ObjectiveOracle& oracle,
                                 const PhiSchedule& phi, long k) {
  if (!traj.has_z() || !traj.has_tilde())
    throw std::invalid_argument("lyapunov_ogm_tilde: trace needs z and x~ sequences");
  const Reference& ref = oracle.reference();
  const double l = oracle.smoothness();
  const auto i = static_cast<std::size_t>(k);
  const double p = phi(k);
  const Vec g = oracle.gradient(traj.x_tilde[i]);
  const double d = oracle.norm().primal(traj.z[i] - (p / l) * g - ref.x_star);
  return p * p * (traj.f_xt[i] - ref.f_star) + 0.5 * l * d * d;
}

/// SC-OGM inner value W_k = h(x_k) + (mu/2)||z_{k+1} - x*||^2; the Lyapunov
/// function is U_k = (1+gamma)^k W_k. Keeping the two separate avoids
/// overflow of the geometric weight on long runs.
inline double sc_ogm_inner(const Trajectory& traj, const ObjectiveOracle& oracle, long k) {
  if (!traj.has_z()) throw std::invalid_argument("sc_ogm_inner: trace carries no z");
  const Reference& ref = oracle.reference();
  const auto i = static_cast<std::size_t>(k);
  const double h = gap_term(traj.f_x[i], traj.grad[i], oracle);
  const double d = oracle.norm().primal(traj.z[i + 1] - ref.x_star);
  return h + 0.5 * oracle.strong_convexity() * d * d;
}

inline double lyapunov_sc_ogm(const Trajectory& traj, const ObjectiveOracle& oracle,
                              const ScGamma& gamma, long k) {
  if (!(oracle.strong_convexity() > 0.0))
    throw std::invalid_argument("lyapunov_sc_ogm: oracle is not strongly convex");
  return std::pow(1.0 + gamma.gamma, static_cast<double>(k)) * sc_ogm_inner(traj, oracle, k);
}

/// SC-OGM secondary inner value:
/// W~_k = (2g/(1+g))(f(x_k) - f*) + (mu/2)||z_k - ((g+2)/g)(1/L) grad f(x_k) - x*||^2,
/// with U~_k = (1+g)^{k-1} W~_k.
inline double sc_ogm_tilde_inner(const Trajectory& traj, const ObjectiveOracle& oracle,
                                 const ScGamma& gamma, long k) {
  if (!traj.has_z()) throw std::invalid_argument("sc_ogm_tilde_inner: trace carries no z");
  const Reference& ref = oracle.reference();
  const double g = gamma.gamma;
  const double l = oracle.smoothness();
  const auto i = static_cast<std::size_t>(k);
  const Vec shifted = traj.z[i] - ((g + 2.0) / g / l) * traj.grad[i] - ref.x_star;
  const double d = oracle.norm().primal(shifted);
  return (2.0 * g / (1.0 + g)) * (traj.f_x[i] - ref.f_star) +
         0.5 * oracle.strong_convexity() * d * d;
}

inline double lyapunov_sc_ogm_tilde(const Trajectory& traj, const ObjectiveOracle& oracle,
                                    const ScGamma& gamma, long k) {
  return std::pow(1.0 + gamma.gamma, static_cast<double>(k - 1)) *
         sc_ogm_tilde_inner(traj, oracle, gamma, k);
}

/// Linear coupling potential Phi_k = (alpha_{k+1}^2 L/2) h(x_k) + V_{z_{k+1}}(x*).
inline double lyapunov_lc(const Trajectory& traj, const ObjectiveOracle& oracle,
                          const CouplingSchedule& coupling, const BregmanGenerator& breg,
                          long k) {
  if (!traj.has_z()) throw std::invalid_argument("lyapunov_lc: trace carries no z");
  const Reference& ref = oracle.reference();
  const double l = oracle.smoothness();
  const auto i = static_cast<std::size_t>(k);
  const double a = coupling.alpha(k + 1);
  const double h = gap_term(traj.f_x[i], traj.grad[i], oracle);
  return 0.5 * a * a * l * h + breg(traj.z[i + 1], ref.x_star);
}

// ---------------------------------------------------------------------------
// Theoretical bounds
// ---------------------------------------------------------------------------

/// AGM: f(y_k) - f* <= L R2 / (2 th_{k-1}^2), k >= 1.
inline double bound_agm(long k, const ThetaSchedule& theta, double l, double r2) {
  if (k < 1) throw std::invalid_argument("bound_agm: k must be >= 1");
  const double t = theta(k - 1);
  return l * r2 / (2.0 * t * t);
}

/// OGM primary: f(y_k) - f* <= L R2 / (4 th_{k-1}^2), k >= 1.
inline double bound_ogm_primary(long k, const ThetaSchedule& theta, double l, double r2) {
  if (k < 1) throw std::invalid_argument("bound_ogm_primary: k must be >= 1");
  const double t = theta(k - 1);
  return l * r2 / (4.0 * t * t);
}

/// OGM secondary: f(x~_k) - f* <= L R2 / (2 phi_k^2), k >= 0.
inline double bound_ogm_secondary(long k, const PhiSchedule& phi, double l, double r2) {
  if (k < 0) throw std::invalid_argument("bound_ogm_secondary: k must be >= 0");
  const double p = phi(k);
  return l * r2 / (2.0 * p * p);
}

struct ScBounds {
  double primary;    // f(y_k) - f* <= (1+g)^{-k+1} (mu+2L)/2 R2
  double secondary;  // f(x_k) - f* <= (1+g)^{-k+2}/(2g) (mu+2L)/2 R2
};

inline ScBounds bound_sc_ogm(long k, const ScGamma& gamma, double mu, double l, double r2) {
  if (k < 1) throw std::invalid_argument("bound_sc_ogm: k must be >= 1");
  const double base = 0.5 * (mu + 2.0 * l) * r2;
  const double g = gamma.gamma;
  const double primary = std::pow(1.0 + g, static_cast<double>(-k + 1)) * base;
  return ScBounds{primary, std::pow(1.0 + g, static_cast<double>(-k + 2)) / (2.0 * g) * base};
}

enum class LcBound { primary, secondary };

/// LC primary: f(y_k) - f* <= 2 V_{x0}(x*) / (L alpha_k^2), k >= 1.
/// LC secondary: f(x~_k) - f* <= V_{x0}(x*) L / phi_k^2 (via the tilde alpha
/// paired with x~_k).
inline double bound_lc(long k, const CouplingSchedule& coupling, double l, double v0,
                       LcBound which) {
  if (which == LcBound::primary) {
    const double a = coupling.alpha(k);
    return 2.0 * v0 / (l * a * a);
  }
  const double a = coupling.tilde_alpha(k);
  return v0 / (l * a * a);
}

// ---------------------------------------------------------------------------
// Trajectory certification
// ---------------------------------------------------------------------------

/// AGM certificate: U_k nonincreasing plus the Section-2 bound on f(y_k).
inline CertificateReport certify_agm(const Trajectory& traj, const ObjectiveOracle& oracle,
                                     const ThetaSchedule& theta, double tol_scale = 1.0) {
  const Reference& ref = oracle.reference();
  const double r2 = std::pow(oracle.norm().primal(traj.x[0] - ref.x_star), 2);
  CertificateReport rep;
  rep.name = "agm";
  const double u0 = lyapunov_agm(traj, oracle, theta, 0);
  ToleranceModel tol = ToleranceModel::make(u0, oracle);
  tol.scale = tol_scale;
  rep.eps_ref = tol.eps_ref;
  double prev = u0;
  for (long k = 0; k <= traj.iterations(); ++k) {
    CertRow row;
    row.k = k;
    row.lyap = lyapunov_agm(traj, oracle, theta, k);
    row.dlyap = row.lyap - prev;
    row.gap = traj.f_y[static_cast<std::size_t>(k)] - ref.f_star;
    const double tk = theta(k - 1);
    const double w = tk * tk;
    if (k >= 1) {
      row.bound = bound_agm(k, theta, oracle.smoothness(), r2);
      row.slack = row.bound - row.gap;
    } else {
      row.bound = 0.0;
      row.slack = 0.0;
    }
    row.violated = row.dlyap > tol(k, w) || (k >= 1 && row.slack < -tol(k, w));
    prev = row.lyap;
    rep.push(row);
  }
  return rep;
}

/// OGM certificate: U_k nonincreasing from k = -1 and the primary bound f(y_k) - f* <= L R2 / (4 th_{k-1}^2).
inline CertificateReport certify_ogm(const Trajectory& traj, const ObjectiveOracle& oracle,
                                     const ThetaSchedule& theta, double tol_scale = 1.0) {
  const Reference& ref = oracle.reference();
  const double r2 = std::pow(oracle.norm().primal(traj.x[0] - ref.x_star), 2);
  CertificateReport rep;
  rep.name = "ogm";
  const double u_init = lyapunov_ogm(traj, oracle, theta, -1);
  ToleranceModel tol = ToleranceModel::make(u_init, oracle);
  tol.scale = tol_scale;
  rep.eps_ref = tol.eps_ref;
  double prev = u_init;
  for (long k = 0; k <= traj.iterations(); ++k) {
    CertRow row;
    row.k = k;
    const double tk = theta(k);
    const double w = 2.0 * tk * tk;
    if (k <= traj.iterations() - 1) {
      row.lyap = lyapunov_ogm(traj, oracle, theta, k);
      row.dlyap = row.lyap - prev;
      prev = row.lyap;
    } else {
      row.lyap = prev;  // z_{k+1} beyond the trace; monotonicity ends one early
      row.dlyap = 0.0;
    }
    row.gap = traj.f_y[static_cast<std::size_t>(k)] - ref.f_star;
    if (k >= 1) {
      row.bound = bound_ogm_primary(k, theta, oracle.smoothness(), r2);
      row.slack = row.bound - row.gap;
    }
    row.violated = row.dlyap > tol(k, w) || (k >= 1 && row.slack < -tol(k, w));
    rep.push(row);
  }
  return rep;
}

/// OGM secondary certificate: chain U~_k <= U_{k-1} and the bound
/// f(x~_k) - f* <= L R2 / (2 phi_k^2).
/// With the simple phi variant the bound applies from k = 1 only.
inline CertificateReport certify_ogm_tilde(const Trajectory& traj, const ObjectiveOracle& oracle,
                                           const ThetaSchedule& theta, const PhiSchedule& phi,
                                           double tol_scale = 1.0) {
  const Reference& ref = oracle.reference();
  const double r2 = std::pow(oracle.norm().primal(traj.x[0] - ref.x_star), 2);
  CertificateReport rep;
  rep.name = "ogm_tilde";
  const double u_init = lyapunov_ogm(traj, oracle, theta, -1);
  ToleranceModel tol = ToleranceModel::make(u_init, oracle);
  tol.scale = tol_scale;
  rep.eps_ref = tol.eps_ref;
  const long bound_start = phi.variant() == PhiSchedule::Variant::simple ? 1 : 0;
  for (long k = 0; k <= traj.iterations(); ++k) {
    CertRow row;
    row.k = k;
    const double p = phi(k);
    const double w = p * p;
    row.lyap = lyapunov_ogm_tilde(traj, oracle, phi, k);
    const double u_prev = k - 1 <= traj.iterations() - 1
                              ? lyapunov_ogm(traj, oracle, theta, k - 1)
                              : row.lyap;
    row.dlyap = row.lyap - u_prev;  // chain inequality U~_k - U_{k-1} <= tol
    row.gap = traj.f_xt[static_cast<std::size_t>(k)] - ref.f_star;
    if (k >= bound_start) {
      row.bound = bound_ogm_secondary(k, phi, oracle.smoothness(), r2);
      row.slack = row.bound - row.gap;
    }
    row.violated = row.dlyap > tol(k, w) || (k >= bound_start && row.slack < -tol(k, w));
    rep.push(row);
  }
  return rep;
}

/// SC-OGM certificate: per-step contraction of the inner value by 1/(1+g)
/// (equivalently U_k nonincreasing), the (1+g)^{-k+1} (mu+2L)/2 R2 bound on f(y_k), and the
/// U_0 <= (mu+2L)/2 R2 initialization check.
inline CertificateReport certify_sc_ogm(const Trajectory& traj, const ObjectiveOracle& oracle,
                                        const ScGamma& gamma, double tol_scale = 1.0) {
  const Reference& ref = oracle.reference();
  const double r2 = std::pow(oracle.norm().primal(traj.x[0] - ref.x_star), 2);
  CertificateReport rep;
  rep.name = "sc_ogm";
  const double w0 = sc_ogm_inner(traj, oracle, 0);
  ToleranceModel tol = ToleranceModel::make(w0, oracle);
  tol.scale = tol_scale;
  rep.eps_ref = tol.eps_ref;
  const double contraction = 1.0 / (1.0 + gamma.gamma);
  const double scale = 1.0 + std::abs(ref.f_star) + oracle.smoothness() * r2;

  {
    CertRow row;  // k = 0: initialization bound U_0 <= (mu+2L)/2 R2
    row.k = 0;
    row.lyap = w0;
    row.bound = 0.5 * (oracle.strong_convexity() + 2.0 * oracle.smoothness()) * r2;
    row.gap = traj.f_y[0] - ref.f_star;
    row.slack = row.bound - w0;
    row.violated = row.slack < -tol(0);
    rep.push(row);
  }

  double prev = w0;
  for (long k = 1; k <= traj.iterations(); ++k) {
    CertRow row;
    row.k = k;
    row.gap = traj.f_y[static_cast<std::size_t>(k)] - ref.f_star;
    row.bound = bound_sc_ogm(k, gamma, oracle.strong_convexity(), oracle.smoothness(), r2).primary;
    row.slack = row.bound - row.gap;
    bool contraction_ok = true;
    if (k <= traj.iterations() - 1) {
      row.lyap = sc_ogm_inner(traj, oracle, k);
      row.dlyap = row.lyap - contraction * prev;
      // Stop checking the ratio once the value sits in the roundoff floor.
      if (prev > 1e-12 * scale) contraction_ok = row.dlyap <= tol(k);
      prev = row.lyap;
    }
    const bool bound_ok = row.gap <= 1e-12 * scale || row.slack >= -tol(k);
    row.violated = !contraction_ok || !bound_ok;
    rep.push(row);
  }
  return rep;
}

/// SC-OGM secondary certificate: chain U~_k <= U_{k-1} and the (1+g)^{-k+2}/(2g) (mu+2L)/2 R2
/// bound, both for k >= 1 (the chain has no k = 0 counterpart).
inline CertificateReport certify_sc_ogm_tilde(const Trajectory& traj,
                                              const ObjectiveOracle& oracle,
                                              const ScGamma& gamma, double tol_scale = 1.0) {
  const Reference& ref = oracle.reference();
  const double r2 = std::pow(oracle.norm().primal(traj.x[0] - ref.x_star), 2);
  CertificateReport rep;
  rep.name = "sc_ogm_tilde";
  const double w0 = sc_ogm_inner(traj, oracle, 0);
  ToleranceModel tol = ToleranceModel::make(w0, oracle);
  tol.scale = tol_scale;
  rep.eps_ref = tol.eps_ref;
  const double g = gamma.gamma;
  const double scale = 1.0 + std::abs(ref.f_star) + oracle.smoothness() * r2;
  for (long k = 1; k <= traj.iterations(); ++k) {
    CertRow row;
    row.k = k;
    // Compare the inner values: U~_k <= U_{k-1} iff W~_k <= W_{k-1}.
    row.lyap = sc_ogm_tilde_inner(traj, oracle, gamma, k);
    const double w_prev = sc_ogm_inner(traj, oracle, k - 1);
    row.dlyap = row.lyap - w_prev;
    row.gap = traj.f_x[static_cast<std::size_t>(k)] - ref.f_star;
    row.bound =
        bound_sc_ogm(k, gamma, oracle.strong_convexity(), oracle.smoothness(), r2).secondary;
    row.slack = row.bound - row.gap;
    const bool chain_ok = w_prev <= 1e-12 * scale || row.dlyap <= tol(k, 2.0 * g / (1.0 + g));
    const bool bound_ok = row.gap <= 1e-12 * scale || row.slack >= -tol(k);
    row.violated = !chain_ok || !bound_ok;
    rep.push(row);
  }
  return rep;
}

/// LC certificate: the per-step coupling inequality
/// (a_{k+1}^2 L/2) h(x_k) + V_{z_{k+1}}(x*)
///   <= ((a_{k+1}^2 L - 2 a_{k+1})/2) h(x_{k-1}) + V_{z_k}(x*)
/// plus the bound f(y_k) - f* <= 2 V_{z_0}(x*) / (L a_k^2).
inline CertificateReport certify_lc(const Trajectory& traj, const ObjectiveOracle& oracle,
                                    const CouplingSchedule& coupling,
                                    const BregmanGenerator& breg, double tol_scale = 1.0) {
  const Reference& ref = oracle.reference();
  CertificateReport rep;
  rep.name = "lc";
  const double l = oracle.smoothness();
  const double v0 = breg(traj.x[0], ref.x_star);
  ToleranceModel tol = ToleranceModel::make(v0, oracle);
  tol.scale = tol_scale;
  rep.eps_ref = tol.eps_ref;

  std::vector<double> h(static_cast<std::size_t>(traj.iterations()) + 1);
  for (std::size_t i = 0; i < h.size(); ++i) h[i] = gap_term(traj.f_x[i], traj.grad[i], oracle);

  for (long k = 0; k <= traj.iterations() - 1; ++k) {
    CertRow row;
    row.k = k;
    const auto i = static_cast<std::size_t>(k);
    const double a = coupling.alpha(k + 1);
    const double w = 0.5 * a * a * l;
    row.lyap = 0.5 * a * a * l * h[i] + breg(traj.z[i + 1], ref.x_star);
    const double h_prev = k == 0 ? h[0] : h[i - 1];  // x_{-1} = x_0 convention
    const double rhs = 0.5 * (a * a * l - 2.0 * a) * h_prev + breg(traj.z[i], ref.x_star);
    row.dlyap = row.lyap - rhs;
    if (k >= 1) {
      row.gap = traj.f_y[i] - ref.f_star;
      row.bound = bound_lc(k, coupling, l, v0, LcBound::primary);
      row.slack = row.bound - row.gap;
    }
    row.violated = row.dlyap > tol(k, w) || (k >= 1 && row.slack < -tol(k, w));
    rep.push(row);
  }
  return rep;
}

/// LC-SC-OGM certificate: the coupling-lemma contraction
/// (1+g) W_k <= W_{k-1} with W_k = h(x_k) + (mu/2)||z_k - x*||^2.
inline CertificateReport certify_lc_sc_ogm(const Trajectory& traj, const ObjectiveOracle& oracle,
                                           const ScGamma& gamma, double tol_scale = 1.0) {
  const Reference& ref = oracle.reference();
  CertificateReport rep;
  rep.name = "lc_sc_ogm";
  const double g = gamma.gamma;
  // Potential pairing x_k with z_{k+1}: the telescoping argument couples the
  // gap at x_k to the distance of the *next* mirror iterate from the optimum.
  auto inner = [&](long k) {
    const auto i = static_cast<std::size_t>(k);
    const double d = oracle.norm().primal(traj.z[i + 1] - ref.x_star);
    return gap_term(traj.f_x[i], traj.grad[i], oracle) +
           0.5 * oracle.strong_convexity() * d * d;
  };
  const double w0 = inner(0);
  ToleranceModel tol = ToleranceModel::make(w0, oracle);
  tol.scale = tol_scale;
  rep.eps_ref = tol.eps_ref;
  const double r0 = oracle.norm().primal(traj.x[0] - ref.x_star);
  const double scale = 1.0 + std::abs(ref.f_star) + oracle.smoothness() * r0 * r0;
  double prev = w0;
  for (long k = 1; k <= traj.iterations() - 1; ++k) {
    CertRow row;
    row.k = k;
    row.lyap = inner(k);
    row.dlyap = (1.0 + g) * row.lyap - prev;
    row.gap = traj.f_x[static_cast<std::size_t>(k)] - ref.f_star;
    row.violated = prev > 1e-12 * scale && row.dlyap > tol(k, 1.0 + g);
    prev = row.lyap;
    rep.push(row);
  }
  return rep;
}

/// Cocoercivity audit: f(y) >= f(x) + <grad f(x), y-x> + (1/2L)||grad f(x)-grad f(y)||_*^2
/// on every consecutive trace pair and every (x_k, x*) pair. Rows carry the
/// slack; the scale model is L(1 + ||x-y||^2).
inline CertificateReport check_cocoercivity_chain(const Trajectory& traj,
                                                  const ObjectiveOracle& oracle) {
  const double l = oracle.smoothness();
  CertificateReport rep;
  rep.name = "cocoercivity";
  const bool has_ref = oracle.has_reference();
  const Vec* x_star = has_ref ? &oracle.reference().x_star : nullptr;
  const Vec g_star = has_ref ? oracle.gradient(*x_star) : Vec();
  const double f_star_val = has_ref ? oracle.value(*x_star) : 0.0;

  auto slack = [&](const Vec& x, double f_x_val, const Vec& g_x, const Vec& y, double f_y_val,
                   const Vec& g_y) {
    const double cross = g_x.dot(y - x);
    const double dn = oracle.norm().dual(g_x - g_y);
    return f_y_val - f_x_val - cross - dn * dn / (2.0 * l);
  };

  for (long k = 0; k <= traj.iterations(); ++k) {
    const auto i = static_cast<std::size_t>(k);
    CertRow row;
    row.k = k;
    double s = std::numeric_limits<double>::infinity();
    double scale = 1.0;
    if (k + 1 <= traj.iterations()) {
      const double d = oracle.norm().primal(traj.x[i] - traj.x[i + 1]);
      scale = std::max(scale, l * (1.0 + d * d));
      s = std::min(s, slack(traj.x[i], traj.f_x[i], traj.grad[i], traj.x[i + 1], traj.f_x[i + 1],
                            traj.grad[i + 1]));
      s = std::min(s, slack(traj.x[i + 1], traj.f_x[i + 1], traj.grad[i + 1], traj.x[i],
                            traj.f_x[i], traj.grad[i]));
    }
    if (has_ref) {
      const double d = oracle.norm().primal(traj.x[i] - *x_star);
      scale = std::max(scale, l * (1.0 + d * d));
      s = std::min(s, slack(traj.x[i], traj.f_x[i], traj.grad[i], *x_star, f_star_val, g_star));
      s = std::min(s, slack(*x_star, f_star_val, g_star, traj.x[i], traj.f_x[i], traj.grad[i]));
    }
    if (!std::isfinite(s)) continue;
    row.slack = s;
    row.violated = s < -1e-8 * scale;
    rep.push(row);
  }
  return rep;
}

}  // namespace ogm

#endif  // OGMLAB_CERTIFICATES_HPP
