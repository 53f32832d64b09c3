#ifndef OGMLAB_METHODS_HPP
#define OGMLAB_METHODS_HPP

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ogmlab/numkit.hpp"
#include "ogmlab/problems.hpp"
#include "ogmlab/schedules.hpp"

namespace ogm {

class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(long k, const std::string& tag)
      : std::runtime_error("non-finite iterate at k=" + std::to_string(k) + " (" + tag + ")"),
        iteration(k) {}
  long iteration;
};

/// Per-method iterate bundle. The gradient at the current x is cached so
/// each iteration costs exactly one oracle call.
struct MethodState {
  long k = 0;
  Vec x;
  Vec y;
  std::optional<Vec> z;  // absent for momentum-only forms after the first step
  Vec y_prev;
  Vec grad_x;
  double f_x = 0.0;
  std::string method_tag;
};

inline MethodState init_state(const ObjectiveOracle& oracle, const Vec& x0, std::string tag) {
  if (x0.size() != oracle.dim()) throw std::invalid_argument("init_state: dimension mismatch");
  MethodState s;
  s.x = x0;
  s.y = x0;
  s.z = x0;
  s.y_prev = x0;
  s.grad_x = oracle.gradient(x0);
  s.f_x = oracle.value(x0);
  s.method_tag = std::move(tag);
  return s;
}

namespace detail {

inline void finish_step(MethodState& s, const ObjectiveOracle& oracle, Vec y_next, Vec x_next,
                        std::optional<Vec> z_next) {
  s.y_prev = std::move(s.y);
  s.y = std::move(y_next);
  s.x = std::move(x_next);
  s.z = std::move(z_next);
  ++s.k;
  if (!s.x.allFinite() || !s.y.allFinite() || (s.z && !s.z->allFinite()))
    throw DivergenceError(s.k, s.method_tag);
  s.grad_x = oracle.gradient(s.x);
  s.f_x = oracle.value(s.x);
  if (!s.grad_x.allFinite() || !std::isfinite(s.f_x)) throw DivergenceError(s.k, s.method_tag);
}

}  // namespace detail

/// AGM, momentum form:
/// y_{k+1} = x_k - (1/L)g_k,  x_{k+1} = y_{k+1} + (th_k-1)/th_{k+1} (y_{k+1}-y_k).
inline void step_agm(MethodState& s, const ObjectiveOracle& oracle, const ThetaSchedule& theta) {
  const double l = oracle.smoothness();
  Vec y1 = s.x - s.grad_x / l;
  Vec x1 = y1 + ((theta(s.k) - 1.0) / theta(s.k + 1)) * (y1 - s.y);
  detail::finish_step(s, oracle, std::move(y1), std::move(x1), std::nullopt);
}

/// AGM, three-sequence form: z_{k+1} = z_k - (th_k/L)g_k.
inline void step_agm_z(MethodState& s, const ObjectiveOracle& oracle, const ThetaSchedule& theta) {
  if (!s.z) throw std::invalid_argument("step_agm_z: state carries no z sequence");
  const double l = oracle.smoothness();
  Vec y1 = s.x - s.grad_x / l;
  Vec z1 = *s.z - (theta(s.k) / l) * s.grad_x;
  const double inv = 1.0 / theta(s.k + 1);
  Vec x1 = (1.0 - inv) * y1 + inv * z1;
  detail::finish_step(s, oracle, std::move(y1), std::move(x1), std::move(z1));
}

/// OGM, momentum + correction form:
/// x_{k+1} = y_{k+1} + (th_k-1)/th_{k+1} (y_{k+1}-y_k) + th_k/th_{k+1} (y_{k+1}-x_k).
inline void step_ogm(MethodState& s, const ObjectiveOracle& oracle, const ThetaSchedule& theta) {
  const double l = oracle.smoothness();
  const double tk = theta(s.k), tk1 = theta(s.k + 1);
  Vec y1 = s.x - s.grad_x / l;
  Vec x1 = y1 + ((tk - 1.0) / tk1) * (y1 - s.y) + (tk / tk1) * (y1 - s.x);
  detail::finish_step(s, oracle, std::move(y1), std::move(x1), std::nullopt);
}

/// OGM, three-sequence form; the z step carries the factor 2 that
/// distinguishes OGM from AGM.
inline void step_ogm_z(MethodState& s, const ObjectiveOracle& oracle, const ThetaSchedule& theta) {
  if (!s.z) throw std::invalid_argument("step_ogm_z: state carries no z sequence");
  const double l = oracle.smoothness();
  Vec y1 = s.x - s.grad_x / l;
  Vec z1 = *s.z - (2.0 * theta(s.k) / l) * s.grad_x;
  const double inv = 1.0 / theta(s.k + 1);
  Vec x1 = (1.0 - inv) * y1 + inv * z1;
  detail::finish_step(s, oracle, std::move(y1), std::move(x1), std::move(z1));
}

/// Last-step combination x~_k = (1 - 1/phi_k) y_k + (1/phi_k) z_k for the
/// state's current index. Pure function of the state; the trajectory is not
/// modified.
inline Vec last_step_modify(const MethodState& s, const PhiSchedule& phi) {
  if (!s.z) throw std::invalid_argument("last_step_modify: state carries no z sequence");
  const double inv = 1.0 / phi(s.k);
  return (1.0 - inv) * s.y + inv * *s.z;
}

/// SC-AGM: constant momentum (sqrt(kappa)-1)/(sqrt(kappa)+1).
inline void step_sc_agm(MethodState& s, const ObjectiveOracle& oracle) {
  if (!(oracle.strong_convexity() > 0.0))
    throw std::invalid_argument("step_sc_agm: oracle is not strongly convex");
  const double l = oracle.smoothness();
  const double rk = std::sqrt(oracle.kappa());
  const double c = (rk - 1.0) / (rk + 1.0);
  Vec y1 = s.x - s.grad_x / l;
  Vec x1 = y1 + c * (y1 - s.y);
  detail::finish_step(s, oracle, std::move(y1), std::move(x1), std::nullopt);
}

/// SC-OGM: momentum and correction both weighted 1/(2*gamma+1). The auxiliary
/// z_k = ((2g+1)x_k - (g+1)y_k)/g is recomputed from its closed form each
/// step so the certificate sequence cannot drift.
inline void step_sc_ogm(MethodState& s, const ObjectiveOracle& oracle, const ScGamma& gamma) {
  if (!(oracle.strong_convexity() > 0.0))
    throw std::invalid_argument("step_sc_ogm: oracle is not strongly convex");
  const double l = oracle.smoothness();
  const double c = gamma.momentum();
  Vec y1 = s.x - s.grad_x / l;
  Vec x1 = y1 + c * (y1 - s.y) + c * (y1 - s.x);
  Vec z1 = ((2.0 * gamma.gamma + 1.0) * x1 - (gamma.gamma + 1.0) * y1) / gamma.gamma;
  detail::finish_step(s, oracle, std::move(y1), std::move(x1), std::move(z1));
}

/// Linear coupling: metric gradient step, closed-form mirror step for the
/// quadratic generator, then convex coupling.
inline void step_lc(MethodState& s, const ObjectiveOracle& oracle,
                    const CouplingSchedule& coupling, const BregmanGenerator& breg) {
  if (!s.z) throw std::invalid_argument("step_lc: state carries no z sequence");
  const double l = oracle.smoothness();
  Vec metric_grad = breg.norm().apply_inverse(s.grad_x);
  Vec y1 = s.x - metric_grad / l;
  Vec z1 = *s.z - (coupling.alpha(s.k + 1) * breg.scale()) * metric_grad;
  const double tau = coupling.tau(s.k + 1);
  Vec x1 = (1.0 - tau) * y1 + tau * z1;
  detail::finish_step(s, oracle, std::move(y1), std::move(x1), std::move(z1));
}

/// Unified AGM/OGM family (momentum form): correction weighted by (2t-1),
/// t = 1/2 is AGM and t = 1 is OGM.
inline void step_unified(MethodState& s, const ObjectiveOracle& oracle,
                         const ThetaSchedule& theta, double t) {
  if (!(t > 0.0 && t <= 1.0)) throw std::invalid_argument("step_unified: t must lie in (0,1]");
  const double l = oracle.smoothness();
  const double tk = theta(s.k), tk1 = theta(s.k + 1);
  Vec y1 = s.x - s.grad_x / l;
  Vec x1 = y1 + ((tk - 1.0) / tk1) * (y1 - s.y) + ((2.0 * t - 1.0) * tk / tk1) * (y1 - s.x);
  detail::finish_step(s, oracle, std::move(y1), std::move(x1), std::nullopt);
}

/// Strongly convex linear coupling:
/// y_{k+1} = x_k - (1/L)Q^{-1}g_k,
/// z_{k+1} = (z_k + g x_k - (g/mu)Q^{-1}g_k)/(1+g),
/// x_{k+1} = tau z_{k+1} + (1-tau) y_{k+1} with tau = g^2/(g^2+g+1).
inline void step_lc_sc_ogm(MethodState& s, const ObjectiveOracle& oracle, const ScGamma& gamma,
                           const QuadraticNorm& q) {
  if (!s.z) throw std::invalid_argument("step_lc_sc_ogm: state carries no z sequence");
  const double mu = oracle.strong_convexity();
  if (!(mu > 0.0)) throw std::invalid_argument("step_lc_sc_ogm: oracle is not strongly convex");
  const double l = oracle.smoothness();
  const double g = gamma.gamma;
  Vec metric_grad = q.apply_inverse(s.grad_x);
  Vec y1 = s.x - metric_grad / l;
  Vec z1 = (*s.z + g * s.x - (g / mu) * metric_grad) / (1.0 + g);
  const double tau = sc_coupling_tau(gamma);
  Vec x1 = tau * z1 + (1.0 - tau) * y1;
  detail::finish_step(s, oracle, std::move(y1), std::move(x1), std::move(z1));
}

enum class Algorithm { agm, agm_z, ogm, ogm_z, simple_ogm, sc_agm, sc_ogm, lc, lc_sc_ogm, unified };

inline const char* algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::agm: return "agm";
    case Algorithm::agm_z: return "agm_z";
    case Algorithm::ogm: return "ogm";
    case Algorithm::ogm_z: return "ogm_z";
    case Algorithm::simple_ogm: return "simple_ogm";
    case Algorithm::sc_agm: return "sc_agm";
    case Algorithm::sc_ogm: return "sc_ogm";
    case Algorithm::lc: return "lc";
    case Algorithm::lc_sc_ogm: return "lc_sc_ogm";
    case Algorithm::unified: return "unified";
  }
  return "?";
}

struct MethodConfig {
  Algorithm algorithm = Algorithm::ogm_z;
  ThetaSchedule theta = ThetaSchedule::exact();
  std::optional<PhiSchedule> phi;      // enables the x~ sequence (needs z)
  double t = 1.0;                      // unified / lc only
  std::optional<QuadraticNorm> metric; // lc / lc_sc_ogm; defaults to the oracle norm
  bool last_step = false;
};

/// Full iterate history of one run; vectors are kept so certificates can be
/// evaluated after the fact (problem dimensions here are small).
struct Trajectory {
  std::string method_tag;
  std::vector<Vec> x, y, grad;
  std::vector<Vec> z;        // empty when the form does not carry z
  std::vector<Vec> x_tilde;  // empty unless last_step was requested
  std::vector<double> f_x, f_y, f_xt;

  long iterations() const { return static_cast<long>(x.size()) - 1; }
  bool has_z() const { return !z.empty(); }
  bool has_tilde() const { return !x_tilde.empty(); }
};

struct RunResult {
  Trajectory trajectory;
  std::optional<long> diverged_at;  // set when the run aborted on non-finite state
};

using Recorder = std::function<void(const MethodState&)>;

/// Iterates the configured stepper. Deterministic given (config, oracle, x0);
/// on divergence the partial trajectory is preserved and the iteration index
/// reported in the result.
inline RunResult run(const MethodConfig& config, const ObjectiveOracle& oracle, const Vec& x0,
                     long iters, const Recorder& recorder = {}) {
  if (iters < 1) throw std::invalid_argument("run: iters must be >= 1");
  ThetaSchedule theta =
      config.algorithm == Algorithm::simple_ogm ? ThetaSchedule::simple() : config.theta;
  const bool needs_sc = config.algorithm == Algorithm::sc_agm ||
                        config.algorithm == Algorithm::sc_ogm ||
                        config.algorithm == Algorithm::lc_sc_ogm;
  std::optional<ScGamma> gamma;
  if (config.algorithm == Algorithm::sc_ogm || config.algorithm == Algorithm::lc_sc_ogm)
    gamma = gamma_sc(oracle.kappa());
  if (needs_sc && !(oracle.strong_convexity() > 0.0))
    throw std::invalid_argument("run: algorithm requires a strongly convex oracle");

  std::optional<CouplingSchedule> coupling;
  std::optional<BregmanGenerator> breg;
  if (config.algorithm == Algorithm::lc) {
    coupling = coupling_from_theta(theta, oracle.smoothness(), CouplingSchedule::Mode::ogm);
    breg = BregmanGenerator(config.metric ? *config.metric : oracle.norm(), config.t);
  }
  const QuadraticNorm metric = config.metric ? *config.metric : oracle.norm();

  std::optional<PhiSchedule> phi = config.phi;
  if (config.last_step && !phi) phi = PhiSchedule::exact(theta);

  MethodState s = init_state(oracle, x0, algorithm_name(config.algorithm));
  Trajectory traj;
  traj.method_tag = s.method_tag;
  const bool track_z = config.algorithm == Algorithm::agm_z ||
                       config.algorithm == Algorithm::ogm_z ||
                       config.algorithm == Algorithm::simple_ogm ||
                       config.algorithm == Algorithm::sc_ogm ||
                       config.algorithm == Algorithm::lc ||
                       config.algorithm == Algorithm::lc_sc_ogm;
  const bool track_tilde = (config.last_step || config.phi.has_value());
  if (track_tilde && !track_z)
    throw std::invalid_argument("run: the last-step sequence needs a z-carrying form");

  auto record = [&](const MethodState& st, double f_y_val) {
    traj.x.push_back(st.x);
    traj.y.push_back(st.y);
    traj.grad.push_back(st.grad_x);
    traj.f_x.push_back(st.f_x);
    traj.f_y.push_back(f_y_val);
    if (track_z) traj.z.push_back(*st.z);
    if (track_tilde) {
      Vec xt = last_step_modify(st, *phi);
      traj.f_xt.push_back(oracle.value(xt));
      traj.x_tilde.push_back(std::move(xt));
    }
    if (recorder) recorder(st);
  };

  record(s, s.f_x);  // k = 0 row; y_0 = x_0

  for (long i = 0; i < iters; ++i) {
    try {
      switch (config.algorithm) {
        case Algorithm::agm: step_agm(s, oracle, theta); break;
        case Algorithm::agm_z: step_agm_z(s, oracle, theta); break;
        case Algorithm::ogm: step_ogm(s, oracle, theta); break;
        case Algorithm::ogm_z: step_ogm_z(s, oracle, theta); break;
        case Algorithm::simple_ogm: step_ogm_z(s, oracle, theta); break;
        case Algorithm::sc_agm: step_sc_agm(s, oracle); break;
        case Algorithm::sc_ogm: step_sc_ogm(s, oracle, *gamma); break;
        case Algorithm::lc: step_lc(s, oracle, *coupling, *breg); break;
        case Algorithm::lc_sc_ogm: step_lc_sc_ogm(s, oracle, *gamma, metric); break;
        case Algorithm::unified: step_unified(s, oracle, theta, config.t); break;
      }
    } catch (const DivergenceError& e) {
      return RunResult{std::move(traj), e.iteration};
    }
    record(s, oracle.value(s.y));
  }
  return RunResult{std::move(traj), std::nullopt};
}

}  // namespace ogm

#endif  // OGMLAB_METHODS_HPP
