#ifndef OGMLAB_RUNNER_HPP
#define OGMLAB_RUNNER_HPP

#include <cmath>
#include <optional>
#include <string>
#include <utility>

#include "ogmlab/certificates.hpp"
#include "ogmlab/config.hpp"
#include "ogmlab/methods.hpp"
#include "ogmlab/problems.hpp"
#include "ogmlab/refine.hpp"
#include "ogmlab/trace.hpp"

namespace ogm {

/// Builds the oracle for a run. Quadratics adopt the run's metric (if any) as
/// their declared norm so constants, bounds, and certificates share one
/// geometry; problems without a closed-form minimizer get a refined reference.
inline ObjectiveOracle make_oracle(const RunSpec& rs) {
  if (rs.problem.l_override > 0.0) {
    RunSpec plain = rs;
    plain.problem.l_override = 0.0;
    const ObjectiveOracle oracle = make_oracle(plain);
    const double l = rs.problem.l_override;
    return oracle.with_constants(l, std::min(oracle.strong_convexity(), l));
  }
  switch (rs.problem.kind) {
    case ProblemSpec::Kind::quadratic: {
      QuadraticNorm norm =
          rs.method.metric ? *rs.method.metric : QuadraticNorm::identity(rs.problem.dim);
      if (norm.dim() != rs.problem.dim)
        throw ConfigError("run '" + rs.name + "': metric dimension does not match the problem");
      return make_quadratic(rs.problem, std::move(norm));
    }
    case ProblemSpec::Kind::log_sum_exp:
      return refine_reference(make_log_sum_exp(rs.problem), 1e-10);
    case ProblemSpec::Kind::logistic:
      return refine_reference(make_logistic(rs.problem), 1e-10);
  }
  throw ConfigError("run '" + rs.name + "': unknown problem kind");
}

namespace detail {

/// Momentum forms drop z; it is recoverable from the coupling identity
/// x_k = (1 - 1/th_k) y_k + (1/th_k) z_k shared by the AGM/OGM z-forms.
inline void reconstruct_z(Trajectory& traj, const ThetaSchedule& theta) {
  if (traj.has_z()) return;
  traj.z.reserve(traj.x.size());
  for (std::size_t i = 0; i < traj.x.size(); ++i) {
    const double t = theta(static_cast<long>(i));
    traj.z.push_back(t * traj.x[i] - (t - 1.0) * traj.y[i]);
  }
}

inline ThetaSchedule effective_theta(const MethodConfig& m) {
  return m.algorithm == Algorithm::simple_ogm ? ThetaSchedule::simple() : m.theta;
}

inline std::optional<PhiSchedule> effective_phi(const MethodConfig& m) {
  if (m.phi) return m.phi;
  if (m.last_step) return PhiSchedule::exact(effective_theta(m));
  return std::nullopt;
}

}  // namespace detail

/// Evaluates the certificate matching the algorithm. Methods whose potential
/// the analysis does not define (SC-AGM, the unified family at generic t)
/// fall back to the cocoercivity audit, which applies to any trajectory.
inline CertificateReport certify_run(const RunSpec& rs, const ObjectiveOracle& oracle,
                                     const Trajectory& traj, double tol_scale = 1.0) {
  const ThetaSchedule theta = detail::effective_theta(rs.method);
  switch (rs.method.algorithm) {
    case Algorithm::agm:
    case Algorithm::agm_z:
      return certify_agm(traj, oracle, theta, tol_scale);
    case Algorithm::ogm:
    case Algorithm::ogm_z:
    case Algorithm::simple_ogm:
      if (traj.has_tilde())
        return certify_ogm_tilde(traj, oracle, theta, *detail::effective_phi(rs.method),
                                 tol_scale);
      return certify_ogm(traj, oracle, theta, tol_scale);
    case Algorithm::sc_ogm:
      return certify_sc_ogm(traj, oracle, gamma_sc(oracle.kappa()), tol_scale);
    case Algorithm::lc: {
      const CouplingSchedule coupling =
          coupling_from_theta(theta, oracle.smoothness(), CouplingSchedule::Mode::ogm);
      const BregmanGenerator breg(rs.method.metric ? *rs.method.metric : oracle.norm(),
                                  rs.method.t);
      return certify_lc(traj, oracle, coupling, breg, tol_scale);
    }
    case Algorithm::lc_sc_ogm:
      return certify_lc_sc_ogm(traj, oracle, gamma_sc(oracle.kappa()), tol_scale);
    case Algorithm::sc_agm:
    case Algorithm::unified:
      return check_cocoercivity_chain(traj, oracle);
  }
  throw std::logic_error("certify_run: unhandled algorithm");
}

/// Flattens a trajectory into the CSV trace schema: per-iterate objective
/// values, the applicable theoretical bounds, Lyapunov samples, and tolerance
/// flags. Bounds the analysis does not provide stay NaN.
inline Trace build_trace(const RunSpec& rs, const ObjectiveOracle& oracle, const Trajectory& traj,
                         double tol_scale = 1.0) {
  const ThetaSchedule theta = detail::effective_theta(rs.method);
  const std::optional<PhiSchedule> phi = detail::effective_phi(rs.method);
  const Algorithm alg = rs.method.algorithm;
  const Reference& ref = oracle.reference();
  const double l = oracle.smoothness();
  const double r2 = std::pow(oracle.norm().primal(traj.x[0] - ref.x_star), 2);

  const bool sc = alg == Algorithm::sc_ogm;
  const bool ogm_like =
      alg == Algorithm::ogm || alg == Algorithm::ogm_z || alg == Algorithm::simple_ogm;
  const bool agm_like = alg == Algorithm::agm || alg == Algorithm::agm_z;

  std::optional<ScGamma> gamma;
  if (sc || alg == Algorithm::lc_sc_ogm) gamma = gamma_sc(oracle.kappa());
  std::optional<CouplingSchedule> coupling;
  std::optional<BregmanGenerator> breg;
  if (alg == Algorithm::lc) {
    coupling = coupling_from_theta(theta, l, CouplingSchedule::Mode::ogm);
    breg = BregmanGenerator(rs.method.metric ? *rs.method.metric : oracle.norm(), rs.method.t);
  }
  const double v0 = breg ? (*breg)(traj.x[0], ref.x_star) : 0.0;
  const long tilde_start = phi && phi->variant() == PhiSchedule::Variant::simple ? 1 : 0;

  ToleranceModel tol = ToleranceModel::make(0.5 * l * r2, oracle);
  tol.scale = tol_scale;

  Trace trace;
  trace.meta.method = std::string(algorithm_name(alg)) + (traj.has_tilde() ? "+tilde" : "");
  trace.meta.problem = oracle.name();
  trace.meta.l = l;
  trace.meta.mu = oracle.strong_convexity();
  trace.meta.seed = rs.problem.seed;
  trace.meta.ref_residual = ref.grad_residual;
  trace.meta.f_star = ref.f_star;

  const long n = traj.iterations();
  for (long k = 0; k <= n; ++k) {
    const auto i = static_cast<std::size_t>(k);
    TraceRecord r;
    r.k = k;
    r.f_x = traj.f_x[i];
    r.f_y = traj.f_y[i];
    if (traj.has_tilde()) r.f_xtilde = traj.f_xt[i];
    r.grad_dual_norm = oracle.norm().dual(traj.grad[i]);

    double gap_primary = std::numeric_limits<double>::quiet_NaN();
    double gap_secondary = std::numeric_limits<double>::quiet_NaN();
    if (k >= 1) {
      if (agm_like) r.bound_primary = bound_agm(k, theta, l, r2);
      else if (ogm_like) r.bound_primary = bound_ogm_primary(k, theta, l, r2);
      else if (sc)
        r.bound_primary =
            bound_sc_ogm(k, *gamma, oracle.strong_convexity(), l, r2).primary;
      else if (alg == Algorithm::lc)
        r.bound_primary = bound_lc(k, *coupling, l, v0, LcBound::primary);
      if (std::isfinite(r.bound_primary)) gap_primary = r.f_y - ref.f_star;
    }
    if (ogm_like && traj.has_tilde() && k >= tilde_start) {
      r.bound_secondary = bound_ogm_secondary(k, *phi, l, r2);
      gap_secondary = r.f_xtilde - ref.f_star;
    } else if (sc && k >= 1) {
      r.bound_secondary = bound_sc_ogm(k, *gamma, oracle.strong_convexity(), l, r2).secondary;
      gap_secondary = r.f_x - ref.f_star;
    }

    if (traj.has_z()) {
      if (agm_like) r.lyap = lyapunov_agm(traj, oracle, theta, k);
      else if (ogm_like && k <= n - 1) r.lyap = lyapunov_ogm(traj, oracle, theta, k);
      else if (sc && k <= n - 1) r.lyap = sc_ogm_inner(traj, oracle, k);
      else if (alg == Algorithm::lc && k <= n - 1)
        r.lyap = lyapunov_lc(traj, oracle, *coupling, *breg, k);
      else if (alg == Algorithm::lc_sc_ogm && k <= n - 1) {
        // Potential pairs x_k with z_{k+1}, matching the certificate.
        const double d = oracle.norm().primal(traj.z[i + 1] - ref.x_star);
        r.lyap = gap_term(traj.f_x[i], traj.grad[i], oracle) +
                 0.5 * oracle.strong_convexity() * d * d;
      }
      if (ogm_like && traj.has_tilde()) r.lyap_tilde = lyapunov_ogm_tilde(traj, oracle, *phi, k);
      else if (sc && k >= 1) r.lyap_tilde = sc_ogm_tilde_inner(traj, oracle, *gamma, k);
    }

    // The SC bounds stop being meaningful below the roundoff floor of the gap.
    const double floor =
        sc ? 1e-12 * (1.0 + std::abs(ref.f_star) + l * r2) : 0.0;
    if (std::isfinite(r.bound_primary) && std::isfinite(gap_primary) && gap_primary > floor)
      r.slack_primary_ok = gap_primary <= r.bound_primary + tol(k);
    if (std::isfinite(r.bound_secondary) && std::isfinite(gap_secondary) && gap_secondary > floor)
      r.slack_secondary_ok = gap_secondary <= r.bound_secondary + tol(k);

    trace.rows.push_back(r);
  }
  return trace;
}

struct RunOutput {
  Trace trace;
  CertificateReport cert;
  std::optional<long> diverged_at;
};

/// Full pipeline for one configured run: build the oracle, iterate, attach
/// the z sequence where it must be reconstructed, certify, and flatten.
inline RunOutput execute_run(const RunSpec& rs, double tol_scale = 1.0) {
  const ObjectiveOracle oracle = make_oracle(rs);
  RunResult result = run(rs.method, oracle, Vec::Zero(oracle.dim()), rs.iterations);
  Trajectory& traj = result.trajectory;
  if (rs.method.algorithm == Algorithm::agm || rs.method.algorithm == Algorithm::ogm)
    detail::reconstruct_z(traj, detail::effective_theta(rs.method));
  RunOutput out;
  out.cert = certify_run(rs, oracle, traj, tol_scale);
  out.trace = build_trace(rs, oracle, traj, tol_scale);
  out.diverged_at = result.diverged_at;
  return out;
}

}  // namespace ogm

#endif  // OGMLAB_RUNNER_HPP
