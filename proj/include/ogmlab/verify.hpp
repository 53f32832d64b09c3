#ifndef OGMLAB_VERIFY_HPP
#define OGMLAB_VERIFY_HPP

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "ogmlab/certificates.hpp"
#include "ogmlab/methods.hpp"
#include "ogmlab/problems.hpp"
#include "ogmlab/refine.hpp"
#include "ogmlab/runner.hpp"
#include "ogmlab/schedules.hpp"
#include "ogmlab/trace.hpp"

namespace ogm {

struct CriterionResult {
  int index = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<CriterionResult> results;

  bool all_pass() const {
    for (const auto& r : results)
      if (!r.pass) return false;
    return true;
  }
};

struct VerifyOptions {
  bool quick = false;
  // Test hook: scales the primary OGM bound inside criterion 1. Values below
  // 1 tighten the bound past what the analysis guarantees, so a correct
  // implementation must then report a failure (checker-sensitivity test).
  double mutation_scale = 1.0;
};

inline std::string render_report(const VerifyReport& report) {
  std::string out;
  for (const auto& r : report.results) {
    out += "criterion " + std::to_string(r.index) + " [" + r.name + "]: ";
    out += r.pass ? "pass" : "FAIL";
    if (!r.detail.empty()) out += " - " + r.detail;
    out += '\n';
  }
  out += report.all_pass() ? "result: all criteria pass\n" : "result: FAILURES present\n";
  return out;
}

namespace detail {

inline std::string fmt3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

inline Trajectory run_traj(MethodConfig cfg, const ObjectiveOracle& oracle, long iters) {
  RunResult r = run(cfg, oracle, Vec::Zero(oracle.dim()), iters);
  if (r.diverged_at)
    throw DivergenceError(*r.diverged_at, "verification run " + r.trajectory.method_tag);
  return std::move(r.trajectory);
}

inline Trajectory run_traj(Algorithm alg, const ObjectiveOracle& oracle, long iters) {
  MethodConfig cfg;
  cfg.algorithm = alg;
  return run_traj(std::move(cfg), oracle, iters);
}

/// Smooth convex instance set shared by the bound criteria: seeded random
/// quadratics (dims up to 16, condition numbers 10 and 1000) plus smoothed
/// max (log-sum-exp) instances with refined references.
struct VerifySuite {
  std::vector<ObjectiveOracle> smooth;     // quadratics then log-sum-exp
  std::vector<ObjectiveOracle> strongly;   // kappa in {2, 10, 100}
  std::vector<double> strongly_kappa;

  explicit VerifySuite(bool quick) {
    const int n_quad = quick ? 10 : 20;
    const Eigen::Index dims[] = {2, 4, 8, 16};
    const double kappas[] = {10.0, 1000.0};
    for (int s = 1; s <= n_quad; ++s) {
      ProblemSpec spec;
      spec.kind = ProblemSpec::Kind::quadratic;
      spec.dim = dims[s % 4];
      spec.kappa = kappas[s % 2];
      spec.seed = static_cast<std::uint64_t>(s);
      smooth.push_back(make_quadratic(spec, QuadraticNorm::identity(spec.dim)));
    }
    const int n_lse = quick ? 3 : 5;
    for (int s = 1; s <= n_lse; ++s) {
      ProblemSpec spec;
      spec.kind = ProblemSpec::Kind::log_sum_exp;
      spec.dim = 5;
      spec.terms = 12;
      spec.rho = 1.0;
      spec.seed = static_cast<std::uint64_t>(s);
      smooth.push_back(refine_reference(make_log_sum_exp(spec), 1e-10));
    }
    const double sc_kappas[] = {2.0, 10.0, 100.0};
    const int seeds_per_kappa = quick ? 1 : 3;
    for (double kap : sc_kappas)
      for (int s = 1; s <= seeds_per_kappa; ++s) {
        ProblemSpec spec;
        spec.kind = ProblemSpec::Kind::quadratic;
        spec.dim = 6;
        spec.kappa = kap;
        spec.seed = static_cast<std::uint64_t>(100 + s);
        strongly.push_back(make_quadratic(spec, QuadraticNorm::identity(spec.dim)));
        strongly_kappa.push_back(kap);
      }
  }
};

inline double rel_diff(const Vec& a, const Vec& b) {
  return (a - b).norm() / std::max(1.0, a.norm());
}

}  // namespace detail

/// Criterion 1: the primary OGM bound L R2 / (4 th_{k-1}^2) dominates the
/// measured gap on every smooth instance for 1 <= k <= 500.
inline CriterionResult criterion_ogm_bound(const detail::VerifySuite& suite,
                                           double mutation_scale) {
  CriterionResult res{1, "primary bound domination", true, ""};
  const ThetaSchedule theta = ThetaSchedule::exact();
  double worst = std::numeric_limits<double>::infinity();
  for (const ObjectiveOracle& oracle : suite.smooth) {
    const Trajectory traj = detail::run_traj(Algorithm::ogm_z, oracle, 500);
    const Reference& ref = oracle.reference();
    const double l = oracle.smoothness();
    const double r2 = std::pow(oracle.norm().primal(traj.x[0] - ref.x_star), 2);
    const ToleranceModel tol = ToleranceModel::make(0.5 * l * r2, oracle);
    for (long k = 1; k <= traj.iterations(); ++k) {
      const double gap = traj.f_y[static_cast<std::size_t>(k)] - ref.f_star;
      const double bound = mutation_scale * bound_ogm_primary(k, theta, l, r2);
      const double margin = bound + tol(k) - gap;
      worst = std::min(worst, margin);
      if (margin < 0.0) res.pass = false;
    }
  }
  res.detail = "worst margin " + detail::fmt3(worst);
  return res;
}

/// Criterion 2: the guarantee of the corrected method is exactly half the
/// uncorrected one for matched schedules -- an algebraic identity.
inline CriterionResult criterion_factor2() {
  CriterionResult res{2, "factor-2 guarantee identity", true, ""};
  double worst = 0.0;
  for (const ThetaSchedule& theta : {ThetaSchedule::exact(), ThetaSchedule::simple()}) {
    for (long k = 1; k <= 2000; ++k) {
      const double ratio =
          bound_agm(k, theta, 1.0, 1.0) / bound_ogm_primary(k, theta, 1.0, 1.0);
      const double err = std::abs(ratio - 2.0) / 2.0;
      worst = std::max(worst, err);
      if (err > 1e-14) res.pass = false;
    }
  }
  res.detail = "max relative deviation " + detail::fmt3(worst);
  return res;
}

/// Criterion 3: the rational-schedule variant obeys the clean 1/(k+1)^2 rate.
inline CriterionResult criterion_simple_schedule(const detail::VerifySuite& suite) {
  CriterionResult res{3, "simple-schedule bound", true, ""};
  double worst = std::numeric_limits<double>::infinity();
  for (const ObjectiveOracle& oracle : suite.smooth) {
    const Trajectory traj = detail::run_traj(Algorithm::simple_ogm, oracle, 500);
    const Reference& ref = oracle.reference();
    const double l = oracle.smoothness();
    const double r2 = std::pow(oracle.norm().primal(traj.x[0] - ref.x_star), 2);
    const ToleranceModel tol = ToleranceModel::make(0.5 * l * r2, oracle);
    for (long k = 1; k <= traj.iterations(); ++k) {
      const double gap = traj.f_y[static_cast<std::size_t>(k)] - ref.f_star;
      const double denom = static_cast<double>(k + 1) * static_cast<double>(k + 1);
      const double margin = l * r2 / denom + tol(k) - gap;
      worst = std::min(worst, margin);
      if (margin < 0.0) res.pass = false;
    }
  }
  res.detail = "worst margin " + detail::fmt3(worst);
  return res;
}

/// Criterion 4: the last-step sequence obeys L R2 / (2 phi_k^2), for the
/// exact phi from k = 0 and for the rational phi from k = 1.
inline CriterionResult criterion_last_step(const detail::VerifySuite& suite) {
  CriterionResult res{4, "last-step sequence bound", true, ""};
  double worst = std::numeric_limits<double>::infinity();
  for (const ObjectiveOracle& oracle : suite.smooth) {
    const Reference& ref = oracle.reference();
    const double l = oracle.smoothness();

    for (int variant = 0; variant < 2; ++variant) {
      MethodConfig cfg;
      PhiSchedule phi = variant == 0 ? PhiSchedule::exact(ThetaSchedule::exact())
                                     : PhiSchedule::simple(ThetaSchedule::simple());
      if (variant == 0) {
        cfg.algorithm = Algorithm::ogm_z;
        cfg.theta = ThetaSchedule::exact();
      } else {
        cfg.algorithm = Algorithm::simple_ogm;
      }
      cfg.phi = phi;
      const Trajectory traj = detail::run_traj(cfg, oracle, 500);
      const double r2 = std::pow(oracle.norm().primal(traj.x[0] - ref.x_star), 2);
      const ToleranceModel tol = ToleranceModel::make(0.5 * l * r2, oracle);
      const long start = variant == 0 ? 0 : 1;
      for (long k = start; k <= traj.iterations(); ++k) {
        const double gap = traj.f_xt[static_cast<std::size_t>(k)] - ref.f_star;
        const double margin = bound_ogm_secondary(k, phi, l, r2) + tol(k) - gap;
        worst = std::min(worst, margin);
        if (margin < 0.0) res.pass = false;
      }
    }
  }
  res.detail = "worst margin " + detail::fmt3(worst);
  return res;
}

/// Criterion 5: strongly convex rate bounds and the per-step geometric
/// contraction of the potential, with a roundoff floor once the gap reaches
/// 1e-12 * scale.
inline CriterionResult criterion_sc_rates(const detail::VerifySuite& suite) {
  CriterionResult res{5, "strongly convex rates", true, ""};
  double worst_ratio = 0.0;
  for (const ObjectiveOracle& oracle : suite.strongly) {
    const ScGamma gamma = gamma_sc(oracle.kappa());
    const Trajectory traj = detail::run_traj(Algorithm::sc_ogm, oracle, 250);
    const Reference& ref = oracle.reference();
    const double l = oracle.smoothness();
    const double mu = oracle.strong_convexity();
    const double r2 = std::pow(oracle.norm().primal(traj.x[0] - ref.x_star), 2);
    const double scale = 1.0 + std::abs(ref.f_star) + l * r2;
    const ToleranceModel tol = ToleranceModel::make(0.5 * (mu + 2.0 * l) * r2, oracle);
    const double target = 1.0 / (1.0 + gamma.gamma) + 1e-9;

    double w_prev = sc_ogm_inner(traj, oracle, 0);
    for (long k = 1; k <= traj.iterations(); ++k) {
      const auto i = static_cast<std::size_t>(k);
      const ScBounds b = bound_sc_ogm(k, gamma, mu, l, r2);
      const double gap_y = traj.f_y[i] - ref.f_star;
      if (gap_y > 1e-12 * scale && gap_y > b.primary + tol(k)) res.pass = false;
      const double gap_x = traj.f_x[i] - ref.f_star;
      if (gap_x > 1e-12 * scale && gap_x > b.secondary + tol(k)) res.pass = false;
      if (k <= traj.iterations() - 1) {
        const double w = sc_ogm_inner(traj, oracle, k);
        // Absolute floor: below ~100 ulp of the problem scale the ratio is
        // pure roundoff noise.
        if (w_prev > 1e-8 * scale) {
          worst_ratio = std::max(worst_ratio, w / w_prev - 1.0 / (1.0 + gamma.gamma));
          if (w > target * w_prev + 1e-13 * scale) res.pass = false;
        }
        w_prev = w;
      }
    }
  }
  res.detail = "worst contraction excess " + detail::fmt3(worst_ratio);
  return res;
}

/// Criterion 6: iterations-to-1e-10 ordering between the corrected and plain
/// strongly convex methods at kappa = 100, plus the rate-constant ratio at
/// kappa = 1e4.
inline CriterionResult criterion_rate_ordering() {
  CriterionResult res{6, "strongly convex rate ordering", true, ""};
  ProblemSpec spec;
  spec.kind = ProblemSpec::Kind::quadratic;
  spec.dim = 8;
  spec.kappa = 100.0;
  spec.seed = 7;
  const ObjectiveOracle oracle = make_quadratic(spec, QuadraticNorm::identity(spec.dim));
  const Reference& ref = oracle.reference();

  auto iters_to = [&](Algorithm alg) -> long {
    const Trajectory traj = detail::run_traj(alg, oracle, 2000);
    for (long k = 0; k <= traj.iterations(); ++k)
      if (traj.f_y[static_cast<std::size_t>(k)] - ref.f_star <= 1e-10) return k;
    return -1;
  };
  const long k_ogm = iters_to(Algorithm::sc_ogm);
  const long k_agm = iters_to(Algorithm::sc_agm);
  if (k_ogm < 0 || k_agm < 0 || k_ogm >= k_agm) res.pass = false;

  const double kappa = 1e4;
  const double ratio =
      std::log1p(gamma_sc(kappa).gamma) / std::log1p(1.0 / (std::sqrt(kappa) - 1.0));
  if (!(ratio >= 1.3 && ratio <= 1.5)) res.pass = false;
  res.detail = "iters " + std::to_string(k_ogm) + " vs " + std::to_string(k_agm) +
               ", rate-constant ratio " + detail::fmt3(ratio);
  return res;
}

/// Criterion 7: every Lyapunov/chain certificate holds along real
/// trajectories, including the coupling form over both scale parameters and
/// metrics and the strongly convex coupling contraction.
inline CriterionResult criterion_monotonicity(const detail::VerifySuite& suite) {
  CriterionResult res{7, "Lyapunov monotonicity suites", true, ""};
  int failures = 0;
  auto expect = [&](const CertificateReport& rep) {
    if (!rep.ok()) {
      ++failures;
      res.pass = false;
    }
  };

  const ThetaSchedule theta = ThetaSchedule::exact();
  const int n_base = suite.smooth.size() >= 4 ? 4 : static_cast<int>(suite.smooth.size());
  for (int i = 0; i < n_base; ++i) {
    const ObjectiveOracle& oracle = suite.smooth[static_cast<std::size_t>(i)];
    expect(certify_agm(detail::run_traj(Algorithm::agm_z, oracle, 200), oracle, theta));
    const Trajectory ot = detail::run_traj(Algorithm::ogm_z, oracle, 200);
    expect(certify_ogm(ot, oracle, theta));

    MethodConfig tilde_cfg;
    tilde_cfg.algorithm = Algorithm::ogm_z;
    tilde_cfg.last_step = true;
    expect(certify_ogm_tilde(detail::run_traj(tilde_cfg, oracle, 200), oracle, theta,
                             PhiSchedule::exact(theta)));

    MethodConfig simple_cfg;
    simple_cfg.algorithm = Algorithm::simple_ogm;
    simple_cfg.phi = PhiSchedule::simple(ThetaSchedule::simple());
    expect(certify_ogm_tilde(detail::run_traj(simple_cfg, oracle, 200), oracle,
                             ThetaSchedule::simple(), *simple_cfg.phi));
  }

  for (const ObjectiveOracle& oracle : suite.strongly) {
    const ScGamma gamma = gamma_sc(oracle.kappa());
    const Trajectory traj = detail::run_traj(Algorithm::sc_ogm, oracle, 200);
    expect(certify_sc_ogm(traj, oracle, gamma));
    expect(certify_sc_ogm_tilde(traj, oracle, gamma));
  }

  // Coupling form: both metrics, three scale parameters.
  for (int qi = 0; qi < 2; ++qi) {
    Mat q = Mat::Identity(2, 2);
    if (qi == 1) q(1, 1) = 4.0;
    QuadraticNorm norm(q);
    ProblemSpec spec;
    spec.kind = ProblemSpec::Kind::quadratic;
    spec.dim = 2;
    spec.kappa = 10.0;
    spec.seed = static_cast<std::uint64_t>(40 + qi);
    const ObjectiveOracle oracle = make_quadratic(spec, norm);
    for (double t : {0.5, 0.75, 1.0}) {
      MethodConfig cfg;
      cfg.algorithm = Algorithm::lc;
      cfg.t = t;
      cfg.metric = norm;
      const Trajectory traj = detail::run_traj(cfg, oracle, 200);
      const CouplingSchedule coupling =
          coupling_from_theta(theta, oracle.smoothness(), CouplingSchedule::Mode::ogm);
      expect(certify_lc(traj, oracle, coupling, BregmanGenerator(norm, t)));
    }

    // Strongly convex coupling on the same two metrics.
    ProblemSpec sc_spec = spec;
    sc_spec.kappa = 50.0;
    sc_spec.seed = static_cast<std::uint64_t>(50 + qi);
    const ObjectiveOracle sc_oracle = make_quadratic(sc_spec, norm);
    MethodConfig sc_cfg;
    sc_cfg.algorithm = Algorithm::lc_sc_ogm;
    sc_cfg.metric = norm;
    expect(certify_lc_sc_ogm(detail::run_traj(sc_cfg, sc_oracle, 200), sc_oracle,
                             gamma_sc(sc_oracle.kappa())));
  }

  res.detail = std::to_string(failures) + " failing certificates";
  return res;
}

/// Criterion 8: momentum and three-sequence forms produce the same iterates;
/// the unified family collapses to the two endpoints.
inline CriterionResult criterion_form_equivalence() {
  CriterionResult res{8, "form equivalences", true, ""};
  ProblemSpec spec;
  spec.kind = ProblemSpec::Kind::quadratic;
  spec.dim = 4;
  spec.kappa = 10.0;
  spec.seed = 3;
  const ObjectiveOracle oracle = make_quadratic(spec, QuadraticNorm::identity(spec.dim));
  const ThetaSchedule theta = ThetaSchedule::exact();
  const long steps = 50;
  double worst_pair = 0.0, worst_endpoint = 0.0;

  auto compare = [&](const Trajectory& a, const Trajectory& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.y.size(); ++i) {
      worst = std::max(worst, detail::rel_diff(a.y[i], b.y[i]));
      worst = std::max(worst, detail::rel_diff(a.x[i], b.x[i]));
    }
    return worst;
  };

  // Momentum vs z-form, AGM and OGM.
  worst_pair = std::max(worst_pair, compare(detail::run_traj(Algorithm::agm, oracle, steps),
                                            detail::run_traj(Algorithm::agm_z, oracle, steps)));
  worst_pair = std::max(worst_pair, compare(detail::run_traj(Algorithm::ogm, oracle, steps),
                                            detail::run_traj(Algorithm::ogm_z, oracle, steps)));

  // Unified family at t = 0.75 against a hand-rolled three-sequence loop
  // (z step 2t th_k / L, coupling 1/th_{k+1}).
  {
    const double t = 0.75;
    MethodConfig cfg;
    cfg.algorithm = Algorithm::unified;
    cfg.t = t;
    const Trajectory momentum = detail::run_traj(cfg, oracle, steps);
    const double l = oracle.smoothness();
    Vec x = Vec::Zero(oracle.dim()), y = x, z = x;
    double worst = 0.0;
    for (long k = 0; k < steps; ++k) {
      const Vec g = oracle.gradient(x);
      Vec y1 = x - g / l;
      Vec z1 = z - (2.0 * t * theta(k) / l) * g;
      const double inv = 1.0 / theta(k + 1);
      Vec x1 = (1.0 - inv) * y1 + inv * z1;
      x = x1;
      y = y1;
      z = z1;
      const auto i = static_cast<std::size_t>(k + 1);
      worst = std::max(worst, detail::rel_diff(momentum.y[i], y));
      worst = std::max(worst, detail::rel_diff(momentum.x[i], x));
    }
    worst_pair = std::max(worst_pair, worst);
  }
  if (worst_pair > 1e-8) res.pass = false;

  // Endpoints of the unified family.
  {
    MethodConfig half;
    half.algorithm = Algorithm::unified;
    half.t = 0.5;
    worst_endpoint = std::max(
        worst_endpoint,
        compare(detail::run_traj(half, oracle, steps), detail::run_traj(Algorithm::agm, oracle, steps)));
    MethodConfig one;
    one.algorithm = Algorithm::unified;
    one.t = 1.0;
    worst_endpoint = std::max(
        worst_endpoint,
        compare(detail::run_traj(one, oracle, steps), detail::run_traj(Algorithm::ogm, oracle, steps)));
  }
  if (worst_endpoint > 1e-12) res.pass = false;

  res.detail = "pair deviation " + detail::fmt3(worst_pair) + ", endpoint deviation " +
               detail::fmt3(worst_endpoint);
  return res;
}

/// Criterion 9: the asymptotic expansion of the schedule constant.
inline CriterionResult criterion_zeta(bool quick) {
  CriterionResult res{9, "schedule asymptotics", true, ""};
  const long cap = quick ? 10000 : 1000000;
  const ZetaEstimate est = estimate_zeta(cap);
  if (!(est.zeta >= 0.636 && est.zeta <= 0.656)) res.pass = false;
  if (!est.c_below_quarter) res.pass = false;
  if (!est.e_decreasing) res.pass = false;
  if (!(est.e_lower_bound > -1.0)) res.pass = false;
  res.detail = "estimate " + detail::fmt3(est.zeta) + ", residual " + detail::fmt3(est.residual) +
               ", max c " + detail::fmt3(est.max_c);
  return res;
}

/// Criterion 10: the tight smoothness inequality holds on every pair sampled
/// from representative trajectories across problem families.
inline CriterionResult criterion_cocoercivity(const detail::VerifySuite& suite) {
  CriterionResult res{10, "cocoercivity audit", true, ""};
  double worst = std::numeric_limits<double>::infinity();
  auto audit = [&](const Trajectory& traj, const ObjectiveOracle& oracle) {
    const CertificateReport rep = check_cocoercivity_chain(traj, oracle);
    worst = std::min(worst, rep.worst_slack);
    if (!rep.ok()) res.pass = false;
  };

  const int n = suite.smooth.size() >= 6 ? 6 : static_cast<int>(suite.smooth.size());
  for (int i = 0; i < n; ++i) {
    const ObjectiveOracle& oracle = suite.smooth[static_cast<std::size_t>(i)];
    audit(detail::run_traj(Algorithm::ogm_z, oracle, 150), oracle);
  }
  if (!suite.strongly.empty())
    audit(detail::run_traj(Algorithm::sc_ogm, suite.strongly[0], 150), suite.strongly[0]);

  // Logistic regression on a synthetic dataset, with a refined reference.
  {
    std::mt19937_64 rng(11);
    const Eigen::Index m = 40, d = 5;
    Mat a(m, d);
    for (Eigen::Index i = 0; i < m; ++i)
      a.row(i) = detail::random_gaussian(d, rng).transpose();
    const Vec w = detail::random_gaussian(d, rng);
    std::vector<int> labels;
    for (Eigen::Index i = 0; i < m; ++i) labels.push_back(a.row(i).dot(w) >= 0.0 ? 1 : -1);
    const ObjectiveOracle oracle =
        refine_reference(make_logistic_from(LogisticData{a, labels}, 0.1), 1e-10);
    audit(detail::run_traj(Algorithm::ogm_z, oracle, 150), oracle);
  }

  res.detail = "min slack " + detail::fmt3(worst);
  return res;
}

/// Criterion 11: a representative pipeline re-run is byte-identical and the
/// whole suite fits the runtime budget.
inline CriterionResult criterion_determinism(double elapsed_seconds) {
  CriterionResult res{11, "determinism and runtime", true, ""};
  RunSpec rs;
  rs.name = "determinism_probe";
  rs.prefix = rs.name;
  rs.method.algorithm = Algorithm::ogm_z;
  rs.method.last_step = true;
  rs.problem.kind = ProblemSpec::Kind::quadratic;
  rs.problem.dim = 6;
  rs.problem.kappa = 100.0;
  rs.problem.seed = 9;
  rs.iterations = 120;
  const RunOutput a = execute_run(rs);
  const RunOutput b = execute_run(rs);
  const bool identical = trace_to_csv(a.trace) == trace_to_csv(b.trace) &&
                         certificate_to_csv(a.cert) == certificate_to_csv(b.cert);
  if (!identical) res.pass = false;
  if (elapsed_seconds >= 300.0) res.pass = false;
  res.detail = identical ? "replay byte-identical" : "replay differs";
  return res;
}

inline VerifyReport run_verification(const VerifyOptions& options = {}) {
  const auto start = std::chrono::steady_clock::now();
  const detail::VerifySuite suite(options.quick);
  VerifyReport report;
  report.results.push_back(criterion_ogm_bound(suite, options.mutation_scale));
  report.results.push_back(criterion_factor2());
  report.results.push_back(criterion_simple_schedule(suite));
  report.results.push_back(criterion_last_step(suite));
  report.results.push_back(criterion_sc_rates(suite));
  report.results.push_back(criterion_rate_ordering());
  report.results.push_back(criterion_monotonicity(suite));
  report.results.push_back(criterion_form_equivalence());
  report.results.push_back(criterion_zeta(options.quick));
  report.results.push_back(criterion_cocoercivity(suite));
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report.results.push_back(criterion_determinism(elapsed));
  return report;
}

}  // namespace ogm

#endif  // OGMLAB_VERIFY_HPP
