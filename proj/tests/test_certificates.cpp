#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ogmlab/certificates.hpp"
#include "ogmlab/methods.hpp"
#include "ogmlab/problems.hpp"

using namespace ogm;

namespace {

ObjectiveOracle quad_oracle(Eigen::Index dim, double kappa, std::uint64_t seed,
                            QuadraticNorm norm) {
  ProblemSpec spec;
  spec.kind = ProblemSpec::Kind::quadratic;
  spec.dim = dim;
  spec.kappa = kappa;
  spec.seed = seed;
  return make_quadratic(spec, std::move(norm));
}

ObjectiveOracle quad_oracle(Eigen::Index dim, double kappa, std::uint64_t seed) {
  return quad_oracle(dim, kappa, seed, QuadraticNorm::identity(dim));
}

Trajectory run_alg(Algorithm alg, const ObjectiveOracle& oracle, long iters,
                   MethodConfig cfg = {}) {
  cfg.algorithm = alg;
  RunResult r = run(cfg, oracle, Vec::Zero(oracle.dim()), iters);
  REQUIRE_FALSE(r.diverged_at.has_value());
  return std::move(r.trajectory);
}

}  // namespace

TEST_CASE("gap term is nonnegative along trajectories") {
  const ObjectiveOracle oracle = quad_oracle(6, 100.0, 1);
  const Trajectory traj = run_alg(Algorithm::ogm_z, oracle, 100);
  for (long k = 0; k <= 100; ++k) {
    const auto i = static_cast<std::size_t>(k);
    REQUIRE(gap_term(traj.f_x[i], traj.grad[i], oracle) >= -1e-12);
    REQUIRE(gap_term(traj.x[i], oracle) >= -1e-12);
  }
  // Zero exactly at the minimizer.
  REQUIRE_THAT(gap_term(oracle.reference().x_star, oracle),
               Catch::Matchers::WithinAbs(0.0, 1e-14));
}

TEST_CASE("primary bound against an extended-precision replay") {
  // Independent oracle: rebuild theta in long double and evaluate
  // L R2 / (4 theta_{k-1}^2) directly.
  const ThetaSchedule theta = ThetaSchedule::exact();
  const double l = 3.0, r2 = 7.0;
  long double t = 1.0L;
  for (long k = 1; k <= 100; ++k) {
    const double direct = static_cast<double>(
        static_cast<long double>(l) * static_cast<long double>(r2) / (4.0L * t * t));
    REQUIRE_THAT(bound_ogm_primary(k, theta, l, r2), Catch::Matchers::WithinRel(direct, 1e-13));
    REQUIRE_THAT(bound_agm(k, theta, l, r2), Catch::Matchers::WithinRel(2.0 * direct, 1e-13));
    t = 0.5L * (1.0L + std::sqrt(1.0L + 4.0L * t * t));
  }
  REQUIRE_THROWS_AS(bound_ogm_primary(0, theta, l, r2), std::invalid_argument);
  REQUIRE_THROWS_AS(bound_agm(0, theta, l, r2), std::invalid_argument);
}

TEST_CASE("secondary bound equals the rational closed form for simple phi") {
  const PhiSchedule phi = PhiSchedule::simple(ThetaSchedule::simple());
  for (long k = 1; k <= 200; ++k) {
    const double denom = std::pow(static_cast<double>(k) + 1.0 + 1.0 / std::sqrt(2.0), 2);
    REQUIRE_THAT(bound_ogm_secondary(k, phi, 2.0, 3.0),
                 Catch::Matchers::WithinRel(2.0 * 3.0 / denom, 1e-13));
  }
}

TEST_CASE("tolerance model") {
  const ObjectiveOracle oracle = quad_oracle(3, 10.0, 2);
  ToleranceModel tol = ToleranceModel::make(10.0, oracle);
  REQUIRE(tol.eps_ref == 0.0);  // exact reference
  REQUIRE_THAT(tol(0), Catch::Matchers::WithinRel(1e-9 * 11.0, 1e-12));
  REQUIRE_THAT(tol(100) - tol(0), Catch::Matchers::WithinRel(100.0 * 1e-12 * 10.0, 1e-9));
  tol.scale = 3.0;
  REQUIRE_THAT(tol(0), Catch::Matchers::WithinRel(3.0 * 1e-9 * 11.0, 1e-12));
}

TEST_CASE("certificates hold on clean trajectories") {
  const ObjectiveOracle oracle = quad_oracle(6, 100.0, 3);
  const ThetaSchedule theta = ThetaSchedule::exact();

  const Trajectory agm_traj = run_alg(Algorithm::agm_z, oracle, 150);
  const CertificateReport agm_rep = certify_agm(agm_traj, oracle, theta);
  REQUIRE(agm_rep.ok());

  const Trajectory ogm_traj = run_alg(Algorithm::ogm_z, oracle, 150);
  const CertificateReport ogm_rep = certify_ogm(ogm_traj, oracle, theta);
  REQUIRE(ogm_rep.ok());

  // Initial value of the potential equals (L/2)||x_0 - x*||^2 at index -1.
  const double r = oracle.norm().primal(ogm_traj.x[0] - oracle.reference().x_star);
  REQUIRE_THAT(lyapunov_ogm(ogm_traj, oracle, theta, -1),
               Catch::Matchers::WithinRel(0.5 * oracle.smoothness() * r * r, 1e-12));

  MethodConfig tilde_cfg;
  tilde_cfg.last_step = true;
  const Trajectory tilde_traj = run_alg(Algorithm::ogm_z, oracle, 150, tilde_cfg);
  REQUIRE(certify_ogm_tilde(tilde_traj, oracle, theta, PhiSchedule::exact(theta)).ok());
}

TEST_CASE("chain inequality links the two potentials") {
  const ObjectiveOracle oracle = quad_oracle(5, 50.0, 4);
  const ThetaSchedule theta = ThetaSchedule::exact();
  const PhiSchedule phi = PhiSchedule::exact(theta);
  MethodConfig cfg;
  cfg.last_step = true;
  const Trajectory traj = run_alg(Algorithm::ogm_z, oracle, 80, cfg);
  for (long k = 0; k <= 79; ++k) {
    const double u_tilde = lyapunov_ogm_tilde(traj, oracle, phi, k);
    const double u_prev = lyapunov_ogm(traj, oracle, theta, k - 1);
    REQUIRE(u_tilde <= u_prev + 1e-8 * (1.0 + std::abs(u_prev)));
  }
}

TEST_CASE("strongly convex certificates") {
  const ObjectiveOracle oracle = quad_oracle(6, 20.0, 5);
  const ScGamma gamma = gamma_sc(oracle.kappa());
  const Trajectory traj = run_alg(Algorithm::sc_ogm, oracle, 120);
  REQUIRE(certify_sc_ogm(traj, oracle, gamma).ok());
  REQUIRE(certify_sc_ogm_tilde(traj, oracle, gamma).ok());

  // Initialization bound W_0 <= (mu + 2L)/2 * R2.
  const double r = oracle.norm().primal(traj.x[0] - oracle.reference().x_star);
  REQUIRE(sc_ogm_inner(traj, oracle, 0) <=
          0.5 * (oracle.strong_convexity() + 2.0 * oracle.smoothness()) * r * r + 1e-9);
}

TEST_CASE("coupling certificate across scales and metrics") {
  Mat q = Mat::Identity(2, 2);
  q(1, 1) = 4.0;
  const QuadraticNorm norm(q);
  const ObjectiveOracle oracle = quad_oracle(2, 10.0, 6, norm);
  const CouplingSchedule coupling =
      coupling_from_theta(ThetaSchedule::exact(), oracle.smoothness(), CouplingSchedule::Mode::ogm);
  for (double t : {0.5, 0.75, 1.0}) {
    MethodConfig cfg;
    cfg.t = t;
    cfg.metric = norm;
    const Trajectory traj = run_alg(Algorithm::lc, oracle, 120, cfg);
    REQUIRE(certify_lc(traj, oracle, coupling, BregmanGenerator(norm, t)).ok());
  }
}

TEST_CASE("strongly convex coupling contraction certificate") {
  const ObjectiveOracle oracle = quad_oracle(4, 60.0, 7);
  const Trajectory traj = run_alg(Algorithm::lc_sc_ogm, oracle, 120);
  REQUIRE(certify_lc_sc_ogm(traj, oracle, gamma_sc(oracle.kappa())).ok());
}

TEST_CASE("corrupted trajectories are flagged") {
  const ObjectiveOracle oracle = quad_oracle(5, 100.0, 8);
  const ThetaSchedule theta = ThetaSchedule::exact();
  Trajectory traj = run_alg(Algorithm::ogm_z, oracle, 60);

  SECTION("objective value spike breaks the bound") {
    traj.f_y[30] += 10.0;
    const CertificateReport rep = certify_ogm(traj, oracle, theta);
    REQUIRE_FALSE(rep.ok());
    REQUIRE(*rep.first_violation == 30);
  }
  SECTION("drifted z breaks monotonicity") {
    traj.z[30] += Vec::Ones(5);
    REQUIRE_FALSE(certify_ogm(traj, oracle, theta).ok());
  }
  SECTION("tolerance override can mask a tiny violation") {
    // Lift f(y_30) to sit past the bound by ~100x the default tolerance:
    // flagged at scale 1, hidden at scale 1e4.
    const CertificateReport clean = certify_ogm(traj, oracle, theta);
    REQUIRE(clean.ok());
    const double t30 = theta(30);
    ToleranceModel tol = ToleranceModel::make(lyapunov_ogm(traj, oracle, theta, -1), oracle);
    traj.f_y[30] += clean.rows[30].slack + 100.0 * tol(30, 2.0 * t30 * t30);
    REQUIRE_FALSE(certify_ogm(traj, oracle, theta).ok());
    REQUIRE(certify_ogm(traj, oracle, theta, 1e4).ok());
  }
}

TEST_CASE("cocoercivity audit") {
  const ObjectiveOracle oracle = quad_oracle(5, 100.0, 9);
  const Trajectory traj = run_alg(Algorithm::ogm_z, oracle, 80);
  const CertificateReport rep = check_cocoercivity_chain(traj, oracle);
  REQUIRE(rep.ok());
  REQUIRE(rep.worst_slack >= -1e-10);

  // An oracle claiming half the true smoothness violates the inequality.
  ProblemSpec spec;
  spec.kind = ProblemSpec::Kind::quadratic;
  spec.dim = 5;
  spec.kappa = 100.0;
  spec.seed = 9;
  const auto [a, b] = quadratic_data(spec);
  auto value = [a = a, b = b](const Vec& x) { return 0.5 * x.dot(a * x) - b.dot(x); };
  auto grad = [a = a, b = b](const Vec& x) -> Vec { return a * x - b; };
  ObjectiveOracle lying("halfL", 5, value, grad, 0.5 * oracle.smoothness(), 0.0,
                        QuadraticNorm::identity(5));
  REQUIRE_FALSE(check_cocoercivity_chain(traj, lying).ok());
}

TEST_CASE("certificates demand the z sequence") {
  const ObjectiveOracle oracle = quad_oracle(4, 10.0, 10);
  const Trajectory traj = run_alg(Algorithm::ogm, oracle, 20);  // momentum form, no z
  REQUIRE_THROWS_AS(lyapunov_ogm(traj, oracle, ThetaSchedule::exact(), 3),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(lyapunov_agm(traj, oracle, ThetaSchedule::exact(), 3),
                    std::invalid_argument);
}
