#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ogmlab/methods.hpp"
#include "ogmlab/problems.hpp"

using namespace ogm;

namespace {

ObjectiveOracle quad_oracle(Eigen::Index dim, double kappa, std::uint64_t seed) {
  ProblemSpec spec;
  spec.kind = ProblemSpec::Kind::quadratic;
  spec.dim = dim;
  spec.kappa = kappa;
  spec.seed = seed;
  return make_quadratic(spec, QuadraticNorm::identity(dim));
}

Trajectory run_alg(Algorithm alg, const ObjectiveOracle& oracle, long iters,
                   MethodConfig cfg = {}) {
  cfg.algorithm = alg;
  RunResult r = run(cfg, oracle, Vec::Zero(oracle.dim()), iters);
  REQUIRE_FALSE(r.diverged_at.has_value());
  return std::move(r.trajectory);
}

double max_rel_diff(const Trajectory& a, const Trajectory& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.x.size(); ++i) {
    worst = std::max(worst, (a.x[i] - b.x[i]).norm() / std::max(1.0, a.x[i].norm()));
    worst = std::max(worst, (a.y[i] - b.y[i]).norm() / std::max(1.0, a.y[i].norm()));
  }
  return worst;
}

}  // namespace

TEST_CASE("first corrected step on the scalar quadratic") {
  // f(x) = x^2/2, L = 1, x_0 = 1: y_1 = 0 and the correction pulls
  // x_1 = -(1/theta_1) = -1/golden ratio.
  Mat a = Mat::Identity(1, 1);
  Vec b = Vec::Zero(1);
  const ObjectiveOracle oracle = make_quadratic_from(a, b, QuadraticNorm::identity(1));
  MethodState s = init_state(oracle, Vec::Ones(1), "probe");
  step_ogm(s, oracle, ThetaSchedule::exact());
  const double golden = 0.5 * (1.0 + std::sqrt(5.0));
  REQUIRE_THAT(s.y(0), Catch::Matchers::WithinAbs(0.0, 1e-15));
  REQUIRE_THAT(s.x(0), Catch::Matchers::WithinRel(-1.0 / golden, 1e-14));

  // The plain accelerated step has no correction: x_1 stays at y_1.
  MethodState t = init_state(oracle, Vec::Ones(1), "probe");
  step_agm(t, oracle, ThetaSchedule::exact());
  REQUIRE_THAT(t.x(0), Catch::Matchers::WithinAbs(0.0, 1e-15));
}

TEST_CASE("momentum and z-forms generate identical iterates") {
  const ObjectiveOracle oracle = quad_oracle(5, 50.0, 8);
  REQUIRE(max_rel_diff(run_alg(Algorithm::agm, oracle, 60),
                       run_alg(Algorithm::agm_z, oracle, 60)) < 1e-9);
  REQUIRE(max_rel_diff(run_alg(Algorithm::ogm, oracle, 60),
                       run_alg(Algorithm::ogm_z, oracle, 60)) < 1e-9);
}

TEST_CASE("unified family endpoints") {
  const ObjectiveOracle oracle = quad_oracle(4, 20.0, 9);
  MethodConfig half;
  half.t = 0.5;
  REQUIRE(max_rel_diff(run_alg(Algorithm::unified, oracle, 40, half),
                       run_alg(Algorithm::agm, oracle, 40)) < 1e-13);
  MethodConfig one;
  one.t = 1.0;
  REQUIRE(max_rel_diff(run_alg(Algorithm::unified, oracle, 40, one),
                       run_alg(Algorithm::ogm, oracle, 40)) < 1e-13);

  MethodState s = init_state(oracle, Vec::Zero(4), "probe");
  REQUIRE_THROWS_AS(step_unified(s, oracle, ThetaSchedule::exact(), 0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(step_unified(s, oracle, ThetaSchedule::exact(), 1.5), std::invalid_argument);
}

TEST_CASE("simple variant uses the rational schedule") {
  const ObjectiveOracle oracle = quad_oracle(4, 20.0, 10);
  // Replay the z-form by hand with theta_k = (k+2)/2.
  const ThetaSchedule theta = ThetaSchedule::simple();
  const double l = oracle.smoothness();
  Vec x = Vec::Zero(4), y = x, z = x;
  const Trajectory traj = run_alg(Algorithm::simple_ogm, oracle, 30);
  for (long k = 0; k < 30; ++k) {
    const Vec g = oracle.gradient(x);
    Vec y1 = x - g / l;
    Vec z1 = z - (2.0 * theta(k) / l) * g;
    const double inv = 1.0 / theta(k + 1);
    x = (1.0 - inv) * y1 + inv * z1;
    y = y1;
    z = z1;
    const auto i = static_cast<std::size_t>(k + 1);
    REQUIRE((traj.x[i] - x).norm() <= 1e-12 * std::max(1.0, x.norm()));
  }
}

TEST_CASE("understated smoothness constant surfaces as divergence") {
  Mat a = Mat::Zero(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = 10.0;
  Vec b(2);
  b << 1.0, 1.0;
  // Claim L = 1 although the true constant is 10.
  auto value = [a, b](const Vec& x) { return 0.5 * x.dot(a * x) - b.dot(x); };
  auto grad = [a, b](const Vec& x) -> Vec { return a * x - b; };
  ObjectiveOracle lying("understated", 2, value, grad, 1.0, 0.0, QuadraticNorm::identity(2));

  MethodConfig cfg;
  cfg.algorithm = Algorithm::ogm_z;
  RunResult r = run(cfg, lying, Vec::Zero(2), 400);
  REQUIRE(r.diverged_at.has_value());
  REQUIRE(*r.diverged_at >= 1);
  // The partial trajectory is preserved and all recorded states are finite.
  for (const Vec& x : r.trajectory.x) REQUIRE(x.allFinite());
}

TEST_CASE("last-step sequence") {
  const ObjectiveOracle oracle = quad_oracle(4, 30.0, 12);
  MethodConfig cfg;
  cfg.algorithm = Algorithm::ogm_z;
  cfg.last_step = true;
  const Trajectory traj = run_alg(Algorithm::ogm_z, oracle, 40, cfg);
  REQUIRE(traj.has_tilde());
  const PhiSchedule phi = PhiSchedule::exact(ThetaSchedule::exact());
  for (long k = 0; k <= 40; ++k) {
    const auto i = static_cast<std::size_t>(k);
    const double inv = 1.0 / phi(k);
    const Vec expect = (1.0 - inv) * traj.y[i] + inv * traj.z[i];
    REQUIRE((traj.x_tilde[i] - expect).norm() <= 1e-13 * std::max(1.0, expect.norm()));
  }
  // x~_0 = x_0 since phi_0 = 1 and z_0 = y_0 = x_0.
  REQUIRE((traj.x_tilde[0] - traj.x[0]).norm() == 0.0);

  // The sequence needs a z-carrying form.
  MethodConfig bad;
  bad.algorithm = Algorithm::ogm;
  bad.last_step = true;
  REQUIRE_THROWS_AS(run(bad, oracle, Vec::Zero(4), 5), std::invalid_argument);
}

TEST_CASE("strongly convex steps require mu > 0") {
  ProblemSpec spec;
  spec.kind = ProblemSpec::Kind::log_sum_exp;
  spec.dim = 3;
  spec.terms = 6;
  spec.seed = 2;
  const ObjectiveOracle convex_only = make_log_sum_exp(spec);
  MethodConfig cfg;
  cfg.algorithm = Algorithm::sc_ogm;
  REQUIRE_THROWS_AS(run(cfg, convex_only, Vec::Zero(3), 5), std::invalid_argument);
  cfg.algorithm = Algorithm::sc_agm;
  REQUIRE_THROWS_AS(run(cfg, convex_only, Vec::Zero(3), 5), std::invalid_argument);
}

TEST_CASE("strongly convex auxiliary sequence follows its closed form") {
  const ObjectiveOracle oracle = quad_oracle(5, 25.0, 13);
  const ScGamma gamma = gamma_sc(oracle.kappa());
  const Trajectory traj = run_alg(Algorithm::sc_ogm, oracle, 50);
  REQUIRE(traj.has_z());
  const double g = gamma.gamma;
  for (std::size_t i = 1; i < traj.z.size(); ++i) {
    const Vec expect = ((2.0 * g + 1.0) * traj.x[i] - (g + 1.0) * traj.y[i]) / g;
    REQUIRE((traj.z[i] - expect).norm() <= 1e-12 * std::max(1.0, expect.norm()));
  }
  // Linear convergence: the gap after 50 steps is tiny.
  const double gap0 = traj.f_y[0] - oracle.reference().f_star;
  const double gap50 = traj.f_y[50] - oracle.reference().f_star;
  REQUIRE(gap50 <= 1e-10 * (1.0 + gap0));
}

TEST_CASE("coupled form with unit scale and Euclidean metric is the z-form") {
  const ObjectiveOracle oracle = quad_oracle(4, 40.0, 14);
  MethodConfig lc_cfg;
  lc_cfg.t = 1.0;
  const Trajectory lc_traj = run_alg(Algorithm::lc, oracle, 50, lc_cfg);
  const Trajectory z_traj = run_alg(Algorithm::ogm_z, oracle, 50);
  REQUIRE(max_rel_diff(lc_traj, z_traj) < 1e-12);
}

TEST_CASE("strongly convex coupled form reduces to the direct method at Q = I") {
  const ObjectiveOracle oracle = quad_oracle(4, 30.0, 15);
  const Trajectory lc_traj = run_alg(Algorithm::lc_sc_ogm, oracle, 40);
  const Trajectory direct = run_alg(Algorithm::sc_ogm, oracle, 40);
  REQUIRE(max_rel_diff(lc_traj, direct) < 1e-8);
}

TEST_CASE("run input validation and the recorder hook") {
  const ObjectiveOracle oracle = quad_oracle(3, 10.0, 16);
  MethodConfig cfg;
  REQUIRE_THROWS_AS(run(cfg, oracle, Vec::Zero(3), 0), std::invalid_argument);
  REQUIRE_THROWS_AS(init_state(oracle, Vec::Zero(4), "bad"), std::invalid_argument);

  long calls = 0;
  run(cfg, oracle, Vec::Zero(3), 7, [&](const MethodState&) { ++calls; });
  REQUIRE(calls == 8);  // k = 0 plus one per iteration
}
