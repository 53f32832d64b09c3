#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "ogmlab/numkit.hpp"

using namespace ogm;

namespace {

Mat spd_matrix(Eigen::Index n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  Mat g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = gauss(rng);
  Mat q = g * g.transpose() + n * Mat::Identity(n, n);
  return 0.5 * (q + q.transpose());
}

Vec random_vec(Eigen::Index n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  Vec v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = gauss(rng);
  return v;
}

}  // namespace

TEST_CASE("primal norm matches the dense quadratic form") {
  const Mat q = spd_matrix(5, 1);
  const QuadraticNorm norm(q);
  for (unsigned s = 0; s < 20; ++s) {
    const Vec x = random_vec(5, 100 + s);
    const double direct = std::sqrt(x.dot(q * x));
    REQUIRE_THAT(norm.primal(x), Catch::Matchers::WithinRel(direct, 1e-12));
  }
}

TEST_CASE("dual norm matches the dense inverse oracle") {
  const Mat q = spd_matrix(6, 2);
  const QuadraticNorm norm(q);
  const Mat q_inv = q.inverse();  // independent oracle: explicit dense inverse
  for (unsigned s = 0; s < 20; ++s) {
    const Vec u = random_vec(6, 200 + s);
    const double direct = std::sqrt(u.dot(q_inv * u));
    REQUIRE_THAT(norm.dual(u), Catch::Matchers::WithinRel(direct, 1e-10));
  }
}

TEST_CASE("identity norm reduces to the Euclidean norm") {
  const QuadraticNorm norm = QuadraticNorm::identity(4);
  REQUIRE(norm.is_identity());
  const Vec x = random_vec(4, 3);
  REQUIRE_THAT(norm.primal(x), Catch::Matchers::WithinRel(x.norm(), 1e-14));
  REQUIRE_THAT(norm.dual(x), Catch::Matchers::WithinRel(x.norm(), 1e-14));
}

TEST_CASE("apply_inverse solves the metric system") {
  const Mat q = spd_matrix(7, 4);
  const QuadraticNorm norm(q);
  const Vec u = random_vec(7, 5);
  const Vec v = norm.apply_inverse(u);
  REQUIRE((q * v - u).norm() <= 1e-10 * u.norm());
  REQUIRE((norm.apply(v) - u).norm() <= 1e-10 * u.norm());
}

TEST_CASE("duality pairing: |<u,x>| <= dual(u) * primal(x)") {
  const Mat q = spd_matrix(5, 6);
  const QuadraticNorm norm(q);
  for (unsigned s = 0; s < 30; ++s) {
    const Vec x = random_vec(5, 300 + s);
    const Vec u = random_vec(5, 400 + s);
    REQUIRE(std::abs(u.dot(x)) <= norm.dual(u) * norm.primal(x) * (1.0 + 1e-12));
  }
}

TEST_CASE("construction rejects invalid metrics") {
  Mat asym = Mat::Identity(3, 3);
  asym(0, 1) = 0.5;  // not mirrored
  REQUIRE_THROWS_AS(QuadraticNorm(asym), std::invalid_argument);

  Mat indef = Mat::Identity(3, 3);
  indef(2, 2) = -1.0;
  REQUIRE_THROWS_AS(QuadraticNorm(indef), std::invalid_argument);

  REQUIRE_THROWS_AS(QuadraticNorm(Mat::Zero(3, 3)), std::invalid_argument);
  REQUIRE_THROWS_AS(QuadraticNorm(Mat(0, 0)), std::invalid_argument);
}

TEST_CASE("dimension mismatches throw") {
  const QuadraticNorm norm = QuadraticNorm::identity(3);
  const Vec bad = random_vec(4, 7);
  REQUIRE_THROWS_AS(norm.primal(bad), std::invalid_argument);
  REQUIRE_THROWS_AS(norm.dual(bad), std::invalid_argument);
  REQUIRE_THROWS_AS(norm.apply_inverse(bad), std::invalid_argument);
}

TEST_CASE("Bregman divergence of the quadratic generator") {
  const Mat q = spd_matrix(4, 8);
  const QuadraticNorm norm(q);
  const BregmanGenerator breg(norm, 0.5);
  const Vec x = random_vec(4, 9);
  const Vec y = random_vec(4, 10);
  const double d = norm.primal(x - y);
  REQUIRE_THAT(breg(x, y), Catch::Matchers::WithinRel(d * d / (2.0 * 0.5), 1e-12));
  REQUIRE(breg(x, x) == 0.0);
  REQUIRE(breg(x, y) >= 0.0);

  REQUIRE_THROWS_AS(BregmanGenerator(norm, 0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(BregmanGenerator(norm, 1.5), std::invalid_argument);
}
