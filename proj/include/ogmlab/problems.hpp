#ifndef OGMLAB_PROBLEMS_HPP
#define OGMLAB_PROBLEMS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ogmlab/numkit.hpp"

namespace ogm {

class NoMinimizerError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ReferenceUnavailableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Reference {
  Vec x_star;
  double f_star = 0.0;
  double grad_residual = 0.0;  // dual norm of the gradient at x_star
  bool exact = true;           // false when obtained by a long solver run
};

/// First-order oracle for an L-smooth, optionally mu-strongly convex f,
/// measured with respect to a declared quadratic norm. Immutable after
/// construction; evaluation is reentrant.
class ObjectiveOracle {
 public:
  using ValueFn = std::function<double(const Vec&)>;
  using GradFn = std::function<Vec(const Vec&)>;

  ObjectiveOracle(std::string name, Eigen::Index dim, ValueFn f, GradFn grad, double l,
                  double mu, QuadraticNorm norm)
      : name_(std::move(name)),
        dim_(dim),
        f_(std::move(f)),
        grad_(std::move(grad)),
        l_(l),
        mu_(mu),
        norm_(std::move(norm)) {
    if (!(l_ > 0.0) || mu_ < 0.0 || l_ < mu_)
      throw std::invalid_argument("ObjectiveOracle: need L >= mu >= 0 and L > 0");
    if (norm_.dim() != dim_) throw std::invalid_argument("ObjectiveOracle: norm dimension mismatch");
  }

  const std::string& name() const { return name_; }
  Eigen::Index dim() const { return dim_; }
  double smoothness() const { return l_; }
  double strong_convexity() const { return mu_; }
  double kappa() const { return mu_ > 0.0 ? l_ / mu_ : std::numeric_limits<double>::infinity(); }
  const QuadraticNorm& norm() const { return norm_; }

  double value(const Vec& x) const { return f_(x); }
  Vec gradient(const Vec& x) const { return grad_(x); }

  bool has_reference() const { return reference_.has_value(); }
  const Reference& reference() const {
    if (!reference_) throw ReferenceUnavailableError("oracle '" + name_ + "' has no reference solution");
    return *reference_;
  }

  /// Returns a copy with overridden constants; callers take responsibility
  /// for their validity (used to study deliberately misdeclared L).
  ObjectiveOracle with_constants(double l, double mu) const {
    if (!(l > 0.0) || mu < 0.0 || l < mu)
      throw std::invalid_argument("with_constants: need L >= mu >= 0 and L > 0");
    ObjectiveOracle out = *this;
    out.l_ = l;
    out.mu_ = mu;
    return out;
  }

  /// Returns a copy carrying the given reference; validates the stationarity
  /// residual against the oracle's own gradient.
  ObjectiveOracle with_reference(Reference ref) const {
    const double res = norm_.dual(grad_(ref.x_star));
    if (res > 1e-8 * l_ * (1.0 + norm_.primal(ref.x_star)))
      throw std::invalid_argument("with_reference: point is not stationary enough");
    ref.grad_residual = res;
    ObjectiveOracle out = *this;
    out.reference_ = std::move(ref);
    return out;
  }

 private:
  std::string name_;
  Eigen::Index dim_;
  ValueFn f_;
  GradFn grad_;
  double l_;
  double mu_;
  QuadraticNorm norm_;
  std::optional<Reference> reference_;
};

struct ProblemSpec {
  enum class Kind { quadratic, log_sum_exp, logistic };

  Kind kind = Kind::quadratic;
  Eigen::Index dim = 2;
  double kappa = 10.0;      // quadratic: target condition number (Euclidean)
  double smoothness = 1.0;  // quadratic: target largest eigenvalue (Euclidean)
  Eigen::Index terms = 8;   // log_sum_exp: number of affine pieces
  double rho = 1.0;         // log_sum_exp: smoothing temperature
  double ridge = 0.0;       // logistic: L2 parameter lambda
  double l_override = 0.0;  // > 0: declare this L instead of the measured one
  std::uint64_t seed = 0;
  std::string data_path;    // logistic only
};

namespace detail {

inline Mat random_orthogonal(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = gauss(rng);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  // Fix signs so the factorization is unique given the seed.
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j)
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  return q;
}

inline Vec random_gaussian(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = gauss(rng);
  return v;
}

/// Largest eigenvalue of a symmetric PSD matrix by power iteration.
inline double power_largest(const Mat& c, double tol = 1e-12, long cap = 200000) {
  Vec v = Vec::Ones(c.rows()).normalized();
  double lambda = 0.0;
  for (long i = 0; i < cap; ++i) {
    Vec w = c * v;
    const double next = v.dot(w);
    if (w.norm() == 0.0) return 0.0;
    v = w.normalized();
    if (i > 0 && std::abs(next - lambda) <= tol * std::max(1.0, std::abs(next))) return next;
    lambda = next;
  }
  return lambda;
}

/// Smallest eigenvalue by inverse power iteration (LLT factored once).
inline double power_smallest(const Mat& c, double tol = 1e-12, long cap = 200000) {
  Eigen::LLT<Mat> llt(c);
  if (llt.info() != Eigen::Success) return 0.0;  // PSD boundary
  Vec v = Vec::Ones(c.rows()).normalized();
  double inv_lambda = 0.0;
  for (long i = 0; i < cap; ++i) {
    Vec w = llt.solve(v);
    const double next = v.dot(w);
    v = w.normalized();
    if (i > 0 && std::abs(next - inv_lambda) <= tol * std::max(1.0, std::abs(next)))
      return 1.0 / next;
    inv_lambda = next;
  }
  return 1.0 / inv_lambda;
}

/// Extreme eigenvalues of Q^{-1/2} A Q^{-1/2}, formed with the cached
/// Cholesky factor of Q (similar to Q^{-1}A but kept symmetric).
inline std::pair<double, double> metric_eigs(const Mat& a, const QuadraticNorm& q) {
  const Mat& lq = q.factor();
  Mat y = lq.triangularView<Eigen::Lower>().solve(a);
  Mat c = lq.triangularView<Eigen::Lower>().solve(y.transpose());
  c = 0.5 * (c + c.transpose());
  return {power_largest(c), power_smallest(c)};
}

inline double spectral_norm_squared(const Mat& a) {
  return power_largest(a.transpose() * a);
}

}  // namespace detail

/// Seeded data for the quadratic family: A = R diag(lambda) R' with
/// log-spaced eigenvalues in [L/kappa, L], plus a Gaussian b.
inline std::pair<Mat, Vec> quadratic_data(const ProblemSpec& spec) {
  if (spec.dim < 1) throw std::invalid_argument("quadratic_data: dimension must be >= 1");
  std::mt19937_64 rng(spec.seed);
  Mat r = detail::random_orthogonal(spec.dim, rng);
  Vec lambda(spec.dim);
  for (Eigen::Index i = 0; i < spec.dim; ++i) {
    const double frac = spec.dim == 1 ? 1.0 : static_cast<double>(i) / (spec.dim - 1);
    lambda(i) = spec.smoothness * std::pow(1.0 / spec.kappa, 1.0 - frac);
  }
  Mat a = r * lambda.asDiagonal() * r.transpose();
  a = 0.5 * (a + a.transpose());
  Vec b = detail::random_gaussian(spec.dim, rng);
  return {a, b};
}

/// f(x) = (1/2)x'Ax - b'x for symmetric PSD A, with L and mu measured in the
/// given norm (extreme eigenvalues of Q^{-1/2}AQ^{-1/2}, power iteration).
inline ObjectiveOracle make_quadratic_from(Mat a, Vec b, QuadraticNorm norm,
                                           std::string name = "quadratic") {
  if (a.rows() != a.cols() || a.rows() != b.size())
    throw std::invalid_argument("make_quadratic_from: shape mismatch");
  auto [l, mu] = detail::metric_eigs(a, norm);
  if (!(l > 0.0)) throw std::invalid_argument("make_quadratic_from: A must be nonzero PSD");
  mu = std::max(mu, 0.0);

  // Reference by direct solve; a singular A with b outside its range has no
  // minimizer and violates the problem assumptions.
  Vec x_star;
  {
    Eigen::LDLT<Mat> ldlt(a);
    x_star = ldlt.solve(b);
    const double resid = (a * x_star - b).norm();
    if (!x_star.allFinite() || resid > 1e-8 * (1.0 + b.norm()))
      throw NoMinimizerError("make_quadratic_from: Ax = b is inconsistent, f has no minimizer");
  }

  auto value = [a, b](const Vec& x) { return 0.5 * x.dot(a * x) - b.dot(x); };
  auto grad = [a, b](const Vec& x) -> Vec { return a * x - b; };
  const double f_star = value(x_star);
  ObjectiveOracle oracle(std::move(name), a.rows(), value, grad, l, mu, std::move(norm));
  return oracle.with_reference(Reference{std::move(x_star), f_star, 0.0, true});
}

inline ObjectiveOracle make_quadratic(const ProblemSpec& spec, QuadraticNorm norm) {
  if (spec.kind != ProblemSpec::Kind::quadratic)
    throw std::invalid_argument("make_quadratic: spec kind mismatch");
  auto [a, b] = quadratic_data(spec);
  return make_quadratic_from(std::move(a), std::move(b), std::move(norm),
                             "quadratic_seed" + std::to_string(spec.seed));
}

/// f(x) = rho * log sum_i exp((a_i'x - b_i)/rho). Smooth, convex, mu = 0.
/// The recorded L = ||A||_2^2 / rho is an upper bound on the Hessian norm.
inline ObjectiveOracle make_log_sum_exp_from(Mat a, Vec b, double rho,
                                             std::string name = "log_sum_exp") {
  if (!(rho > 0.0)) throw std::invalid_argument("make_log_sum_exp_from: rho must be positive");
  if (a.rows() != b.size() || a.rows() < 1)
    throw std::invalid_argument("make_log_sum_exp_from: shape mismatch");
  const Eigen::Index n = a.cols();
  const double l = detail::spectral_norm_squared(a) / rho;

  auto scores = [a, b, rho](const Vec& x) -> Vec { return (a * x - b) / rho; };
  auto value = [scores, rho](const Vec& x) {
    Vec s = scores(x);
    const double m = s.maxCoeff();
    return rho * (m + std::log((s.array() - m).exp().sum()));
  };
  auto grad = [a, scores](const Vec& x) -> Vec {
    Vec s = scores(x);
    const double m = s.maxCoeff();
    Vec p = (s.array() - m).exp();
    p /= p.sum();
    return a.transpose() * p;
  };
  return ObjectiveOracle(std::move(name), n, value, grad, l, 0.0, QuadraticNorm::identity(n));
}

inline ObjectiveOracle make_log_sum_exp(const ProblemSpec& spec) {
  if (spec.kind != ProblemSpec::Kind::log_sum_exp)
    throw std::invalid_argument("make_log_sum_exp: spec kind mismatch");
  if (spec.dim < 1 || spec.terms < 1)
    throw std::invalid_argument("make_log_sum_exp: dimension and terms must be >= 1");
  std::mt19937_64 rng(spec.seed);
  Mat a(spec.terms, spec.dim);
  for (Eigen::Index i = 0; i < spec.terms; ++i)
    a.row(i) = detail::random_gaussian(spec.dim, rng).transpose();
  // Center the rows so they sum to zero. Then max_i <a_i, x> >= 0 for every x,
  // so the objective is bounded below and a minimizer exists; raw Gaussian
  // rows can leave a recession direction along which f decreases without end.
  a.rowwise() -= a.colwise().mean();
  Vec b = detail::random_gaussian(spec.terms, rng);
  return make_log_sum_exp_from(std::move(a), std::move(b), spec.rho,
                               "log_sum_exp_seed" + std::to_string(spec.seed));
}

struct LogisticData {
  Mat features;           // m x n
  std::vector<int> labels;  // entries in {-1, +1}
};

/// Header-less CSV, one sample per row: label in {-1,+1}, then the features.
/// Accepts LF and CRLF endings.
inline LogisticData read_logistic_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open dataset '" + path + "'");
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  std::string line;
  long line_no = 0;
  Eigen::Index width = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> fields;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        fields.push_back(std::stod(cell, &used));
        if (used != cell.size()) throw std::invalid_argument("trailing characters");
      } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line_no) + ": bad number '" + cell + "'");
      }
    }
    if (fields.size() < 2)
      throw ParseError("line " + std::to_string(line_no) + ": need a label and at least one feature");
    if (fields[0] != 1.0 && fields[0] != -1.0)
      throw ParseError("line " + std::to_string(line_no) + ": label must be -1 or +1");
    if (width < 0) width = static_cast<Eigen::Index>(fields.size()) - 1;
    if (static_cast<Eigen::Index>(fields.size()) - 1 != width)
      throw ParseError("line " + std::to_string(line_no) + ": inconsistent feature count");
    labels.push_back(static_cast<int>(fields[0]));
    fields.erase(fields.begin());
    rows.push_back(std::move(fields));
  }
  if (rows.empty()) throw ParseError("dataset '" + path + "' is empty");
  Mat features(static_cast<Eigen::Index>(rows.size()), width);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (Eigen::Index j = 0; j < width; ++j) features(static_cast<Eigen::Index>(i), j) = rows[i][static_cast<std::size_t>(j)];
  return LogisticData{std::move(features), std::move(labels)};
}

/// Regularized logistic loss
/// f(x) = (1/m) sum_i log(1 + exp(-l_i a_i'x)) + (lambda/2)||x||^2,
/// L = ||A||_2^2/(4m) + lambda, mu = lambda.
inline ObjectiveOracle make_logistic_from(LogisticData data, double lambda,
                                          std::string name = "logistic") {
  if (lambda < 0.0) throw std::invalid_argument("make_logistic_from: ridge must be >= 0");
  const Eigen::Index m = data.features.rows();
  const Eigen::Index n = data.features.cols();
  if (m == 0) throw std::invalid_argument("make_logistic_from: dataset has no samples");
  const double l = detail::spectral_norm_squared(data.features) / (4.0 * m) + lambda;
  Vec y(m);
  for (Eigen::Index i = 0; i < m; ++i) y(i) = data.labels[static_cast<std::size_t>(i)];
  Mat a = std::move(data.features);

  // log(1 + exp(-t)) evaluated without overflow for either sign of t.
  auto softplus_neg = [](double t) {
    return t > 0.0 ? std::log1p(std::exp(-t)) : -t + std::log1p(std::exp(t));
  };
  auto value = [a, y, m, lambda, softplus_neg](const Vec& x) {
    Vec t = y.cwiseProduct(a * x);
    double s = 0.0;
    for (Eigen::Index i = 0; i < t.size(); ++i) s += softplus_neg(t(i));
    return s / m + 0.5 * lambda * x.squaredNorm();
  };
  auto grad = [a, y, m, lambda](const Vec& x) -> Vec {
    Vec t = y.cwiseProduct(a * x);
    Vec w(t.size());
    for (Eigen::Index i = 0; i < t.size(); ++i) w(i) = -y(i) / (1.0 + std::exp(t(i)));
    return (a.transpose() * w) / m + lambda * x;
  };
  return ObjectiveOracle(std::move(name), n, value, grad, l, lambda, QuadraticNorm::identity(n));
}

inline ObjectiveOracle make_logistic(const ProblemSpec& spec) {
  if (spec.kind != ProblemSpec::Kind::logistic)
    throw std::invalid_argument("make_logistic: spec kind mismatch");
  return make_logistic_from(read_logistic_csv(spec.data_path), spec.ridge,
                            "logistic:" + spec.data_path);
}

}  // namespace ogm

#endif  // OGMLAB_PROBLEMS_HPP
