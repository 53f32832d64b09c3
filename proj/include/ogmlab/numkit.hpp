#ifndef OGMLAB_NUMKIT_HPP
#define OGMLAB_NUMKIT_HPP

#include <cmath>
#include <stdexcept>
#include <utility>

#include <Eigen/Dense>

namespace ogm {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Quadratic norm ‖x‖ = sqrt(x'Qx) for a symmetric positive definite Q.
/// Q is factored once at construction (lower-triangular Cholesky factor);
/// every Q^{-1} application is a pair of triangular solves.
class QuadraticNorm {
 public:
  explicit QuadraticNorm(Mat q) : q_(std::move(q)) {
    if (q_.rows() == 0 || q_.rows() != q_.cols())
      throw std::invalid_argument("QuadraticNorm: Q must be square and non-empty");
    const double scale = q_.cwiseAbs().maxCoeff();
    if (!((q_ - q_.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale))
      throw std::invalid_argument("QuadraticNorm: Q is not symmetric");
    Eigen::LLT<Mat> llt(q_);
    if (llt.info() != Eigen::Success)
      throw std::invalid_argument("QuadraticNorm: Q is not positive definite");
    chol_ = llt.matrixL();
    if (chol_.diagonal().minCoeff() < 1e-12 * scale)
      throw std::invalid_argument("QuadraticNorm: Q is numerically singular");
  }

  static QuadraticNorm identity(Eigen::Index n) { return QuadraticNorm(Mat::Identity(n, n)); }

  Eigen::Index dim() const { return q_.rows(); }
  const Mat& matrix() const { return q_; }
  const Mat& factor() const { return chol_; }
  bool is_identity() const { return q_.isIdentity(0.0); }

  /// sqrt(x'Qx), computed as ‖L'x‖₂ so the result is exactly nonnegative.
  double primal(const Vec& x) const {
    check_dim(x);
    return (chol_.transpose() * x).norm();
  }

  /// sqrt(u'Q^{-1}u) = ‖L^{-1}u‖₂ via one triangular solve.
  double dual(const Vec& u) const {
    check_dim(u);
    return chol_.triangularView<Eigen::Lower>().solve(u).norm();
  }

  Vec apply(const Vec& x) const {
    check_dim(x);
    return q_ * x;
  }

  /// Solves Qv = u by two triangular solves.
  Vec apply_inverse(const Vec& u) const {
    check_dim(u);
    Vec v = chol_.triangularView<Eigen::Lower>().solve(u);
    return chol_.transpose().triangularView<Eigen::Upper>().solve(v);
  }

 private:
  void check_dim(const Vec& v) const {
    if (v.size() != q_.rows())
      throw std::invalid_argument("QuadraticNorm: dimension mismatch");
  }

  Mat q_;
  Mat chol_;  // lower factor, Q = LL'
};

/// Bregman divergence of w(y) = (1/2t)‖y‖² under a quadratic norm:
/// V_x(y) = (1/2t)‖x-y‖². The scale t ∈ (0,1] keeps w 1-strongly convex.
class BregmanGenerator {
 public:
  BregmanGenerator(QuadraticNorm norm, double scale)
      : norm_(std::move(norm)), scale_(scale) {
    if (!(scale_ > 0.0 && scale_ <= 1.0))
      throw std::invalid_argument("BregmanGenerator: scale t must lie in (0,1]");
  }

  double scale() const { return scale_; }
  const QuadraticNorm& norm() const { return norm_; }

  double operator()(const Vec& x, const Vec& y) const {
    const double d = norm_.primal(x - y);
    return d * d / (2.0 * scale_);
  }

 private:
  QuadraticNorm norm_;
  double scale_;
};

inline double primal_norm(const Vec& x, const QuadraticNorm& n) { return n.primal(x); }
inline double dual_norm(const Vec& u, const QuadraticNorm& n) { return n.dual(u); }
inline Vec apply_inverse(const Vec& u, const QuadraticNorm& n) { return n.apply_inverse(u); }
inline double bregman(const Vec& x, const Vec& y, const BregmanGenerator& b) { return b(x, y); }

}  // namespace ogm

#endif  // OGMLAB_NUMKIT_HPP
