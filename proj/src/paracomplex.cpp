#include "parasurf/paracomplex.hpp"

#include "parasurf/errors.hpp"
#include "parasurf/rng.hpp"

#include <cmath>
#include <string>

namespace parasurf {

AmbientVector apply_J(const AmbientVector& v) {
  const Eigen::Index len = v.size();
  if (len < 2 || len % 2 != 0)
    throw ShapeError("apply_J: ambient vector length " + std::to_string(len) + " is not even and >= 2");
  const Eigen::Index half = len / 2;
  AmbientVector out(len);
  out.head(half) = v.tail(half);
  out.tail(half) = v.head(half);
  return out;
}

Eigen::MatrixXd j_matrix(int ambient_dim) {
  if (ambient_dim < 2 || ambient_dim % 2 != 0)
    throw ShapeError("j_matrix: dimension " + std::to_string(ambient_dim) + " is not even and >= 2");
  const int half = ambient_dim / 2;
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(ambient_dim, ambient_dim);
  J.topRightCorner(half, half).setIdentity();
  J.bottomLeftCorner(half, half).setIdentity();
  return J;
}

double anticommutator_residual(const Eigen::MatrixXd& A) {
  if (A.rows() != A.cols()) throw ShapeError("anticommutator_residual: matrix is not square");
  const Eigen::MatrixXd J = j_matrix(static_cast<int>(A.rows()));
  return (J * A + A * J).cwiseAbs().maxCoeff();
}

namespace {

Eigen::MatrixXd assemble(const Eigen::MatrixXd& P, const Eigen::MatrixXd& R) {
  const Eigen::Index k = P.rows();
  Eigen::MatrixXd A(2 * k, 2 * k);
  A.topLeftCorner(k, k) = P;
  A.topRightCorner(k, k) = R;
  A.bottomLeftCorner(k, k) = -R;
  A.bottomRightCorner(k, k) = -P;
  return A;
}

} // namespace

QuadricSpec QuadricSpec::from_blocks(const Eigen::MatrixXd& P, const Eigen::MatrixXd& R_skew) {
  if (P.rows() < 1 || P.rows() != P.cols() || R_skew.rows() != P.rows() || R_skew.cols() != P.cols())
    throw ShapeError("QuadricSpec: P and R_skew must be square blocks of equal size");
  if (P != P.transpose()) throw ShapeError("QuadricSpec: P is not symmetric");
  if (R_skew != -R_skew.transpose()) throw ShapeError("QuadricSpec: R_skew is not antisymmetric");

  QuadricSpec spec;
  spec.n_ = static_cast<int>(P.rows()) - 1;
  spec.P_ = P;
  spec.R_skew_ = R_skew;
  spec.A_ = assemble(P, R_skew);
  const double scale = std::pow(spec.A_.cwiseAbs().maxCoeff(), static_cast<double>(spec.A_.rows()));
  if (!(std::abs(spec.A_.determinant()) > 1e-9 * scale)) throw ShapeError("QuadricSpec: A is singular");
  return spec;
}

QuadricSpec QuadricSpec::unchecked(const Eigen::MatrixXd& A) {
  if (A.rows() < 2 || A.rows() != A.cols() || A.rows() % 2 != 0)
    throw ShapeError("QuadricSpec: A must be square of even size");
  if (A != A.transpose()) throw ShapeError("QuadricSpec: A is not symmetric");
  QuadricSpec spec;
  const Eigen::Index k = A.rows() / 2;
  spec.n_ = static_cast<int>(k) - 1;
  spec.P_ = A.topLeftCorner(k, k);
  spec.R_skew_ = A.topRightCorner(k, k);
  spec.A_ = A;
  spec.structured_ = anticommutator_residual(A) == 0.0;
  return spec;
}

QuadricSpec random_quadric_spec(int n, std::uint64_t seed) {
  if (n < 0) throw ShapeError("random_quadric_spec: n must be >= 0");
  SeededUniform rng(seed);
  const int k = n + 1;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Eigen::MatrixXd M(k, k), K(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) M(i, j) = rng.uniform(-1.0, 1.0);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) K(i, j) = rng.uniform(-1.0, 1.0);
    const Eigen::MatrixXd P = 0.5 * (M + M.transpose());
    const Eigen::MatrixXd R = 0.5 * (K - K.transpose());
    const Eigen::MatrixXd A = assemble(P, R);
    if (std::abs(A.determinant()) > 1e-6) return QuadricSpec::from_blocks(P, R);
  }
  throw GenerationError("random_quadric_spec: no nonsingular draw after 1000 attempts");
}

double quadric_residual(const QuadricSpec& spec, const AmbientVector& x) {
  if (x.size() != spec.A().rows()) throw ShapeError("quadric_residual: length mismatch");
  return x.dot(spec.A() * x) - 1.0;
}

AmbientVector find_base_point(const QuadricSpec& spec, std::uint64_t seed, int max_tries) {
  SeededUniform rng(seed ^ 0x9e3779b97f4a7c15ULL);
  const int dim = spec.ambient_dim();
  const double a_scale = spec.A().cwiseAbs().maxCoeff();
  for (int attempt = 0; attempt < max_tries; ++attempt) {
    AmbientVector d(dim);
    for (int i = 0; i < dim; ++i) d(i) = rng.uniform(-1.0, 1.0);
    const double q = d.dot(spec.A() * d);
    // Keep away from the asymptotic cone so the chart around x0 is roomy.
    if (q > 0.05 * a_scale * d.squaredNorm()) return d / std::sqrt(q);
  }
  throw BasePointNotFound("find_base_point: no direction with x^T A x > 0 in " +
                          std::to_string(max_tries) + " draws");
}

Eigen::MatrixXd tangent_basis(const QuadricSpec& spec, const AmbientVector& x0) {
  const AmbientVector normal = spec.A() * x0;
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(normal);
  const Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(normal.size(), normal.size());
  return Q.rightCols(normal.size() - 1);
}

} // namespace parasurf
