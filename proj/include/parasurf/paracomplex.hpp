#pragma once

// The half-swap paracomplex structure on R^{2n+2} and centred hyperquadrics
// x^T A x = 1 whose matrix anticommutes with it.

#include <Eigen/Dense>

#include <cstdint>

namespace parasurf {

/// A point or vector of R^{2n+2}.
using AmbientVector = Eigen::VectorXd;

/// (x_1..x_{n+1}, y_1..y_{n+1}) -> (y_1..y_{n+1}, x_1..x_{n+1}).
/// Throws ShapeError on odd or empty input.
AmbientVector apply_J(const AmbientVector& v);

/// Matrix of apply_J in dimension 2n+2.
Eigen::MatrixXd j_matrix(int ambient_dim);

/// max |(J A + A J)_{ij}|.
double anticommutator_residual(const Eigen::MatrixXd& A);

/// A = [[P, R_skew], [-R_skew, -P]] with P symmetric and R_skew antisymmetric.
class QuadricSpec {
public:
  /// Validates shapes, exact (anti)symmetry and |det A| > 1e-9 * max|A|^{2n+2}.
  static QuadricSpec from_blocks(const Eigen::MatrixXd& P, const Eigen::MatrixXd& R_skew);

  /// Any symmetric A, no block structure required. Used to probe the
  /// converse theorem with quadrics outside the family (e.g. spheres).
  static QuadricSpec unchecked(const Eigen::MatrixXd& A);

  int n() const { return n_; }
  int ambient_dim() const { return 2 * n_ + 2; }
  const Eigen::MatrixXd& P() const { return P_; }
  const Eigen::MatrixXd& R_skew() const { return R_skew_; }
  const Eigen::MatrixXd& A() const { return A_; }
  bool is_structured() const { return structured_; }

private:
  QuadricSpec() = default;

  int n_ = 0;
  Eigen::MatrixXd P_;
  Eigen::MatrixXd R_skew_;
  Eigen::MatrixXd A_;
  bool structured_ = true;
};

/// Entries uniform in [-1, 1], symmetrised / antisymmetrised, redrawn until
/// |det A| > 1e-6. Throws GenerationError after 1000 redraws.
QuadricSpec random_quadric_spec(int n, std::uint64_t seed);

/// x^T A x - 1.
double quadric_residual(const QuadricSpec& spec, const AmbientVector& x);

/// Draws random ambient directions d until d^T A d is comfortably positive and
/// returns d / sqrt(d^T A d). Throws BasePointNotFound after max_tries.
AmbientVector find_base_point(const QuadricSpec& spec, std::uint64_t seed, int max_tries = 1000);

/// Orthonormal basis (as columns) of the Euclidean complement of A x0.
Eigen::MatrixXd tangent_basis(const QuadricSpec& spec, const AmbientVector& x0);

} // namespace parasurf
