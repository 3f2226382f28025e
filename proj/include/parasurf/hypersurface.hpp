#pragma once

// Immersions f: M -> R^{2n+2} with a transversal field C, and everything the
// flat ambient derivative induces on them:
//
//   D_X f_*Y = f_*(nabla_X Y) + h(X,Y) C,     D_X C = -f_*(S X) + tau(X) C.
//
// All chart derivatives come from Jet3 arithmetic. f and C are expanded to
// degree 3 at the chart point, so the second derivatives of f and the first
// derivatives of C are known through degree 1 and 2 respectively, which is
// exactly enough for first derivatives of Gamma, h, S and tau.

#include "parasurf/jet.hpp"
#include "parasurf/paracomplex.hpp"
#include "parasurf/tensor.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace parasurf {

enum class Family { QuadricRadial, ExplicitGraph, Hyperbola, PerturbedTransversal };

std::string to_string(Family family);
Family family_from_string(const std::string& name);

struct Monomial {
  double coeff = 0.0;
  std::vector<int> exponents;
};
using Polynomial = std::vector<Monomial>;

struct Tolerances {
  double engine = 1e-8;
  double theorem = 1e-6;
};

/// One chart of one immersion, its transversal field rule and sample points.
struct ImmersionScene {
  Family family = Family::Hyperbola;
  int n = 0;

  // quadric_radial / perturbed_transversal
  std::optional<QuadricSpec> quadric;
  AmbientVector base_point;
  Eigen::MatrixXd tangent_basis;  // (2n+2) x (2n+1), columns v_i

  // perturbed_transversal: C = f + epsilon * W, W = direction projected onto D.
  double epsilon = 0.0;
  AmbientVector direction;

  // explicit_graph: f = (u_1..u_{2n+1}, graph(u)), C_k = transversal[k](u).
  Polynomial graph;
  std::vector<Polynomial> transversal;

  std::vector<Eigen::VectorXd> samples;
  Tolerances tolerances;

  int chart_dim() const { return 2 * n + 1; }
  int ambient_dim() const { return 2 * n + 2; }
};

ImmersionScene make_hyperbola_scene();

/// Validates x0^T A x0 = 1 (to 1e-9) and that the columns of basis span (A x0)^perp.
ImmersionScene make_quadric_scene(const QuadricSpec& spec, const AmbientVector& x0,
                                  const Eigen::MatrixXd& basis);
/// Base point from find_base_point(spec, seed), basis from tangent_basis.
ImmersionScene make_quadric_scene(const QuadricSpec& spec, std::uint64_t seed);

ImmersionScene make_perturbed_scene(const QuadricSpec& spec, const AmbientVector& x0,
                                    const Eigen::MatrixXd& basis, double epsilon,
                                    const AmbientVector& direction);

ImmersionScene make_graph_scene(int n, Polynomial graph, std::vector<Polynomial> transversal);

/// Draws `count` chart points uniformly from [-box, box]^{2n+1}, rejecting
/// points where the radial chart gets close to its boundary (q(y) <= 0.1) or
/// the frame is ill-conditioned (cond > 1e8). Deterministic in `seed`.
std::vector<Eigen::VectorXd> generate_samples(const ImmersionScene& scene, std::uint64_t seed,
                                              int count, double box);

/// Degree-3 jets of f and C at a chart point.
struct AmbientJet {
  std::vector<Jet3> f;
  std::vector<Jet3> C;
};

AmbientJet eval_immersion(const ImmersionScene& scene, const Eigen::VectorXd& u);

/// B = [e_1 ... e_m | C] with e_i = d_i f, carried as jets together with B^{-1}.
class Frame {
public:
  /// Throws DegenerateFrame if B is singular or cond(B) > 1e8.
  explicit Frame(AmbientJet point);

  int chart_dim() const { return chart_dim_; }
  int ambient_dim() const { return ambient_dim_; }
  const AmbientJet& point() const { return point_; }
  /// Jets of e_i (trustworthy through degree 2).
  const std::vector<Jet3>& tangent(int i) const { return tangents_[i]; }
  const Eigen::MatrixXd& matrix() const { return B0_; }
  double condition() const { return condition_; }

  /// Coefficients (a^1..a^m, b) of v = sum a^i e_i + b C, as jets.
  std::vector<Jet3> decompose(std::span<const Jet3> v) const;

private:
  AmbientJet point_;
  int chart_dim_ = 0;
  int ambient_dim_ = 0;
  std::vector<std::vector<Jet3>> tangents_;
  Eigen::MatrixXd B0_;
  double condition_ = 0.0;
  std::vector<Jet3> inverse_;  // row-major ambient_dim x ambient_dim
};

struct FrameCoords {
  Eigen::VectorXd tangent;
  double transversal = 0.0;
};

/// Pointwise decomposition v = sum a^i e_i + b C at the base point of the jets.
FrameCoords frame_decompose(const AmbientJet& point, const AmbientVector& v);

struct InducedData {
  Eigen::VectorXd u;
  Eigen::MatrixXd frame;    // columns e_1..e_m, C
  double frame_condition = 0.0;
  Tensor3 gamma;            // (k,i,j) = Gamma^k_ij
  Eigen::MatrixXd h;        // (i,j)
  Eigen::MatrixXd S;        // (k,i) = S^k_i, S e_i = S^k_i e_k
  Eigen::VectorXd tau;
  Tensor4 d_gamma;          // (l,k,i,j) = d_l Gamma^k_ij
  Tensor3 dh;               // (l,i,j) = d_l h_ij
  Tensor3 dS;               // (l,k,i) = d_l S^k_i
  Eigen::MatrixXd dtau_raw; // (l,i) = d_l tau_i
  /// |det h| <= 1e-10 * max|h|^m.
  bool metric_degenerate = false;
};

InducedData induced_data(const Frame& frame, const Eigen::VectorXd& u);
InducedData induced_data(const ImmersionScene& scene, const Eigen::VectorXd& u);

struct DerivedTensors {
  Tensor4 R_curv;          // (l,i,j,k) = R^l_ijk, R(e_i,e_j)e_k = R^l_ijk e_l
  Tensor3 nabla_h;         // (i,j,k) = (nabla_i h)_jk
  Tensor3 Q;               // (i,j,k)
  Eigen::MatrixXd dtau;    // (i,j) = 1/2 (d_i tau_j - d_j tau_i)
};

DerivedTensors derived_tensors(const InducedData& induced);

/// max over all index permutations of |Q_ijk - Q_sigma(ijk)|.
double cubic_symmetry_defect(const Tensor3& Q);

struct FundamentalResiduals {
  double gauss = 0.0;
  double codazzi_h = 0.0;
  double codazzi_s = 0.0;
  double ricci = 0.0;

  double max() const;
};

FundamentalResiduals fundamental_residuals(const InducedData& induced, const DerivedTensors& derived);

} // namespace parasurf
