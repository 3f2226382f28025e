#pragma once

// The almost paracontact structure induced by a J-tangent transversal field:
//
//   J X = phi X + eta(X) C for tangent X,     xi = J C.
//
// and the structure-level checks (metric, normal, alpha-contact,
// alpha-Sasakian) with g := h.

#include "parasurf/hypersurface.hpp"
#include "parasurf/tensor.hpp"

#include <Eigen/Dense>

#include <array>
#include <vector>

namespace parasurf {

/// Chart coordinates of a vector field and their first derivatives.
struct VectorField {
  Eigen::VectorXd value;
  Eigen::MatrixXd grad;  // (l,k) = d_l V^k
};

struct ParacontactData {
  Eigen::VectorXd xi;
  Eigen::VectorXd eta;
  Eigen::MatrixXd phi;       // (k,j) = phi^k_j
  Eigen::MatrixXd d_eta;     // (i,j) = 1/2 (d_i eta_j - d_j eta_i)
  double j_tangency = 0.0;   // |transversal coefficient of J C|

  Eigen::MatrixXd eta_grad;  // (l,i) = d_l eta_i
  Tensor3 phi_grad;          // (l,k,j) = d_l phi^k_j
  Eigen::MatrixXd xi_grad;   // (l,k) = d_l xi^k

  /// Z_i = e_i - eta(e_i) xi for every i except the pivot (largest |xi^i|);
  /// 2n fields spanning ker eta.
  std::vector<VectorField> D_basis;
  int D_pivot = 0;

  VectorField xi_field() const { return {xi, xi_grad}; }
};

ParacontactData induced_structure(const Frame& frame);

/// |transversal coefficient of J C| at the base point of the jets.
double j_tangency_residual(const AmbientJet& point);

struct Signature {
  int plus = 0;
  int minus = 0;
  bool operator==(const Signature&) const = default;
};

/// Sign count of the eigenvalues of a symmetric matrix, ignoring
/// |lambda| <= 1e-10 * max|lambda|.
Signature inertia(const Eigen::MatrixXd& symmetric);

struct AxiomResiduals {
  double phi_squared = 0.0;  // max |phi^2 - Id + xi (x) eta|
  double eta_xi = 0.0;       // |eta(xi) - 1|
  double phi_xi = 0.0;       // max |phi xi|
  double eta_phi = 0.0;      // max |eta o phi|
  int plus_eigen = 0;        // eigenvalues of phi within 1e-6 of +1
  int minus_eigen = 0;       // ... of -1

  double max() const;
};

AxiomResiduals axiom_residuals(const ParacontactData& pd);

struct MetricCheck {
  double residual = 0.0;
  Signature signature;
};

/// max |h(phi e_i, phi e_j) + h_ij - eta_i eta_j| and the inertia of h.
MetricCheck metric_residual(const ParacontactData& pd, const Eigen::MatrixXd& h);

struct NormalityResiduals {
  double nijenhuis = 0.0;    // max |[phi,phi]^k_ij - 2 d_eta_ij xi^k|
  double operational = 0.0;  // max over D_basis of |S phi Z - phi S Z + tau(Z) xi|
};

NormalityResiduals normality_residuals(const ParacontactData& pd, const InducedData& induced);

/// max |d_eta_ij - alpha h(e_i, phi e_j)|.
double contact_residual(const ParacontactData& pd, const Eigen::MatrixXd& h, double alpha);

struct LeviCivita {
  Tensor3 christoffel;         // (k,i,j)
  double compatibility = 0.0;  // max |(hat nabla_i h)_jk|
};

/// Christoffel symbols of h. Throws DegenerateMetric when h is singular.
LeviCivita levi_civita(const Eigen::MatrixXd& h, const Tensor3& dh);

/// max |(hat nabla_i phi)^k_j - alpha (-h_ij xi^k + eta_j delta^k_i)|.
double sasakian_residual(const ParacontactData& pd, const LeviCivita& lc, const Eigen::MatrixXd& h,
                         double alpha);

/// Spanning vector of {X : h(X, D) = 0}, namely h^{-1} eta.
Eigen::VectorXd d_perp_direction(const ParacontactData& pd, const Eigen::MatrixXd& h);

struct MetricReport {
  double metric_residual = 0.0;
  Signature signature;
  double j_tangency_residual = 0.0;
  double nijenhuis_residual = 0.0;
  double normality_residual = 0.0;     // operational form
  std::array<double, 3> contact{};     // alpha = -1, 0, +1
  std::array<double, 3> sasakian{};    // alpha = -1, 0, +1
  LeviCivita levi_civita;

  static constexpr std::array<double, 3> kAlphas = {-1.0, 0.0, 1.0};
  double contact_alpha(double alpha) const;
  double sasakian_alpha(double alpha) const;
};

MetricReport metric_report(const ParacontactData& pd, const InducedData& induced);

// Vector-field calculus on the chart, with the induced connection.

/// (nabla_X Y)^k = X^a (d_a Y^k + Gamma^k_ab Y^b).
Eigen::VectorXd covariant(const InducedData& induced, const Eigen::VectorXd& X, const VectorField& Y);

/// [X, Y]^k = X^a d_a Y^k - Y^a d_a X^k.
Eigen::VectorXd bracket(const VectorField& X, const VectorField& Y);

/// The field phi Y with its derivatives.
VectorField apply_phi(const ParacontactData& pd, const VectorField& Y);

} // namespace parasurf
