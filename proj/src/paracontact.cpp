#include "parasurf/paracontact.hpp"

#include "parasurf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace parasurf {

namespace {

std::vector<Jet3> swap_halves(const std::vector<Jet3>& v) {
  const std::size_t half = v.size() / 2;
  std::vector<Jet3> out(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) out[k] = v[(k + half) % v.size()];
  return out;
}

} // namespace

ParacontactData induced_structure(const Frame& frame) {
  const int m = frame.chart_dim();
  ParacontactData pd;
  pd.phi = Eigen::MatrixXd::Zero(m, m);
  pd.eta = Eigen::VectorXd::Zero(m);
  pd.xi = Eigen::VectorXd::Zero(m);
  pd.eta_grad = Eigen::MatrixXd::Zero(m, m);
  pd.phi_grad = Tensor3(m);
  pd.xi_grad = Eigen::MatrixXd::Zero(m, m);

  for (int j = 0; j < m; ++j) {
    const std::vector<Jet3> w = frame.decompose(swap_halves(frame.tangent(j)));
    for (int k = 0; k < m; ++k) {
      pd.phi(k, j) = w[k].value();
      for (int l = 0; l < m; ++l) pd.phi_grad(l, k, j) = w[k].gradient(l);
    }
    pd.eta(j) = w[m].value();
    for (int l = 0; l < m; ++l) pd.eta_grad(l, j) = w[m].gradient(l);
  }

  const std::vector<Jet3> w = frame.decompose(swap_halves(frame.point().C));
  for (int k = 0; k < m; ++k) {
    pd.xi(k) = w[k].value();
    for (int l = 0; l < m; ++l) pd.xi_grad(l, k) = w[k].gradient(l);
  }
  pd.j_tangency = std::abs(w[m].value());

  pd.d_eta = 0.5 * (pd.eta_grad - pd.eta_grad.transpose());

  // sum_i xi^i Z_i = 0 is the only relation among the Z_i.
  pd.xi.cwiseAbs().maxCoeff(&pd.D_pivot);
  for (int i = 0; i < m; ++i) {
    if (i == pd.D_pivot) continue;
    VectorField Z;
    Z.value = -pd.eta(i) * pd.xi;
    Z.value(i) += 1.0;
    Z.grad = Eigen::MatrixXd::Zero(m, m);
    for (int l = 0; l < m; ++l)
      for (int k = 0; k < m; ++k) Z.grad(l, k) = -pd.eta_grad(l, i) * pd.xi(k) - pd.eta(i) * pd.xi_grad(l, k);
    pd.D_basis.push_back(std::move(Z));
  }
  return pd;
}

double j_tangency_residual(const AmbientJet& point) {
  const int N = static_cast<int>(point.C.size());
  AmbientVector C(N);
  for (int k = 0; k < N; ++k) C(k) = point.C[k].value();
  return std::abs(frame_decompose(point, apply_J(C)).transversal);
}

Signature inertia(const Eigen::MatrixXd& symmetric) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(symmetric, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  const double cutoff = 1e-10 * lambda.cwiseAbs().maxCoeff();
  Signature out;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (lambda(i) > cutoff) ++out.plus;
    else if (lambda(i) < -cutoff) ++out.minus;
  }
  return out;
}

double AxiomResiduals::max() const { return std::max({phi_squared, eta_xi, phi_xi, eta_phi}); }

AxiomResiduals axiom_residuals(const ParacontactData& pd) {
  const Eigen::Index m = pd.phi.rows();
  AxiomResiduals out;
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(m, m);
  out.phi_squared = (pd.phi * pd.phi - id + pd.xi * pd.eta.transpose()).cwiseAbs().maxCoeff();
  out.eta_xi = std::abs(pd.eta.dot(pd.xi) - 1.0);
  out.phi_xi = (pd.phi * pd.xi).cwiseAbs().maxCoeff();
  out.eta_phi = (pd.eta.transpose() * pd.phi).cwiseAbs().maxCoeff();
  Eigen::EigenSolver<Eigen::MatrixXd> eig(pd.phi, false);
  for (Eigen::Index i = 0; i < m; ++i) {
    const std::complex<double> lambda = eig.eigenvalues()(i);
    if (std::abs(lambda - 1.0) < 1e-6) ++out.plus_eigen;
    if (std::abs(lambda + 1.0) < 1e-6) ++out.minus_eigen;
  }
  return out;
}

MetricCheck metric_residual(const ParacontactData& pd, const Eigen::MatrixXd& h) {
  const Eigen::MatrixXd defect = pd.phi.transpose() * h * pd.phi + h - pd.eta * pd.eta.transpose();
  return {defect.cwiseAbs().maxCoeff(), inertia(h)};
}

NormalityResiduals normality_residuals(const ParacontactData& pd, const InducedData& in) {
  const int m = static_cast<int>(pd.phi.rows());
  NormalityResiduals out;
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        double N = 0.0;
        for (int l = 0; l < m; ++l) {
          N += pd.phi(l, i) * pd.phi_grad(l, k, j) - pd.phi(l, j) * pd.phi_grad(l, k, i);
          N -= pd.phi(k, l) * (pd.phi_grad(i, l, j) - pd.phi_grad(j, l, i));
        }
        out.nijenhuis = std::max(out.nijenhuis, std::abs(N - 2.0 * pd.d_eta(i, j) * pd.xi(k)));
      }
  for (const auto& Z : pd.D_basis) {
    const Eigen::VectorXd v = in.S * (pd.phi * Z.value) - pd.phi * (in.S * Z.value) + in.tau.dot(Z.value) * pd.xi;
    out.operational = std::max(out.operational, v.cwiseAbs().maxCoeff());
  }
  return out;
}

double contact_residual(const ParacontactData& pd, const Eigen::MatrixXd& h, double alpha) {
  return (pd.d_eta - alpha * h * pd.phi).cwiseAbs().maxCoeff();
}

LeviCivita levi_civita(const Eigen::MatrixXd& h, const Tensor3& dh) {
  const int m = static_cast<int>(h.rows());
  Eigen::FullPivLU<Eigen::MatrixXd> lu(h);
  if (!lu.isInvertible()) throw DegenerateMetric("levi_civita: h is singular");
  const Eigen::MatrixXd h_inv = lu.inverse();

  LeviCivita out;
  out.christoffel = Tensor3(m);
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        double g = 0.0;
        for (int l = 0; l < m; ++l) g += h_inv(k, l) * (dh(i, j, l) + dh(j, i, l) - dh(l, i, j));
        out.christoffel(k, i, j) = out.christoffel(k, j, i) = 0.5 * g;
      }

  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        double v = dh(i, j, k);
        for (int p = 0; p < m; ++p)
          v -= out.christoffel(p, i, j) * h(p, k) + out.christoffel(p, i, k) * h(j, p);
        out.compatibility = std::max(out.compatibility, std::abs(v));
      }
  return out;
}

double sasakian_residual(const ParacontactData& pd, const LeviCivita& lc, const Eigen::MatrixXd& h,
                         double alpha) {
  const int m = static_cast<int>(h.rows());
  double out = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        double lhs = pd.phi_grad(i, k, j);
        for (int l = 0; l < m; ++l)
          lhs += lc.christoffel(k, i, l) * pd.phi(l, j) - lc.christoffel(l, i, j) * pd.phi(k, l);
        const double rhs = alpha * (-h(i, j) * pd.xi(k) + (k == i ? pd.eta(j) : 0.0));
        out = std::max(out, std::abs(lhs - rhs));
      }
  return out;
}

Eigen::VectorXd d_perp_direction(const ParacontactData& pd, const Eigen::MatrixXd& h) {
  Eigen::FullPivLU<Eigen::MatrixXd> lu(h);
  if (!lu.isInvertible()) throw DegenerateMetric("d_perp_direction: h is singular");
  return lu.solve(pd.eta);
}

double MetricReport::contact_alpha(double alpha) const {
  for (std::size_t i = 0; i < kAlphas.size(); ++i)
    if (kAlphas[i] == alpha) return contact[i];
  throw ShapeError("MetricReport: alpha must be -1, 0 or 1");
}

double MetricReport::sasakian_alpha(double alpha) const {
  for (std::size_t i = 0; i < kAlphas.size(); ++i)
    if (kAlphas[i] == alpha) return sasakian[i];
  throw ShapeError("MetricReport: alpha must be -1, 0 or 1");
}

MetricReport metric_report(const ParacontactData& pd, const InducedData& in) {
  MetricReport out;
  const MetricCheck metric = metric_residual(pd, in.h);
  out.metric_residual = metric.residual;
  out.signature = metric.signature;
  out.j_tangency_residual = pd.j_tangency;
  const NormalityResiduals normal = normality_residuals(pd, in);
  out.nijenhuis_residual = normal.nijenhuis;
  out.normality_residual = normal.operational;
  out.levi_civita = levi_civita(in.h, in.dh);
  for (std::size_t i = 0; i < MetricReport::kAlphas.size(); ++i) {
    out.contact[i] = contact_residual(pd, in.h, MetricReport::kAlphas[i]);
    out.sasakian[i] = sasakian_residual(pd, out.levi_civita, in.h, MetricReport::kAlphas[i]);
  }
  return out;
}

Eigen::VectorXd covariant(const InducedData& in, const Eigen::VectorXd& X, const VectorField& Y) {
  const int m = static_cast<int>(X.size());
  Eigen::VectorXd out = Y.grad.transpose() * X;
  for (int k = 0; k < m; ++k)
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) out(k) += in.gamma(k, a, b) * X(a) * Y.value(b);
  return out;
}

Eigen::VectorXd bracket(const VectorField& X, const VectorField& Y) {
  return Y.grad.transpose() * X.value - X.grad.transpose() * Y.value;
}

VectorField apply_phi(const ParacontactData& pd, const VectorField& Y) {
  const int m = static_cast<int>(Y.value.size());
  VectorField out;
  out.value = pd.phi * Y.value;
  out.grad = Y.grad * pd.phi.transpose();  // (l,k) = phi^k_j d_l Y^j
  for (int l = 0; l < m; ++l)
    for (int k = 0; k < m; ++k)
      for (int j = 0; j < m; ++j) out.grad(l, k) += pd.phi_grad(l, k, j) * Y.value(j);
  return out;
}

} // namespace parasurf
