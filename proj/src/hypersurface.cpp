#include "parasurf/hypersurface.hpp"

#include "parasurf/errors.hpp"
#include "parasurf/rng.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

namespace parasurf {

std::string to_string(Family family) {
  switch (family) {
    case Family::QuadricRadial: return "quadric_radial";
    case Family::ExplicitGraph: return "explicit_graph";
    case Family::Hyperbola: return "hyperbola";
    case Family::PerturbedTransversal: return "perturbed_transversal";
  }
  return "unknown";
}

Family family_from_string(const std::string& name) {
  if (name == "quadric_radial") return Family::QuadricRadial;
  if (name == "explicit_graph") return Family::ExplicitGraph;
  if (name == "hyperbola") return Family::Hyperbola;
  if (name == "perturbed_transversal") return Family::PerturbedTransversal;
  throw SchemaError("unknown family '" + name + "'");
}

// ---------------------------------------------------------------------------
// Scene construction

ImmersionScene make_hyperbola_scene() {
  ImmersionScene scene;
  scene.family = Family::Hyperbola;
  scene.n = 0;
  return scene;
}

namespace {

void check_quadric_chart(const QuadricSpec& spec, const AmbientVector& x0, const Eigen::MatrixXd& basis) {
  const int dim = spec.ambient_dim();
  if (x0.size() != dim) throw ShapeError("quadric scene: base point has wrong length");
  if (basis.rows() != dim || basis.cols() != dim - 1)
    throw ShapeError("quadric scene: tangent basis must be (2n+2) x (2n+1)");
  if (std::abs(quadric_residual(spec, x0)) > 1e-9)
    throw ShapeError("quadric scene: base point is not on x^T A x = 1");
  const AmbientVector normal = spec.A() * x0;
  const double scale = normal.norm() * basis.cwiseAbs().maxCoeff();
  if ((basis.transpose() * normal).cwiseAbs().maxCoeff() > 1e-9 * std::max(scale, 1.0))
    throw ShapeError("quadric scene: tangent basis is not orthogonal to A x0");
  Eigen::FullPivLU<Eigen::MatrixXd> lu(basis);
  lu.setThreshold(1e-10);
  if (lu.rank() != dim - 1) throw ShapeError("quadric scene: tangent basis is rank deficient");
}

} // namespace

ImmersionScene make_quadric_scene(const QuadricSpec& spec, const AmbientVector& x0,
                                  const Eigen::MatrixXd& basis) {
  check_quadric_chart(spec, x0, basis);
  ImmersionScene scene;
  scene.family = Family::QuadricRadial;
  scene.n = spec.n();
  scene.quadric = spec;
  scene.base_point = x0;
  scene.tangent_basis = basis;
  return scene;
}

ImmersionScene make_quadric_scene(const QuadricSpec& spec, std::uint64_t seed) {
  const AmbientVector x0 = find_base_point(spec, seed);
  return make_quadric_scene(spec, x0, tangent_basis(spec, x0));
}

ImmersionScene make_perturbed_scene(const QuadricSpec& spec, const AmbientVector& x0,
                                    const Eigen::MatrixXd& basis, double epsilon,
                                    const AmbientVector& direction) {
  ImmersionScene scene = make_quadric_scene(spec, x0, basis);
  if (direction.size() != spec.ambient_dim())
    throw ShapeError("perturbed scene: direction has wrong length");
  scene.family = Family::PerturbedTransversal;
  scene.epsilon = epsilon;
  scene.direction = direction;
  return scene;
}

ImmersionScene make_graph_scene(int n, Polynomial graph, std::vector<Polynomial> transversal) {
  if (n < 0) throw ShapeError("graph scene: n must be >= 0");
  const int m = 2 * n + 1;
  if (static_cast<int>(transversal.size()) != m + 1)
    throw ShapeError("graph scene: transversal needs 2n+2 component polynomials");
  auto check = [m](const Polynomial& p) {
    for (const auto& term : p) {
      if (static_cast<int>(term.exponents.size()) != m)
        throw ShapeError("graph scene: monomial exponent vector must have 2n+1 entries");
      for (int e : term.exponents)
        if (e < 0) throw ShapeError("graph scene: negative exponent");
    }
  };
  check(graph);
  for (const auto& p : transversal) check(p);

  ImmersionScene scene;
  scene.family = Family::ExplicitGraph;
  scene.n = n;
  scene.graph = std::move(graph);
  scene.transversal = std::move(transversal);
  return scene;
}

// ---------------------------------------------------------------------------
// Immersion jets

namespace {

std::vector<Jet3> chart_jets(const Eigen::VectorXd& u) {
  const int m = static_cast<int>(u.size());
  std::vector<Jet3> out;
  out.reserve(m);
  for (int i = 0; i < m; ++i) out.push_back(Jet3::variable(i, u(i), m));
  return out;
}

std::vector<Jet3> mat_vec(const Eigen::MatrixXd& A, const std::vector<Jet3>& v) {
  const int m = v.front().num_vars();
  std::vector<Jet3> out;
  out.reserve(A.rows());
  for (Eigen::Index r = 0; r < A.rows(); ++r) {
    Jet3 acc(m);
    for (Eigen::Index c = 0; c < A.cols(); ++c)
      if (A(r, c) != 0.0) acc += A(r, c) * v[c];
    out.push_back(std::move(acc));
  }
  return out;
}

Jet3 dot(const std::vector<Jet3>& a, const std::vector<Jet3>& b) {
  Jet3 acc(a.front().num_vars());
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

std::vector<Jet3> radial_point(const ImmersionScene& scene, const std::vector<Jet3>& u) {
  const int m = scene.chart_dim();
  const int dim = scene.ambient_dim();
  std::vector<Jet3> y;
  y.reserve(dim);
  for (int k = 0; k < dim; ++k) {
    Jet3 yk(m, scene.base_point(k));
    for (int i = 0; i < m; ++i) yk += scene.tangent_basis(k, i) * u[i];
    y.push_back(std::move(yk));
  }
  const Jet3 q = dot(y, mat_vec(scene.quadric->A(), y));
  if (!(q.value() > 0.0)) throw ChartLeak("quadric chart: y^T A y <= 0 at the ray point");
  const Jet3 scale = reciprocal(sqrt(q));
  for (auto& yk : y) yk = yk * scale;
  return y;
}

Jet3 eval_polynomial(const Polynomial& p, const std::vector<Jet3>& u) {
  const int m = static_cast<int>(u.size());
  Jet3 acc(m);
  for (const auto& term : p) {
    Jet3 mono(m, term.coeff);
    for (int v = 0; v < m; ++v)
      for (int e = 0; e < term.exponents[v]; ++e) mono = mono * u[v];
    acc += mono;
  }
  return acc;
}

} // namespace

AmbientJet eval_immersion(const ImmersionScene& scene, const Eigen::VectorXd& u) {
  if (u.size() != scene.chart_dim()) throw ShapeError("eval_immersion: chart point has wrong dimension");
  const std::vector<Jet3> uj = chart_jets(u);
  AmbientJet out;
  switch (scene.family) {
    case Family::Hyperbola: {
      out.f = {cosh(uj[0]), sinh(uj[0])};
      out.C = out.f;
      break;
    }
    case Family::QuadricRadial: {
      out.f = radial_point(scene, uj);
      out.C = out.f;
      break;
    }
    case Family::PerturbedTransversal: {
      out.f = radial_point(scene, uj);
      // W = d minus its projection onto span(A f, J A f), so W lies in D.
      const std::vector<Jet3> n1 = mat_vec(scene.quadric->A(), out.f);
      std::vector<Jet3> n2(n1.size());
      const std::size_t half = n1.size() / 2;
      for (std::size_t k = 0; k < n1.size(); ++k) n2[k] = n1[(k + half) % n1.size()];
      const int m = scene.chart_dim();
      std::vector<Jet3> d;
      for (Eigen::Index k = 0; k < scene.direction.size(); ++k) d.emplace_back(m, scene.direction(k));
      const Jet3 g11 = dot(n1, n1), g12 = dot(n1, n2), g22 = dot(n2, n2);
      const Jet3 c1 = dot(n1, d), c2 = dot(n2, d);
      const Jet3 inv_det = reciprocal(g11 * g22 - g12 * g12);
      const Jet3 a1 = (g22 * c1 - g12 * c2) * inv_det;
      const Jet3 a2 = (g11 * c2 - g12 * c1) * inv_det;
      out.C = out.f;
      for (std::size_t k = 0; k < out.C.size(); ++k)
        out.C[k] += scene.epsilon * (d[k] - a1 * n1[k] - a2 * n2[k]);
      break;
    }
    case Family::ExplicitGraph: {
      out.f = uj;
      out.f.push_back(eval_polynomial(scene.graph, uj));
      for (const auto& p : scene.transversal) out.C.push_back(eval_polynomial(p, uj));
      break;
    }
  }
  return out;
}

std::vector<Eigen::VectorXd> generate_samples(const ImmersionScene& scene, std::uint64_t seed,
                                              int count, double box) {
  SeededUniform rng(seed);
  const int m = scene.chart_dim();
  const bool radial = scene.family == Family::QuadricRadial || scene.family == Family::PerturbedTransversal;
  std::vector<Eigen::VectorXd> out;
  for (long attempt = 0; attempt < 1000L * count && static_cast<int>(out.size()) < count; ++attempt) {
    Eigen::VectorXd u(m);
    for (int i = 0; i < m; ++i) u(i) = rng.uniform(-box, box);
    if (radial) {
      const AmbientVector y = scene.base_point + scene.tangent_basis * u;
      if (y.dot(scene.quadric->A() * y) <= 0.1) continue;
    }
    try {
      Frame frame(eval_immersion(scene, u));
    } catch (const Error&) {
      continue;
    }
    out.push_back(u);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Frame

Frame::Frame(AmbientJet point) : point_(std::move(point)) {
  ambient_dim_ = static_cast<int>(point_.f.size());
  if (ambient_dim_ < 2 || point_.C.size() != point_.f.size())
    throw ShapeError("Frame: f and C must have the same ambient dimension");
  chart_dim_ = point_.f.front().num_vars();
  if (chart_dim_ != ambient_dim_ - 1) throw ShapeError("Frame: chart dimension must be ambient dimension - 1");

  const int m = chart_dim_;
  const int N = ambient_dim_;
  tangents_.assign(m, std::vector<Jet3>());
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < N; ++k) tangents_[i].push_back(point_.f[k].derivative(i));

  B0_.resize(N, N);
  for (int k = 0; k < N; ++k) {
    for (int i = 0; i < m; ++i) B0_(k, i) = tangents_[i][k].value();
    B0_(k, m) = point_.C[k].value();
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(B0_);
  const auto& sv = svd.singularValues();
  if (!(sv(N - 1) > 0.0)) throw DegenerateFrame("frame [e_1..e_m | C] is singular");
  condition_ = sv(0) / sv(N - 1);
  if (!(condition_ < 1e8)) throw DegenerateFrame("frame [e_1..e_m | C] has condition number >= 1e8");

  // B = B0 + Bt with Bt nilpotent; X = B^{-1} is the fixed point of
  // X = X0 - X0 Bt X, and each sweep fixes one more degree.
  const Eigen::MatrixXd X0 = B0_.fullPivLu().inverse();
  std::vector<Jet3> Bt;
  Bt.reserve(static_cast<std::size_t>(N) * N);
  for (int k = 0; k < N; ++k)
    for (int c = 0; c < N; ++c)
      Bt.push_back(c < m ? tangents_[c][k].nilpotent() : point_.C[k].nilpotent());

  std::vector<Jet3> X;
  X.reserve(Bt.size());
  for (int r = 0; r < N; ++r)
    for (int c = 0; c < N; ++c) X.emplace_back(m, X0(r, c));

  for (int sweep = 0; sweep < kJetOrder; ++sweep) {
    std::vector<Jet3> BtX(Bt.size(), Jet3(m));
    for (int r = 0; r < N; ++r)
      for (int t = 0; t < N; ++t)
        for (int c = 0; c < N; ++c) BtX[r * N + c] += Bt[r * N + t] * X[t * N + c];
    for (int r = 0; r < N; ++r) {
      for (int c = 0; c < N; ++c) {
        Jet3 acc(m, X0(r, c));
        for (int s = 0; s < N; ++s) acc -= X0(r, s) * BtX[s * N + c];
        X[r * N + c] = std::move(acc);
      }
    }
  }
  inverse_ = std::move(X);
}

std::vector<Jet3> Frame::decompose(std::span<const Jet3> v) const {
  const int N = ambient_dim_;
  if (static_cast<int>(v.size()) != N) throw ShapeError("Frame::decompose: vector has wrong length");
  std::vector<Jet3> out;
  out.reserve(N);
  for (int r = 0; r < N; ++r) {
    Jet3 acc(chart_dim_);
    for (int s = 0; s < N; ++s) acc += inverse_[r * N + s] * v[s];
    out.push_back(std::move(acc));
  }
  return out;
}

FrameCoords frame_decompose(const AmbientJet& point, const AmbientVector& v) {
  const int N = static_cast<int>(point.f.size());
  if (v.size() != N) throw ShapeError("frame_decompose: vector has wrong length");
  const int m = N - 1;
  Eigen::MatrixXd B(N, N);
  for (int k = 0; k < N; ++k) {
    for (int i = 0; i < m; ++i) B(k, i) = point.f[k].gradient(i);
    B(k, m) = point.C[k].value();
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(B);
  if (!lu.isInvertible()) throw DegenerateFrame("frame_decompose: singular frame");
  const Eigen::VectorXd w = lu.solve(v);
  return {w.head(m), w(m)};
}

// ---------------------------------------------------------------------------
// Induced data

InducedData induced_data(const Frame& frame, const Eigen::VectorXd& u) {
  const int m = frame.chart_dim();
  const int N = frame.ambient_dim();
  InducedData out;
  out.u = u;
  out.frame = frame.matrix();
  out.frame_condition = frame.condition();
  out.gamma = Tensor3(m);
  out.h = Eigen::MatrixXd::Zero(m, m);
  out.S = Eigen::MatrixXd::Zero(m, m);
  out.tau = Eigen::VectorXd::Zero(m);
  out.d_gamma = Tensor4(m);
  out.dh = Tensor3(m);
  out.dS = Tensor3(m);
  out.dtau_raw = Eigen::MatrixXd::Zero(m, m);

  std::vector<Jet3> v(N);
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      for (int k = 0; k < N; ++k) v[k] = frame.tangent(i)[k].derivative(j);
      const std::vector<Jet3> w = frame.decompose(v);
      for (int k = 0; k < m; ++k) {
        out.gamma(k, i, j) = out.gamma(k, j, i) = w[k].value();
        for (int l = 0; l < m; ++l) out.d_gamma(l, k, i, j) = out.d_gamma(l, k, j, i) = w[k].gradient(l);
      }
      out.h(i, j) = out.h(j, i) = w[m].value();
      for (int l = 0; l < m; ++l) out.dh(l, i, j) = out.dh(l, j, i) = w[m].gradient(l);
    }
  }

  for (int i = 0; i < m; ++i) {
    for (int k = 0; k < N; ++k) v[k] = frame.point().C[k].derivative(i);
    const std::vector<Jet3> w = frame.decompose(v);
    for (int k = 0; k < m; ++k) {
      out.S(k, i) = -w[k].value();
      for (int l = 0; l < m; ++l) out.dS(l, k, i) = -w[k].gradient(l);
    }
    out.tau(i) = w[m].value();
    for (int l = 0; l < m; ++l) out.dtau_raw(l, i) = w[m].gradient(l);
  }

  const double h_scale = out.h.cwiseAbs().maxCoeff();
  out.metric_degenerate =
      !(h_scale > 0.0) || !(std::abs(out.h.determinant()) > 1e-10 * std::pow(h_scale, static_cast<double>(m)));
  return out;
}

InducedData induced_data(const ImmersionScene& scene, const Eigen::VectorXd& u) {
  return induced_data(Frame(eval_immersion(scene, u)), u);
}

DerivedTensors derived_tensors(const InducedData& in) {
  const int m = static_cast<int>(in.h.rows());
  DerivedTensors out;
  out.R_curv = Tensor4(m);
  out.nabla_h = Tensor3(m);
  out.Q = Tensor3(m);
  out.dtau = Eigen::MatrixXd::Zero(m, m);

  for (int l = 0; l < m; ++l)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k) {
          double r = in.d_gamma(i, l, j, k) - in.d_gamma(j, l, i, k);
          for (int p = 0; p < m; ++p) r += in.gamma(l, i, p) * in.gamma(p, j, k) - in.gamma(l, j, p) * in.gamma(p, i, k);
          out.R_curv(l, i, j, k) = r;
        }

  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        double v = in.dh(i, j, k);
        for (int p = 0; p < m; ++p) v -= in.gamma(p, i, j) * in.h(p, k) + in.gamma(p, i, k) * in.h(j, p);
        out.nabla_h(i, j, k) = v;
        out.Q(i, j, k) = v + in.tau(i) * in.h(j, k);
      }

  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) out.dtau(i, j) = 0.5 * (in.dtau_raw(i, j) - in.dtau_raw(j, i));
  return out;
}

double cubic_symmetry_defect(const Tensor3& Q) {
  const int m = Q.dim();
  double out = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        const double q = Q(i, j, k);
        const std::array<double, 5> others = {Q(i, k, j), Q(j, i, k), Q(j, k, i), Q(k, i, j), Q(k, j, i)};
        for (double o : others) out = std::max(out, std::abs(q - o));
      }
  return out;
}

double FundamentalResiduals::max() const { return std::max({gauss, codazzi_h, codazzi_s, ricci}); }

FundamentalResiduals fundamental_residuals(const InducedData& in, const DerivedTensors& d) {
  const int m = static_cast<int>(in.h.rows());
  FundamentalResiduals out;

  for (int l = 0; l < m; ++l)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k) {
          const double rhs = in.h(j, k) * in.S(l, i) - in.h(i, k) * in.S(l, j);
          out.gauss = std::max(out.gauss, std::abs(d.R_curv(l, i, j, k) - rhs));
        }

  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) out.codazzi_h = std::max(out.codazzi_h, std::abs(d.Q(i, j, k) - d.Q(j, i, k)));

  // (nabla_i S)^l_j - tau_i S^l_j, antisymmetrised in (i, j).
  auto twisted = [&](int i, int l, int j) {
    double v = in.dS(i, l, j) - in.tau(i) * in.S(l, j);
    for (int p = 0; p < m; ++p) v += in.gamma(l, i, p) * in.S(p, j) - in.S(l, p) * in.gamma(p, i, j);
    return v;
  };
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int l = 0; l < m; ++l)
        out.codazzi_s = std::max(out.codazzi_s, std::abs(twisted(i, l, j) - twisted(j, l, i)));

  const Eigen::MatrixXd hS = in.h * in.S;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      out.ricci = std::max(out.ricci, std::abs(hS(i, j) - hS(j, i) - 2.0 * d.dtau(i, j)));
  return out;
}

} // namespace parasurf
