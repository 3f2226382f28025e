#include "doctest.h"
#include "oracles.hpp"

#include "parasurf/errors.hpp"
#include "parasurf/hypersurface.hpp"
#include "parasurf/rng.hpp"

using namespace parasurf;

namespace {

QuadricSpec fixed_n1_spec() {
  Eigen::MatrixXd P = Eigen::MatrixXd::Identity(2, 2);
  Eigen::MatrixXd R(2, 2);
  R << 0, 1, -1, 0;
  return QuadricSpec::from_blocks(P, R);
}

Eigen::VectorXd vec1(double t) { return Eigen::VectorXd::Constant(1, t); }

Eigen::VectorXd jet_values(const std::vector<Jet3>& v) {
  Eigen::VectorXd out(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) out(k) = v[k].value();
  return out;
}

Eigen::VectorXd jet_partials(const std::vector<Jet3>& v, const MultiIndex& alpha) {
  Eigen::VectorXd out(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) out(k) = v[k].partial(alpha);
  return out;
}

// Random polynomial of degree <= 3 in m variables with a nondegenerate
// quadratic part.
Polynomial random_cubic(SeededUniform& rng, int m) {
  Polynomial p;
  const auto& table = MultiIndexTable::get(m);
  for (int i = table.degree_begin(2); i < static_cast<int>(table.size()); ++i)
    p.push_back({rng.uniform(-1, 1), table.exponents(i)});
  for (int v = 0; v < m; ++v) {
    MultiIndex a(m, 0);
    a[v] = 2;
    p.push_back({v % 2 == 0 ? 2.0 : -2.0, a});
  }
  return p;
}

std::vector<Polynomial> constant_transversal(int m) {
  std::vector<Polynomial> t(m + 1);
  t.back().push_back({1.0, MultiIndex(m, 0)});
  return t;
}

double max_abs(const Eigen::MatrixXd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

} // namespace

TEST_CASE("hyperbola jets at t = 0") {
  const ImmersionScene scene = make_hyperbola_scene();
  const AmbientJet p = eval_immersion(scene, vec1(0.0));
  CHECK(jet_values(p.f) == Eigen::Vector2d(1, 0));
  CHECK(jet_partials(p.f, {1}) == Eigen::Vector2d(0, 1));
  CHECK(jet_partials(p.f, {2}) == Eigen::Vector2d(1, 0));
  CHECK(jet_values(p.C) == jet_values(p.f));
}

TEST_CASE("radial quadric chart") {
  const QuadricSpec spec = fixed_n1_spec();
  const Eigen::VectorXd x0 = Eigen::VectorXd::Unit(4, 0);
  const ImmersionScene scene = make_quadric_scene(spec, x0, tangent_basis(spec, x0));
  const AmbientJet p = eval_immersion(scene, Eigen::VectorXd::Zero(3));
  CHECK(jet_values(p.f) == x0);
  CHECK(std::abs(quadric_residual(spec, jet_values(p.f))) <= 1e-14);

  SeededUniform rng(2);
  for (int s = 0; s < 20; ++s) {
    Eigen::VectorXd u(3);
    for (int i = 0; i < 3; ++i) u(i) = rng.uniform(-0.4, 0.4);
    CHECK(std::abs(quadric_residual(spec, jet_values(eval_immersion(scene, u).f))) <= 1e-12);
  }

  CHECK_THROWS_AS(make_quadric_scene(spec, 2.0 * x0, tangent_basis(spec, x0)), ShapeError);
  CHECK_THROWS_AS(make_quadric_scene(spec, x0, Eigen::MatrixXd::Identity(4, 3)), ShapeError);
}

TEST_CASE("chart leak outside q > 0") {
  Eigen::MatrixXd P(1, 1), R(1, 1);
  P << 1;
  R << 0;
  Eigen::MatrixXd basis(2, 1);
  basis << 0, 1;
  const ImmersionScene scene = make_quadric_scene(QuadricSpec::from_blocks(P, R), Eigen::VectorXd::Unit(2, 0), basis);
  CHECK_NOTHROW(eval_immersion(scene, vec1(0.5)));
  CHECK_THROWS_AS(eval_immersion(scene, vec1(1.5)), ChartLeak);
}

TEST_CASE("frame decomposition") {
  const ImmersionScene hyp = make_hyperbola_scene();
  for (double t : {-0.7, 0.0, 0.3, 1.1}) {
    const AmbientJet p = eval_immersion(hyp, vec1(t));
    const FrameCoords c = frame_decompose(p, Eigen::Vector2d(std::cosh(t), std::sinh(t)));
    CHECK(std::abs(c.transversal - 1.0) < 1e-14);
    CHECK(std::abs(c.tangent(0)) < 1e-14);
  }

  const QuadricSpec spec = random_quadric_spec(2, 4);
  const ImmersionScene scene = make_quadric_scene(spec, 4);
  const Eigen::VectorXd u = Eigen::VectorXd::Constant(5, 0.1);
  const AmbientJet p = eval_immersion(scene, u);
  const Frame frame(p);
  const Eigen::MatrixXd B = frame.matrix();

  const FrameCoords c = frame_decompose(p, B.col(5));
  CHECK(max_abs(c.tangent) < 1e-13);
  CHECK(std::abs(c.transversal - 1.0) < 1e-13);
  const FrameCoords e = frame_decompose(p, B.col(0));
  CHECK(std::abs(e.tangent(0) - 1.0) < 1e-13);
  CHECK(max_abs(e.tangent.tail(4)) < 1e-13);
  CHECK(std::abs(e.transversal) < 1e-13);

  SeededUniform rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::VectorXd v(6);
    for (int k = 0; k < 6; ++k) v(k) = rng.uniform(-1, 1);
    const FrameCoords w = frame_decompose(p, v);
    const Eigen::VectorXd back = B.leftCols(5) * w.tangent + w.transversal * B.col(5);
    CHECK((back - v).norm() <= 1e-12 * v.norm());
  }
}

TEST_CASE("singular frame") {
  // C tangent to the graph: B loses rank.
  Polynomial graph = {{1.0, {2}}};
  std::vector<Polynomial> transversal = {{{1.0, {0}}}, {}};
  const ImmersionScene scene = make_graph_scene(0, graph, transversal);
  CHECK_THROWS_AS(Frame(eval_immersion(scene, vec1(0.0))), DegenerateFrame);
}

TEST_CASE("hyperbola induced data") {
  const ImmersionScene hyp = make_hyperbola_scene();
  for (double t : {-0.4, 0.0, 0.25, 0.9}) {
    const InducedData in = induced_data(hyp, vec1(t));
    CHECK(std::abs(in.gamma(0, 0, 0)) < 1e-14);
    CHECK(std::abs(in.h(0, 0) - 1.0) < 1e-14);
    CHECK(std::abs(in.S(0, 0) + 1.0) < 1e-14);
    CHECK(std::abs(in.tau(0)) < 1e-14);
    const DerivedTensors d = derived_tensors(in);
    CHECK(d.R_curv.max_abs() == 0.0);
    CHECK(d.nabla_h.max_abs() < 1e-14);
    CHECK(d.Q.max_abs() < 1e-14);
    CHECK(max_abs(d.dtau) == 0.0);
    const FundamentalResiduals r = fundamental_residuals(in, d);
    CHECK(r.max() < 1e-14);
  }
}

TEST_CASE("quadric induced data against closed forms") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const int n = static_cast<int>(seed % 3);
    const int m = 2 * n + 1;
    ImmersionScene scene = make_quadric_scene(random_quadric_spec(n, seed), seed);
    const auto samples = generate_samples(scene, seed, 5, 0.4);
    for (const auto& u : samples) {
      const InducedData in = induced_data(scene, u);
      const oracle::QuadricReference ref = oracle::quadric_reference(scene, u);
      CHECK(max_abs(in.frame.leftCols(m) - ref.tangents) < 1e-9);
      CHECK(max_abs(in.h - ref.h) < 1e-8 * std::max(1.0, max_abs(ref.h)));
      CHECK(max_abs(in.S + Eigen::MatrixXd::Identity(m, m)) < 1e-10);
      CHECK(max_abs(in.tau) < 1e-10);
      CHECK(max_abs(in.h - in.h.transpose()) == 0.0);
      const DerivedTensors d = derived_tensors(in);
      CHECK(d.Q.max_abs() < 1e-8);
    }
  }
}

TEST_CASE("jet derivatives of induced data match finite differences") {
  const QuadricSpec spec = random_quadric_spec(1, 17);
  const ImmersionScene scene = make_perturbed_scene(spec, find_base_point(spec, 17),
                                                    tangent_basis(spec, find_base_point(spec, 17)), 0.2,
                                                    Eigen::VectorXd::Constant(4, 0.5));
  const Eigen::VectorXd u = generate_samples(scene, 3, 1, 0.3).front();
  const InducedData in = induced_data(scene, u);
  const int m = 3;
  for (int l = 0; l < m; ++l) {
    auto at = [&](double step) {
      Eigen::VectorXd v = u;
      v(l) += step;
      return induced_data(scene, v);
    };
    const double h = 1e-4;
    const InducedData plus = at(h), minus = at(-h);
    for (int i = 0; i < m; ++i) {
      CHECK(std::abs(in.dtau_raw(l, i) - (plus.tau(i) - minus.tau(i)) / (2 * h)) < 1e-6);
      for (int j = 0; j < m; ++j) {
        CHECK(std::abs(in.dh(l, i, j) - (plus.h(i, j) - minus.h(i, j)) / (2 * h)) < 1e-6);
        CHECK(std::abs(in.dS(l, i, j) - (plus.S(i, j) - minus.S(i, j)) / (2 * h)) < 1e-6);
        for (int k = 0; k < m; ++k)
          CHECK(std::abs(in.d_gamma(l, k, i, j) - (plus.gamma(k, i, j) - minus.gamma(k, i, j)) / (2 * h)) < 1e-6);
      }
    }
  }
}

TEST_CASE("degenerate graph reports a degenerate metric") {
  // f(u, v, w) = (u, v, w, u^2 - v^2), C = e_4.
  Polynomial graph = {{1.0, {2, 0, 0}}, {-1.0, {0, 2, 0}}};
  const ImmersionScene scene = make_graph_scene(1, graph, constant_transversal(3));
  const InducedData in = induced_data(scene, Eigen::Vector3d(0.1, -0.2, 0.3));
  CHECK(in.h(0, 0) == 2.0);
  CHECK(in.h(1, 1) == -2.0);
  CHECK(in.h(0, 1) == 0.0);
  CHECK(in.h.row(2).cwiseAbs().maxCoeff() == 0.0);
  CHECK(in.metric_degenerate);
}

TEST_CASE("cubic form of a random graph is totally symmetric") {
  SeededUniform rng(31);
  for (int trial = 0; trial < 5; ++trial) {
    const int m = trial % 2 == 0 ? 3 : 5;
    const ImmersionScene scene = make_graph_scene((m - 1) / 2, random_cubic(rng, m), constant_transversal(m));
    Eigen::VectorXd u(m);
    for (int i = 0; i < m; ++i) u(i) = rng.uniform(-0.2, 0.2);
    const InducedData in = induced_data(scene, u);
    const DerivedTensors d = derived_tensors(in);
    CHECK(cubic_symmetry_defect(d.Q) <= 1e-9);
    CHECK(d.Q.max_abs() > 1e-3);
  }
}

TEST_CASE("fundamental equations hold for every family") {
  SeededUniform rng(77);
  std::vector<ImmersionScene> scenes;
  scenes.push_back(make_hyperbola_scene());
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const QuadricSpec spec = random_quadric_spec(1 + static_cast<int>(seed % 2), seed);
    scenes.push_back(make_quadric_scene(spec, seed));
    const Eigen::VectorXd x0 = find_base_point(spec, seed);
    Eigen::VectorXd dir(spec.ambient_dim());
    for (int k = 0; k < dir.size(); ++k) dir(k) = rng.uniform(-1, 1);
    scenes.push_back(make_perturbed_scene(spec, x0, tangent_basis(spec, x0), 0.1, dir));
  }
  // Graph with a non-constant transversal field.
  std::vector<Polynomial> transversal(4);
  transversal[0] = {{0.3, {1, 0, 0}}};
  transversal[2] = {{-0.2, {0, 1, 1}}};
  transversal[3] = {{1.0, {0, 0, 0}}, {0.4, {0, 0, 1}}};
  scenes.push_back(make_graph_scene(1, random_cubic(rng, 3), transversal));

  for (auto& scene : scenes) {
    scene.samples = generate_samples(scene, 5, 10, 0.4);
    for (const auto& u : scene.samples) {
      const InducedData in = induced_data(scene, u);
      const FundamentalResiduals r = fundamental_residuals(in, derived_tensors(in));
      CHECK(r.gauss <= 1e-8);
      CHECK(r.codazzi_h <= 1e-8);
      CHECK(r.codazzi_s <= 1e-8);
      CHECK(r.ricci <= 1e-8);
    }
  }
}

TEST_CASE("perturbing C along D leaves h unchanged") {
  const QuadricSpec spec = random_quadric_spec(2, 12);
  const Eigen::VectorXd x0 = find_base_point(spec, 12);
  const Eigen::MatrixXd V = tangent_basis(spec, x0);
  const ImmersionScene quad = make_quadric_scene(spec, x0, V);
  const ImmersionScene pert = make_perturbed_scene(spec, x0, V, 0.1, Eigen::VectorXd::LinSpaced(6, -1, 1));
  for (const auto& u : generate_samples(quad, 1, 5, 0.4)) {
    const InducedData a = induced_data(quad, u), b = induced_data(pert, u);
    CHECK(max_abs(a.h - b.h) < 1e-10);
    CHECK(max_abs(b.S + Eigen::MatrixXd::Identity(5, 5)) > 1e-4);
  }
}

TEST_CASE("sample generation is deterministic") {
  const ImmersionScene scene = make_quadric_scene(random_quadric_spec(1, 3), 3);
  const auto a = generate_samples(scene, 9, 20, 0.4), b = generate_samples(scene, 9, 20, 0.4);
  REQUIRE(a.size() == 20);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i] == b[i]);
    CHECK(a[i].cwiseAbs().maxCoeff() <= 0.4);
  }
}
