#include "doctest.h"
#include "cross_path.hpp"

#include "parasurf/errors.hpp"
#include "parasurf/rng.hpp"
#include "parasurf/theorems.hpp"

using namespace parasurf;

namespace {

QuadricSpec fixed_n1_spec() {
  Eigen::MatrixXd P = Eigen::MatrixXd::Identity(2, 2);
  Eigen::MatrixXd R(2, 2);
  R << 0, 1, -1, 0;
  return QuadricSpec::from_blocks(P, R);
}

ImmersionScene sampled(ImmersionScene scene, std::uint64_t seed, int count = 8) {
  scene.samples = generate_samples(scene, seed, count, 0.4);
  return scene;
}

ImmersionScene perturbed(int n, std::uint64_t seed, double eps) {
  const QuadricSpec spec = random_quadric_spec(n, seed);
  const Eigen::VectorXd x0 = find_base_point(spec, seed);
  return sampled(make_perturbed_scene(spec, x0, tangent_basis(spec, x0), eps, Eigen::VectorXd::LinSpaced(2 * n + 2, -1, 0.7)),
                 seed);
}

std::vector<Polynomial> constant_transversal(int m) {
  std::vector<Polynomial> t(m + 1);
  t.back().push_back({1.0, MultiIndex(m, 0)});
  return t;
}

double entry(const Breakdown& b, const std::string& name) {
  for (const auto& r : b)
    if (r.name == name) return r.value;
  FAIL("missing entry " << name);
  return 0.0;
}

} // namespace

TEST_CASE("theorem ids round trip") {
  for (TheoremId id : all_theorems()) CHECK(theorem_from_string(to_string(id)) == id);
  CHECK(all_theorems().size() == 9);
  CHECK_THROWS_AS(theorem_from_string("THM_NOPE"), SchemaError);
}

TEST_CASE("every battery passes on quadrics") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const int n = static_cast<int>(seed % 3);
    const SceneEvaluation eval = evaluate_scene(sampled(make_quadric_scene(random_quadric_spec(n, seed), seed), seed));
    REQUIRE(eval.admissible() == eval.samples.size());
    for (TheoremId id : all_theorems()) {
      const TheoremReport r = run_theorem(id, eval, {});
      INFO(to_string(id) << " n=" << n << " note=" << r.note);
      CHECK(r.passed);
      CHECK(!r.gate_bypassed);
      const bool d_empty = n == 0 && (id == TheoremId::COR_WZORY || id == TheoremId::LEM_CUBIC);
      CHECK(r.vacuous == d_empty);
      CHECK(r.status == (d_empty ? SuiteStatus::Vacuous : SuiteStatus::Passed));
      if (!d_empty) CHECK(r.per_sample.size() == eval.samples.size());
    }
  }
}

TEST_CASE("identity batteries hold for any J-tangent transversal field") {
  const SceneEvaluation eval = evaluate_scene(perturbed(2, 3, 0.3));
  CHECK(run_theorem(TheoremId::TW_WZORY, eval, {}).passed);
  CHECK(run_theorem(TheoremId::COR_WZORY, eval, {}).passed);
  CHECK(run_theorem(TheoremId::PROP_NORMAL, eval, {}).passed);
  CHECK(run_theorem(TheoremId::TW_WZORY, eval, {}).per_sample.front().breakdown.size() == 6);
  CHECK(run_theorem(TheoremId::COR_WZORY, eval, {}).per_sample.front().breakdown.size() == 5);
}

TEST_CASE("metric gate on a perturbed transversal") {
  const SceneEvaluation eval = evaluate_scene(perturbed(1, 2, 0.1));
  for (TheoremId id : {TheoremId::LEM_EST, TheoremId::LEM_CUBIC, TheoremId::THM_STAU, TheoremId::THM_QUADRIC_FWD}) {
    const TheoremReport gated = run_theorem(id, eval, {});
    CHECK(gated.status == SuiteStatus::HypothesisNotMet);
    CHECK(!gated.passed);
    CHECK(gated.per_sample.empty());

    const TheoremReport open = run_theorem(id, eval, {}, true);
    CHECK(open.gate_bypassed);
    CHECK(open.per_sample.size() == eval.samples.size());
  }
  const TheoremReport stau = run_theorem(TheoremId::THM_STAU, eval, {}, true);
  CHECK(stau.status == SuiteStatus::Failed);
  int large = 0;
  for (const auto& s : stau.per_sample) large += entry(s.breakdown, "S_plus_id") > 1e-2;
  CHECK(large >= static_cast<int>(stau.per_sample.size()) * 9 / 10);

  const TheoremReport equiv = run_theorem(TheoremId::THM_EQUIV, eval, {});
  CHECK(equiv.status == SuiteStatus::Failed);
  CHECK(entry(equiv.per_sample.front().breakdown, "metric") > 1e-3);

  // The counterpart with C = x still satisfies the converse.
  CHECK(run_theorem(TheoremId::THM_QUADRIC_CONV, eval, {}).passed);
}

TEST_CASE("gates reject samples that are not J-tangent") {
  SeededUniform rng(4);
  Polynomial graph = {{1.0, {2, 0, 0}}, {-1.0, {0, 2, 0}}, {1.0, {0, 0, 2}}, {0.3, {1, 1, 1}}};
  const ImmersionScene scene = sampled(make_graph_scene(1, graph, constant_transversal(3)), 1);
  const SceneEvaluation eval = evaluate_scene(scene);
  const TheoremReport tw = run_theorem(TheoremId::TW_WZORY, eval, {});
  CHECK(tw.status == SuiteStatus::HypothesisNotMet);
  CHECK(run_theorem(TheoremId::THM_QUADRIC_CONV, eval, {}).status == SuiteStatus::NotApplicable);

  // Without the gate, Q does not vanish on a generic graph.
  const TheoremReport fwd = run_theorem(TheoremId::THM_QUADRIC_FWD, eval, {}, true);
  CHECK(fwd.gate_bypassed);
  CHECK(fwd.max_residual > 1e-3);
}

TEST_CASE("hyperbola batteries and vacuous flags") {
  const SceneEvaluation eval = evaluate_scene(sampled(make_hyperbola_scene(), 3));
  for (TheoremId id : all_theorems()) {
    const TheoremReport r = run_theorem(id, eval, {});
    INFO(to_string(id));
    CHECK(r.passed);
  }
  CHECK(run_theorem(TheoremId::COR_WZORY, eval, {}).vacuous);
  CHECK(run_theorem(TheoremId::LEM_CUBIC, eval, {}).vacuous);
  const TheoremReport est = run_theorem(TheoremId::LEM_EST, eval, {});
  CHECK(!est.vacuous);
  CHECK(!est.note.empty());

  const TheoremReport stau = run_theorem(TheoremId::THM_STAU, eval, {});
  CHECK(stau.max_residual < 1e-15);
  for (const auto& s : eval.samples) {
    CHECK(entry(verify_tw_wzory(*s.eval, {}), "eta_S") == 0.0);
    // eta(S xi) = -h(xi, xi): -1 = -1
    CHECK(s.eval->para.eta.dot(s.eval->induced.S * s.eval->para.xi) == doctest::Approx(-1.0));
  }
}

TEST_CASE("converse on the fixed n = 1 quadric") {
  const QuadricSpec spec = fixed_n1_spec();
  const Eigen::VectorXd x0 = Eigen::VectorXd::Unit(4, 0);
  const SceneEvaluation eval = evaluate_scene(sampled(make_quadric_scene(spec, x0, tangent_basis(spec, x0)), 7, 20));
  const TheoremReport r = verify_quadric_converse(eval, {});
  CHECK(r.passed);
  CHECK(r.per_sample.size() == 20);
  CHECK(verify_quadric_converse(spec, 20, 1).passed);
}

TEST_CASE("converse fails without the anticommuting block form") {
  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(4, 4);
  A(0, 0) = 2.0;
  A(3, 3) = -1.0;
  const QuadricSpec spec = QuadricSpec::unchecked(A);
  CHECK(anticommutator_residual(A) > 0.0);
  const TheoremReport r = verify_quadric_converse(spec, 10, 3);
  CHECK(r.status == SuiteStatus::Failed);
  double j_tangency = 0.0, metric = 0.0;
  for (const auto& s : r.per_sample) {
    j_tangency = std::max(j_tangency, entry(s.breakdown, "j_tangency"));
    metric = std::max(metric, entry(s.breakdown, "metric"));
  }
  CHECK(std::max(j_tangency, metric) > 1e-3);
}

TEST_CASE("hyperbola and its quadric chart agree") {
  std::vector<double> ts;
  for (int i = -8; i <= 8; ++i) ts.push_back(0.05 * i);
  const cross_path::Gap gap = cross_path::compare(ts);
  INFO("worst quantity: " << gap.worst);
  CHECK(gap.value <= 1e-10);
  CHECK(cross_path::status_mismatches(ts).empty());
}

TEST_CASE("lemma batteries on metric scenes") {
  for (std::uint64_t seed = 30; seed < 34; ++seed) {
    const int n = 1 + static_cast<int>(seed % 2);
    const SceneEvaluation eval = evaluate_scene(sampled(make_quadric_scene(random_quadric_spec(n, seed), seed), seed));
    for (const auto& s : eval.samples) {
      const Breakdown est = verify_lem_est(*s.eval, {}, {});
      const Breakdown cubic = verify_lem_cubic(*s.eval, {}, {});
      CHECK(max_checked(est) <= 1e-7);
      CHECK(max_checked(cubic) <= 1e-7);
      CHECK(entry(cubic, "h_SW_phiW") <= 1e-7);
      CHECK(entry(est, "z0_norm") <= 1e-8);
    }
  }
}

TEST_CASE("scene evaluation records degenerate samples") {
  Polynomial graph = {{1.0, {2, 0, 0}}, {-1.0, {0, 2, 0}}};
  ImmersionScene scene = make_graph_scene(1, graph, constant_transversal(3));
  scene.samples = {Eigen::Vector3d(0.1, 0.2, 0.3), Eigen::Vector3d(0.0, 0.0, 0.0)};
  const SceneEvaluation eval = evaluate_scene(scene);
  CHECK(eval.admissible() == 0);
  CHECK(eval.skipped_fraction() == 1.0);
  CHECK(!eval.samples[0].failure.empty());
}
