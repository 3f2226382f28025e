#pragma once

// Residual batteries for the identities and theorems about induced almost
// paracontact structures, evaluated pointwise on a scene's samples.

#include "parasurf/hypersurface.hpp"
#include "parasurf/paracontact.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace parasurf {

enum class TheoremId {
  TW_WZORY,
  COR_WZORY,
  PROP_NORMAL,
  LEM_EST,
  LEM_CUBIC,
  THM_STAU,
  THM_EQUIV,
  THM_QUADRIC_FWD,
  THM_QUADRIC_CONV,
};

std::string to_string(TheoremId id);
TheoremId theorem_from_string(const std::string& name);
const std::vector<TheoremId>& all_theorems();

/// Everything computed at one chart point.
struct PointEvaluation {
  Eigen::VectorXd u;
  InducedData induced;
  DerivedTensors derived;
  FundamentalResiduals fundamental;
  ParacontactData para;
  MetricReport metric;
};

/// Throws ChartLeak, DegenerateFrame, DegenerateJet or DegenerateMetric.
PointEvaluation evaluate_point(const ImmersionScene& scene, const Eigen::VectorXd& u);

/// One named residual. An infinite tolerance marks a value that is reported
/// but never fails the battery.
struct Residual {
  std::string name;
  double value = 0.0;
  double tolerance = std::numeric_limits<double>::infinity();

  bool ok() const { return value <= tolerance; }
};
using Breakdown = std::vector<Residual>;

double max_checked(const Breakdown& breakdown);
bool all_ok(const Breakdown& breakdown);

/// Numeric form of a theorem's hypothesis. Closed gates raise HypothesisNotMet
/// unless `diagnostic` is set.
struct Gate {
  double tolerance = 1e-8;
  bool diagnostic = false;
};

/// Q(X, Y, Z) for chart vectors.
double cubic_form(const Tensor3& Q, const Eigen::VectorXd& X, const Eigen::VectorXd& Y, const Eigen::VectorXd& Z);

// Pointwise batteries. Tolerances decide each entry's pass threshold.

/// Six identities on coordinate fields (holds for any J-tangent C).
Breakdown verify_tw_wzory(const PointEvaluation& p, const Tolerances& tol);
/// Five identities on D-fields and xi. Empty when D = 0.
Breakdown verify_cor_wzory(const PointEvaluation& p, const Tolerances& tol);
/// Normality via the Nijenhuis tensor and via S phi Z - phi S Z + tau(Z) xi;
/// the checked entry is whether both verdicts agree.
Breakdown verify_prop_normal(const PointEvaluation& p, const Tolerances& tol);
Breakdown verify_lem_est(const PointEvaluation& p, const Tolerances& tol, const Gate& gate);
Breakdown verify_lem_cubic(const PointEvaluation& p, const Tolerances& tol, const Gate& gate);
Breakdown verify_thm_stau(const PointEvaluation& p, const Tolerances& tol, const Gate& gate);
/// metric, para(-1)-contact, para(-1)-Sasakian and normality, jointly.
Breakdown verify_thm_equiv(const PointEvaluation& p, const Tolerances& tol);
Breakdown verify_quadric_forward(const PointEvaluation& p, const Tolerances& tol, const Gate& gate);
/// The batteries the converse claims for C = x on an A J = -J A quadric.
Breakdown converse_battery(const PointEvaluation& p, int n, const Tolerances& tol);

/// Throws HypothesisNotMet unless the structure is metric at p (or the gate is
/// in diagnostic mode).
void require_metric(const PointEvaluation& p, const Gate& gate);

// Scene level.

struct SampleEvaluation {
  std::size_t index = 0;
  std::optional<PointEvaluation> eval;
  std::string failure;  // reason when eval is empty
};

struct SceneEvaluation {
  ImmersionScene scene;
  std::vector<SampleEvaluation> samples;

  std::size_t admissible() const;
  double skipped_fraction() const;
};

/// Evaluates every sample; degenerate samples are recorded, not thrown.
SceneEvaluation evaluate_scene(const ImmersionScene& scene);

enum class SuiteStatus { Passed, Failed, HypothesisNotMet, Vacuous, NotApplicable };
std::string to_string(SuiteStatus status);

struct SampleResult {
  std::size_t sample_index = 0;
  double max_residual = 0.0;
  Breakdown breakdown;
};

struct TheoremReport {
  TheoremId id = TheoremId::TW_WZORY;
  SuiteStatus status = SuiteStatus::Passed;
  bool passed = false;
  bool vacuous = false;
  bool gate_bypassed = false;
  std::string note;
  double max_residual = 0.0;
  std::vector<SampleResult> per_sample;
};

TheoremReport run_theorem(TheoremId id, const SceneEvaluation& scene, const Tolerances& tol,
                          bool diagnostic = false);

/// Converse on an already evaluated quadric_radial scene with C = x.
TheoremReport verify_quadric_converse(const SceneEvaluation& quadric_scene, const Tolerances& tol);

/// Builds a quadric_radial scene for spec (base point from `seed`, samples from
/// the default box) and runs the converse batteries. Throws BasePointNotFound.
TheoremReport verify_quadric_converse(const QuadricSpec& spec, int num_samples, std::uint64_t seed = 0,
                                      const Tolerances& tol = {});

} // namespace parasurf
